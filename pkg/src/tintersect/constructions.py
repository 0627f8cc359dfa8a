"""Builders for the three candidate extremal families.

Each builder filters all k-subsets of [n] through one membership predicate.
``method="classes"`` instead generates the displayed classes directly and is
kept as an independent cross-check of the predicate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np

from .combinat import (C1, C2, C3, LABELS, ParameterError, Params,
                       elements_of, full_mask, mask_of, subsets_of)
from .family import Family, all_k_subsets


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionParams:
    """Placement of one construction; unused fields stay 0."""

    variant: str
    T: int = 0
    A: int = 0
    B: int = 0
    C: int = 0
    u: int = 0
    M: int = 0
    W: int = 0
    Z: int = 0

    def permuted(self, perm: dict[int, int]) -> "ConstructionParams":
        def move(mask):
            return mask_of(perm.get(e, e) for e in elements_of(mask))
        return replace(self, T=move(self.T), A=move(self.A), B=move(self.B), C=move(self.C),
                       M=move(self.M), W=move(self.W), Z=move(self.Z),
                       u=perm.get(self.u, self.u) if self.u else 0)

    def describe(self) -> str:
        def fmt(m):
            return "{" + ",".join(map(str, elements_of(m))) + "}"
        if self.variant == C1:
            return f"T={fmt(self.T)} A={fmt(self.A)} B={fmt(self.B)} C={fmt(self.C)} u={self.u}"
        if self.variant == C2:
            return f"M={fmt(self.M)} W={fmt(self.W)}"
        return f"Z={fmt(self.Z)}"


def _require_range(p: Params) -> None:
    if not (p.n > 2 * p.k and p.k >= p.t + 3):
        raise ParameterError(f"constructions need n > 2k and k >= t+3, got {p}")


def _span(lo: int, hi: int) -> int:
    return mask_of(range(lo, hi + 1))


def default_params(p: Params, variant: str) -> ConstructionParams:
    """Canonical placement with blocks packed contiguously from 1."""
    _require_range(p)
    n, k, t = p.n, p.k, p.t
    if variant == C1:
        return ConstructionParams(C1, T=_span(1, t), A=_span(1, t - 1) | _span(t + 1, t + 1),
                                  B=_span(t + 2, k + 1), C=_span(k + 2, 2 * k - t + 1), u=k + 2)
    if variant == C2:
        return ConstructionParams(C2, M=_span(1, k + 2), W=_span(1, t + 2))
    if variant == C3:
        return ConstructionParams(C3, Z=_span(1, t + 4))
    raise ConstructionError(f"unknown variant {variant!r}; expected one of {LABELS}")


def validate(p: Params, cp: ConstructionParams) -> None:
    _require_range(p)
    n, k, t = p.n, p.k, p.t
    ground = full_mask(n)

    def check(cond, msg):
        if not cond:
            raise ConstructionError(f"{cp.variant}: {msg}")

    if cp.variant == C1:
        T, A, B, C = cp.T, cp.A, cp.B, cp.C
        for name, m, size in (("T", T, t), ("A", A, t), ("B", B, k - t), ("C", C, k - t)):
            check(m & ~ground == 0 and m.bit_count() == size, f"|{name}| must be {size} inside [{n}]")
        check((T & A).bit_count() == t - 1, "|T ∩ A| must be t-1")
        check(T & (B | C) == 0, "T must avoid B ∪ C")
        check(A & B == 0 and A & C == 0 and B & C == 0, "A, B, C must be pairwise disjoint")
        check(1 <= cp.u <= n and C >> (cp.u - 1) & 1, "u must lie in C")
    elif cp.variant == C2:
        check(cp.M & ~ground == 0 and cp.M.bit_count() == k + 2, f"|M| must be {k + 2}")
        check(cp.W & ~cp.M == 0 and cp.W.bit_count() == t + 2, f"W must be a {t + 2}-subset of M")
    elif cp.variant == C3:
        check(cp.Z & ~ground == 0 and cp.Z.bit_count() == t + 4, f"|Z| must be {t + 4}")
    else:
        raise ConstructionError(f"unknown variant {cp.variant!r}")


def _hits(arr, mask):
    return np.bitwise_count(arr & np.uint64(mask))


def membership(p: Params, cp: ConstructionParams, arr: np.ndarray) -> np.ndarray:
    """Boolean membership of each k-set in ``arr`` for the construction."""
    t = p.t
    if cp.variant == C1:
        AT = cp.A | cp.T
        ubit = 1 << (cp.u - 1)
        first = ((arr & np.uint64(AT)) == np.uint64(cp.T)) & (_hits(arr, cp.B) > 0) & (_hits(arr, cp.C) > 0)
        second = ((arr & np.uint64(AT)) == np.uint64(AT)) & (_hits(arr, cp.B | ubit) > 0)
        extra = np.isin(arr, np.array(_c1_extras(cp), dtype=np.uint64))
        return first | second | extra
    if cp.variant == C2:
        W, rest = cp.W, cp.M & ~cp.W
        w = _hits(arr, W)
        inside_m = (arr & ~np.uint64(cp.M)) == 0
        return (w == t + 2) | ((w == t + 1) & (_hits(arr, rest) > 0)) | (inside_m & (w == t))
    if cp.variant == C3:
        return _hits(arr, cp.Z) >= t + 2
    raise ConstructionError(f"unknown variant {cp.variant!r}")


def _c1_extras(cp: ConstructionParams) -> list[int]:
    g1 = cp.A | cp.B
    g2 = cp.A | cp.C
    g3 = (cp.T & cp.A) | cp.B | 1 << (cp.u - 1)
    return [g1, g2, g3]


def _class_members(p: Params, cp: ConstructionParams) -> set[int]:
    """Generate each displayed class combinatorially."""
    n, k, t = p.n, p.k, p.t
    ground = full_mask(n)
    out: set[int] = set()
    if cp.variant == C1:
        AT = cp.A | cp.T
        ubit = 1 << (cp.u - 1)
        for x in subsets_of(ground & ~AT, k - t):
            if x & cp.B and x & cp.C:
                out.add(cp.T | x)
        for x in subsets_of(ground & ~AT, k - t - 1):
            if x & (cp.B | ubit):
                out.add(AT | x)
        out.update(_c1_extras(cp))
    elif cp.variant == C2:
        W, rest = cp.W, cp.M & ~cp.W
        for x in subsets_of(ground & ~W, k - t - 2):
            out.add(W | x)
        for core in subsets_of(W, t + 1):
            for x in subsets_of(ground & ~W, k - t - 1):
                if x & rest:
                    out.add(core | x)
        for core in subsets_of(W, t):
            out.add(core | rest)
    elif cp.variant == C3:
        outside = ground & ~cp.Z
        for j in range(t + 2, min(k, t + 4) + 1):
            for core in subsets_of(cp.Z, j):
                for x in subsets_of(outside, k - j):
                    out.add(core | x)
    return out


def build(p: Params, cp: ConstructionParams, method: str = "filter") -> Family:
    validate(p, cp)
    if method == "filter":
        arr = all_k_subsets(p.n, p.k)
        return Family(p, tuple(arr[membership(p, cp, arr)].tolist()))
    if method == "classes":
        return Family.of(p, _class_members(p, cp))
    raise ValueError(f"unknown method {method!r}")


def build_construction1(p: Params, cp: ConstructionParams | None = None, method: str = "filter") -> Family:
    return build(p, cp or default_params(p, C1), method)


def build_construction2(p: Params, cp: ConstructionParams | None = None, method: str = "filter") -> Family:
    return build(p, cp or default_params(p, C2), method)


def build_construction3(p: Params, cp: ConstructionParams | None = None, method: str = "filter") -> Family:
    return build(p, cp or default_params(p, C3), method)


BUILDERS = {C1: build_construction1, C2: build_construction2, C3: build_construction3}


def build_default(p: Params, variant: str) -> Family:
    return build(p, default_params(p, variant))
