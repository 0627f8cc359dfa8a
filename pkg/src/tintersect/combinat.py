"""Ground-set primitives and exact counting formulas.

Subsets of ``[n] = {1, ..., n}`` are plain Python ints used as bitmasks:
element ``i`` lives in bit ``i - 1``.  All counts are exact Python ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

MAX_GROUND = 64

C1, C2, C3 = "C1", "C2", "C3"
LABELS = (C1, C2, C3)


class ParameterError(ValueError):
    """Raised when (n, k, t) or a derived argument is outside an operation's range."""


@dataclass(frozen=True, order=True)
class Params:
    n: int
    k: int
    t: int

    def __post_init__(self):
        if not (1 <= self.t <= self.k <= self.n):
            raise ParameterError(f"need 1 <= t <= k <= n, got n={self.n} k={self.k} t={self.t}")

    def __str__(self):
        return f"n={self.n} k={self.k} t={self.t}"


# --- bitmask helpers ------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-indexed, got {e}")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def format_set(mask: int) -> str:
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


def binomial(a: int, b: int) -> int:
    """C(a, b) with the convention C(a, b) = 0 for b < 0, b > a or a < 0."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def k_subsets(n: int, k: int) -> Iterator[int]:
    """Yield every k-subset of [n] once, in ascending bitmask order.

    Uses Gosper's hack, so the order is numeric order of the masks.
    """
    if k < 0 or k > n:
        raise ParameterError(f"need 0 <= k <= n, got n={n} k={k}")
    if n > MAX_GROUND:
        raise ParameterError(f"bitmask ground set capped at {MAX_GROUND}, got n={n}")
    if k == 0:
        yield 0
        return
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        yield x
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def subsets_of(mask: int, size: int) -> Iterator[int]:
    """All ``size``-subsets of the set ``mask``, as masks."""
    bits = [1 << (e - 1) for e in elements_of(mask)]
    for combo in itertools.combinations(bits, size):
        yield sum(combo)


# --- the three closed-form sizes -----------------------------------------

def _require_construction_range(p: Params) -> None:
    if not (p.n > 2 * p.k and p.k >= p.t + 3):
        raise ParameterError(f"formulas need n > 2k and k >= t+3, got {p}")


def eval_f1(p: Params) -> int:
    _require_construction_range(p)
    n, k, t = p.n, p.k, p.t
    return (binomial(n - t, k - t) - 3 * binomial(n - k - 1, k - t)
            + binomial(n - k - 2, k - t) + binomial(n - 2 * k + t - 1, k - t) + 3)


def eval_f2(p: Params) -> int:
    _require_construction_range(p)
    n, k, t = p.n, p.k, p.t
    return (binomial(n - t - 2, k - t - 2)
            + (t + 2) * (binomial(n - t - 2, k - t - 1) - binomial(n - k - 2, k - t - 1))
            + binomial(t + 2, 2))


def eval_f3(p: Params) -> int:
    _require_construction_range(p)
    n, k, t = p.n, p.k, p.t
    return (binomial(t + 4, 2) * binomial(n - t - 4, k - t - 2)
            + (t + 4) * binomial(n - t - 4, k - t - 3)
            + binomial(n - t - 4, k - t - 4))


FORMULAS = {C1: eval_f1, C2: eval_f2, C3: eval_f3}


def max_f(p: Params, labels: Iterable[str] = LABELS) -> tuple[int, frozenset[str]]:
    """Largest of the selected formulas and every label attaining it."""
    values = {lab: FORMULAS[lab](p) for lab in labels}
    if not values:
        raise ValueError("no labels selected")
    best = max(values.values())
    return best, frozenset(lab for lab, v in values.items() if v == best)


def theorem_threshold(k: int, t: int) -> int:
    """Smallest n covered by the main upper bound: C(t+3, 2) * (k-t+1)^4."""
    if k < t + 3 or t < 1:
        raise ParameterError(f"need k >= t+3, got k={k} t={t}")
    return binomial(t + 3, 2) * (k - t + 1) ** 4


ASYMPTOTIC_N = 10**9
ASYMPTOTIC_CONFIRM_N = 10**12


def asymptotic_winner(k: int, t: int) -> frozenset[str]:
    """Labels of the constructions that are largest for all large n.

    Decided by exact evaluation at n = 1e9 and re-confirmed at n = 1e12.
    """
    if k < t + 3 or t < 1:
        raise ParameterError(f"need k >= t+3, got k={k} t={t}")
    _, first = max_f(Params(ASYMPTOTIC_N, k, t))
    _, second = max_f(Params(ASYMPTOTIC_CONFIRM_N, k, t))
    if first != second:
        raise ArithmeticError(
            f"winner at n=1e9 {sorted(first)} differs from n=1e12 {sorted(second)} for k={k} t={t}")
    return first


# --- upper and lower bounds used by the verifier ---------------------------

def _require_tau(p: Params, tau: int) -> None:
    if not (p.t <= tau <= p.k):
        raise ParameterError(f"tau must lie in [t, k] = [{p.t}, {p.k}], got {tau}")


def degree_bound_range_ok(p: Params) -> bool:
    """Whether n >= (k-t)(k-t+1) + t and k >= t+3 (where the degree bounds are proved)."""
    return p.k >= p.t + 3 and p.n >= (p.k - p.t) * (p.k - p.t + 1) + p.t


def degree_bound(p: Params, tau: int) -> int:
    """(k-t+1)^(tau-t) * C(tau, t) * C(n-tau, k-tau)."""
    _require_tau(p, tau)
    n, k, t = p.n, p.k, p.t
    return (k - t + 1) ** (tau - t) * binomial(tau, t) * binomial(n - tau, k - tau)


def shadow_degree_bound(p: Params, tau: int) -> int:
    """Bound for members containing no minimum cover: (k-t+1)^(tau-t+1) C(tau,t) C(n-tau-1, k-tau-1)."""
    _require_tau(p, tau)
    n, k, t = p.n, p.k, p.t
    return (k - t + 1) ** (tau - t + 1) * binomial(tau, t) * binomial(n - tau - 1, k - tau - 1)


def cross_bound(n: int, k: int, r: int) -> int:
    """max{C(n,k) - C(n-k,k) + r - 1, r C(n-1,k-1)} for r pairwise cross-intersecting families."""
    if n < 2 * k or r < 2 or k < 1:
        raise ParameterError(f"need n >= 2k, k >= 1 and r >= 2, got n={n} k={k} r={r}")
    return max(binomial(n, k) - binomial(n - k, k) + r - 1, r * binomial(n - 1, k - 1))


def size_lower_bound(p: Params, label: str) -> int:
    """Strict lower bound on |F| for a maximal family of the given construction type."""
    _require_construction_range(p)
    n, k, t = p.n, p.k, p.t
    a = binomial(n - t - 2, k - t - 2)
    b = binomial(n - t - 3, k - t - 3)
    if label == C1:
        return ((k - t) * (k - t + 1) + 1) * a - (k - t) * (2 * (k - t) ** 2 + 1) * b
    if label == C2:
        return ((t + 2) * (k - t) + 1) * a - (t + 2) * (k - t) ** 2 * b
    if label == C3:
        return binomial(t + 4, 2) * (a - 2 * b)
    raise ValueError(f"unknown label {label!r}")
