"""Families of k-sets and exact t-cover computations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from .combinat import (MAX_GROUND, Params, elements_of, full_mask, k_subsets,
                       mask_of, subsets_of)


class FamilyError(ValueError):
    pass


def _as_mask(s) -> int:
    return s if isinstance(s, (int, np.integer)) else mask_of(s)


@dataclass(frozen=True)
class Family:
    """A sorted, duplicate-free tuple of k-subsets of [n] (as bitmasks)."""

    params: Params
    members: tuple[int, ...]

    def __post_init__(self):
        n, k = self.params.n, self.params.k
        if n > MAX_GROUND:
            raise FamilyError(f"bitmask families need n <= {MAX_GROUND}, got {n}")
        out = full_mask(n)
        prev = -1
        for m in self.members:
            if m <= prev:
                raise FamilyError("members must be strictly increasing bitmasks")
            if m & ~out or m.bit_count() != k:
                raise FamilyError(f"{elements_of(m)} is not a {k}-subset of [{n}]")
            prev = m

    @classmethod
    def of(cls, params: Params, sets: Iterable) -> "Family":
        """Build from masks or iterables of 1-indexed elements, sorting and deduplicating."""
        return cls(params, tuple(sorted({int(_as_mask(s)) for s in sets})))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s):
        return _as_mask(s) in self._index

    @property
    def _index(self) -> frozenset[int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = frozenset(self.members)
            object.__setattr__(self, "_idx", idx)
        return idx

    @property
    def array(self) -> np.ndarray:
        arr = self.__dict__.get("_arr")
        if arr is None:
            arr = np.array(self.members, dtype=np.uint64)
            object.__setattr__(self, "_arr", arr)
        return arr

    def sets(self) -> list[tuple[int, ...]]:
        return [elements_of(m) for m in self.members]

    def with_members(self, sets: Iterable) -> "Family":
        return Family.of(self.params, sets)

    def permuted(self, perm: dict[int, int]) -> "Family":
        """Apply an element relabeling ``perm`` (1-indexed, missing keys fixed)."""
        return Family.of(self.params, (tuple(perm.get(e, e) for e in elements_of(m))
                                       for m in self.members))


@dataclass(frozen=True)
class CoverFamily:
    """All t-covers of one size of a source family."""

    params: Params
    size: int
    covers: tuple[int, ...]

    def __len__(self):
        return len(self.covers)

    def as_family(self) -> Family:
        """The covers viewed as a family of ``size``-sets with the same t."""
        return Family(Params(self.params.n, self.size, self.params.t), self.covers)


class IteratedTau(NamedTuple):
    tau: int
    cover_tau: int
    covers_t_intersecting: bool


@lru_cache(maxsize=64)
def all_k_subsets(n: int, k: int) -> np.ndarray:
    arr = np.fromiter(k_subsets(n, k), dtype=np.uint64)
    arr.flags.writeable = False
    return arr


def meets(arr: np.ndarray, mask: int) -> np.ndarray:
    """|A ∩ mask| for every A in ``arr``."""
    return np.bitwise_count(arr & np.uint64(mask))


def compatible_with(candidates: np.ndarray, members: Iterable[int], t: int) -> np.ndarray:
    """Boolean mask of candidates meeting every given member in >= t elements."""
    ok = np.ones(len(candidates), dtype=bool)
    for m in members:
        ok &= meets(candidates, m) >= t
    return ok


# --- predicates -------------------------------------------------------------

def is_t_intersecting(f: Family, t: int | None = None) -> bool:
    t = f.params.t if t is None else t
    arr = f.array
    for i in range(len(arr) - 1):
        if meets(arr[i + 1:], int(arr[i])).min() < t:
            return False
    return True


def are_cross_intersecting(fs: list[Family], t: int) -> bool:
    """True iff |F ∩ G| >= t whenever F, G come from different families of ``fs``."""
    if len({f.params.n for f in fs}) > 1:
        raise FamilyError("families live on different ground sets")
    for i, a in enumerate(fs):
        for b in fs[i + 1:]:
            if not len(a) or not len(b):
                continue
            for m in a.members:
                if meets(b.array, m).min() < t:
                    return False
    return True


def is_t_cover(s, f: Family, t: int | None = None) -> bool:
    t = f.params.t if t is None else t
    if not len(f):
        return True
    return bool(meets(f.array, _as_mask(s)).min() >= t)


def is_trivial(f: Family) -> bool:
    """True iff some t-set lies in every member."""
    if not len(f):
        raise FamilyError("the empty family has no covering number")
    common = full_mask(f.params.n)
    for m in f.members:
        common &= m
    return common.bit_count() >= f.params.t


def is_maximal(f: Family) -> bool:
    """No k-set outside ``f`` t-intersects every member."""
    p = f.params
    cand = all_k_subsets(p.n, p.k)
    ok = compatible_with(cand, f.members, p.t)
    return all(m in f for m in cand[ok].tolist())


# --- covers -------------------------------------------------------------------

def _cover_search(arr: np.ndarray, n: int, t: int, size: int, first_only: bool) -> list[int]:
    """All ``size``-subsets of [n] meeting each row of ``arr`` in >= t elements.

    Branches only on elements of an uncovered member (the one with the fewest
    usable elements).  Branch i takes the i-th option and forbids the earlier
    ones, so every cover is produced exactly once.
    """
    out: list[int] = []
    universe = full_mask(n)

    def rec(chosen: int, forbidden: int, left: int) -> bool:
        cnt = meets(arr, chosen)
        short = np.flatnonzero(cnt < t)
        if short.size == 0:
            for extra in subsets_of(universe & ~chosen & ~forbidden, left):
                out.append(chosen | extra)
                if first_only:
                    return True
            return False
        deficit = t - cnt[short].astype(np.int64)
        if left < int(deficit.max()):
            return False
        usable = arr[short] & np.uint64(universe & ~(chosen | forbidden))
        room = np.bitwise_count(usable).astype(np.int64)
        if (room < deficit).any():
            return False
        pick = int(np.argmin(room - deficit))
        for x in elements_of(int(usable[pick])):
            bit = 1 << (x - 1)
            if rec(chosen | bit, forbidden, left - 1):
                return True
            forbidden |= bit
        return False

    rec(0, 0, size)
    return out


def covering_number(f: Family) -> int:
    """Least s such that some s-subset of [n] is a t-cover of ``f``."""
    if not len(f):
        raise FamilyError("the empty family has no covering number")
    p = f.params
    for s in range(p.t, p.n + 1):
        if _cover_search(f.array, p.n, p.t, s, first_only=True):
            return s
    raise FamilyError("no t-cover exists")  # only when k < t, excluded by Params


def min_covers(f: Family) -> CoverFamily:
    """Every minimum-size t-cover of ``f``."""
    tau = covering_number(f)
    p = f.params
    covers = _cover_search(f.array, p.n, p.t, tau, first_only=False)
    return CoverFamily(p, tau, tuple(sorted(covers)))


def iterated_tau(f: Family) -> IteratedTau:
    """(tau_t(F), tau_t(T_t(F))) plus whether T_t(F) is itself t-intersecting.

    T_t(F) need not be t-intersecting for non-maximal F; its minimum t-cover
    size is still reported and the flag is cleared.
    """
    cov = min_covers(f)
    fam = cov.as_family()
    return IteratedTau(cov.size, covering_number(fam), is_t_intersecting(fam))


def saturate(f: Family, seed: int | None = None) -> Family:
    """Greedily extend ``f`` to a maximal t-intersecting family.

    Candidates are scanned in ascending bitmask order, or in a shuffled order
    when ``seed`` is given; each compatible candidate is added in turn.
    """
    p = f.params
    if not is_t_intersecting(f):
        raise FamilyError("saturate needs a t-intersecting family")
    cand = all_k_subsets(p.n, p.k)
    if seed is not None:
        cand = np.random.default_rng(seed).permutation(cand)
    ok = compatible_with(cand, f.members, p.t)
    present = np.isin(cand, f.array) if len(f) else np.zeros(len(cand), dtype=bool)
    ok &= ~present
    added = []
    while True:
        idx = np.flatnonzero(ok)
        if idx.size == 0:
            break
        g = int(cand[idx[0]])
        added.append(g)
        ok[idx[0]] = False
        ok &= meets(cand, g) >= p.t
    return Family.of(p, list(f.members) + added)
