"""Exact f(n, k, t, s): the largest t-intersecting family with tau_t >= s.

The search is a depth-first branch and bound over k-sets in ascending bitmask
order (include before exclude), so the first optimum it meets is the
lexicographically least one.  The condition tau_t >= s is enforced through
lazily generated escape constraints: when an incumbent candidate is covered
by an (s-1)-set S, "some member meets S in fewer than t elements" is added
and used from then on to cut subtrees that can no longer escape S.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .combinat import (C1, C2, C3, LABELS, ParameterError, Params,
                       degree_bound, degree_bound_range_ok, elements_of, k_subsets,
                       mask_of, max_f, theorem_threshold)
from .constructions import build_default
from .family import Family, FamilyError, all_k_subsets, is_maximal, iterated_tau, meets, min_covers

PROVED = "proved-optimal"
EXHAUSTED = "budget-exhausted"

CHECKPOINT_HEADER = "tintersect-checkpoint v1"


@dataclass(frozen=True)
class Budget:
    max_nodes: int | None = None
    max_seconds: float | None = None


@dataclass
class SearchResult:
    value: int
    witness: Family
    status: str
    s: int
    nodes: int = 0
    constraints: int = 0
    seconds: float = 0.0
    checkpoint: str | None = None

    @property
    def proved(self) -> bool:
        return self.status == PROVED


class _Exhausted(Exception):
    pass


def _bits(values: np.ndarray) -> int:
    """Pack a boolean vector into an int, element i -> bit i."""
    return int.from_bytes(np.packbits(values, bitorder="little").tobytes(), "little")


def _lowest(x: int) -> int:
    return (x & -x).bit_length() - 1


def _check_params(p: Params, s: int) -> None:
    if p.n < 2 * p.k - p.t + 1:
        raise ParameterError(f"need n >= 2k-t+1, got {p}")
    if not (p.t <= s <= p.k):
        raise ParameterError(f"need t <= s <= k, got s={s} for {p}")


def search_cap(p: Params, s: int) -> int | None:
    """Upper bound on f(n,k,t,s) from the degree bounds, when they apply.

    The degree bound is not monotone in tau at small n, so the cap is its
    maximum over every admissible tau >= s.
    """
    if not degree_bound_range_ok(p):
        return None
    return max(degree_bound(p, tau) for tau in range(s, p.k + 1))


def exact_max(p: Params, s: int, budget: Budget | None = None, *,
              resume: str | None = None, use_degree_bound: bool = True) -> SearchResult:
    """Compute f(n, k, t, s) with the lexicographically least optimal witness."""
    _check_params(p, s)
    budget = budget or Budget()
    n, k, t = p.n, p.k, p.t
    verts = all_k_subsets(n, k)
    N = len(verts)
    adj = [_bits(meets(verts, int(g)) >= t) & ~(1 << i) for i, g in enumerate(verts)]

    if s - 1 >= t:
        small = np.fromiter(k_subsets(n, s - 1), dtype=np.uint64)
        cov = [_bits(meets(small, int(g)) >= t) for g in verts]
        all_small = (1 << len(small)) - 1
    else:
        small = np.zeros(0, dtype=np.uint64)
        cov = [0] * N
        all_small = 0

    best = 0
    witness: list[int] = []
    active = 0
    path: list[int] = []
    resume_path: list[int] = []
    nodes = 0
    constraints = 0
    if resume is not None:
        state = parse_checkpoint(resume)
        if (state["params"], state["s"]) != (p, s):
            raise CheckpointError("checkpoint belongs to a different instance")
        index = {int(m): i for i, m in enumerate(verts)}
        small_index = {int(m): i for i, m in enumerate(small)}
        try:
            witness = [index[m] for m in state["incumbent"]]
            resume_path = [index[m] for m in state["prefix"]]
            for S in state["constraints"]:
                active |= 1 << small_index[S]
        except KeyError as exc:
            raise CheckpointError(f"checkpoint set of the wrong size: {exc}") from None
        best = len(witness)
        constraints = active.bit_count()
        nodes = state["nodes"]

    cap = search_cap(p, s) if use_degree_bound else None
    start = time.monotonic()

    def color_bound(C: int) -> int:
        colors = 0
        while C:
            colors += 1
            Q = C
            while Q:
                low = Q & -Q
                Q &= ~low & ~adj[low.bit_length() - 1]
                C &= ~low
        return colors

    def escapable(C: int, need: int) -> bool:
        # every active (s-1)-set still covering the prefix must be escaped by some candidate
        Q = C
        while Q and need:
            low = Q & -Q
            Q ^= low
            need &= cov[low.bit_length() - 1]
        return not need

    def expand(C: int, covers: int, depth: int) -> None:
        nonlocal best, witness, active, nodes, constraints
        nodes += 1
        if budget.max_nodes is not None and nodes > budget.max_nodes:
            raise _Exhausted
        if budget.max_seconds is not None and nodes % 256 == 0 \
                and time.monotonic() - start > budget.max_seconds:
            raise _Exhausted
        if len(path) > best:
            if covers == 0:
                best = len(path)
                witness = list(path)
            else:
                low = covers & -covers
                if not active & low:
                    active |= low
                    constraints += 1
        if depth < len(resume_path):
            C &= ~((1 << resume_path[depth]) - 1)
        while C:
            if cap is not None and best >= cap:
                return
            size = len(path)
            if size + C.bit_count() <= best:
                return
            if not escapable(C, covers & active):
                return
            if size + color_bound(C) <= best:
                return
            v = _lowest(C)
            path.append(v)
            expand(C & adj[v], covers & cov[v], depth + 1)
            path.pop()
            C &= ~(1 << v)

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, N + 200))
    status = PROVED
    checkpoint = None
    try:
        # every nonempty family can be relabeled to contain {1..k}, the least
        # k-set, and the lexicographically least optimum always does
        path.append(0)
        expand(adj[0], all_small & cov[0], 1)
        path.pop()
    except _Exhausted:
        status = EXHAUSTED
        checkpoint = format_checkpoint(
            p, s, prefix=[int(verts[i]) for i in path],
            incumbent=[int(verts[i]) for i in witness],
            constraints=[int(small[i]) for i in range(len(small)) if active >> i & 1],
            nodes=nodes)
    finally:
        sys.setrecursionlimit(old_limit)

    fam = Family(p, tuple(sorted(int(verts[i]) for i in witness)))
    return SearchResult(best, fam, status, s, nodes, constraints,
                        time.monotonic() - start, checkpoint)


# --- checkpoint text format ----------------------------------------------------

def _fmt_sets(masks: Iterable[int]) -> str:
    return " ".join(",".join(map(str, elements_of(m))) for m in masks)


def _parse_sets(text: str) -> list[int]:
    return [mask_of(int(x) for x in tok.split(",")) for tok in text.split()]


def format_checkpoint(p: Params, s: int, prefix: list[int], incumbent: list[int],
                      constraints: list[int], nodes: int) -> str:
    lines = [
        CHECKPOINT_HEADER,
        f"n={p.n} k={p.k} t={p.t} s={s}",
        f"nodes={nodes}",
        f"prefix={_fmt_sets(prefix)}",
        f"incumbent={_fmt_sets(incumbent)}",
        f"constraints={_fmt_sets(constraints)}",
    ]
    return "\n".join(lines) + "\n"


class CheckpointError(ValueError):
    """A checkpoint that cannot be parsed or does not fit the requested instance."""


def parse_checkpoint(text: str) -> dict:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != CHECKPOINT_HEADER:
        raise CheckpointError(f"not a checkpoint (expected header {CHECKPOINT_HEADER!r})")
    try:
        head = dict(kv.split("=", 1) for kv in lines[1].split())
        fields = {}
        for ln in lines[2:]:
            key, _, value = ln.partition("=")
            fields[key.strip()] = value
        return {
            "params": Params(int(head["n"]), int(head["k"]), int(head["t"])),
            "s": int(head["s"]),
            "nodes": int(fields.get("nodes", "0")),
            "prefix": _parse_sets(fields.get("prefix", "")),
            "incumbent": _parse_sets(fields.get("incumbent", "")),
            "constraints": _parse_sets(fields.get("constraints", "")),
        }
    except (IndexError, KeyError, ValueError) as exc:
        raise CheckpointError(f"malformed checkpoint: {exc}") from None


# --- classification -----------------------------------------------------------------

TRIVIAL = "trivial-star"
OTHER = "other"


@dataclass
class Classification:
    label: str
    tau: int
    cover_tau: int
    cover_count: int
    size: int
    permutation: dict[int, int] | None = None

    @property
    def signature(self) -> tuple[int, int, int, int]:
        return (self.tau, self.cover_tau, self.cover_count, self.size)


def _incidence(f: Family) -> np.ndarray:
    n = f.params.n
    rows = np.array(f.members, dtype=np.uint64)
    shifts = np.arange(n, dtype=np.uint64)
    return ((rows[:, None] >> shifts) & np.uint64(1)).astype(np.int64)


def find_isomorphism(f: Family, g: Family, max_nodes: int = 200_000) -> dict[int, int] | None:
    """A relabeling of [n] sending ``f`` onto ``g``, or None.

    Backtracks over element images, pruning by element degree and pairwise
    co-degree before checking the full image.
    """
    if f.params != g.params or len(f) != len(g):
        return None
    n = f.params.n
    if f.members == g.members:
        return {i: i for i in range(1, n + 1)}
    fi, gi = _incidence(f), _incidence(g)
    fp, gp = fi.T @ fi, gi.T @ gi
    fdeg, gdeg = np.diag(fp), np.diag(gp)
    if sorted(fdeg) != sorted(gdeg):
        return None
    order = sorted(range(n), key=lambda e: (int((fdeg == fdeg[e]).sum()), -fdeg[e], e))
    image = [-1] * n
    used = [False] * n
    target = set(g.members)
    budget = [max_nodes]

    def rec(pos: int) -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            return False
        if pos == n:
            perm = {e + 1: image[e] + 1 for e in range(n)}
            return set(f.permuted(perm).members) == target
        e = order[pos]
        done = order[:pos]
        for c in range(n):
            if used[c] or gdeg[c] != fdeg[e]:
                continue
            if any(fp[e, d] != gp[c, image[d]] for d in done):
                continue
            image[e], used[c] = c, True
            if rec(pos + 1):
                return True
            image[e], used[c] = -1, False
        return False

    if rec(0):
        return {e + 1: image[e] + 1 for e in range(n)}
    return None


def classify_extremal(f: Family) -> Classification:
    """Label a maximal t-intersecting family as one of the constructions, a trivial star, or other.

    A construction label is only returned together with a verified relabeling
    onto the default placement of that construction.
    """
    if not len(f) or not is_maximal(f):
        raise FamilyError("classification is only defined for maximal t-intersecting families")
    p = f.params
    it = iterated_tau(f)
    cover_count = len(min_covers(f))
    base = dict(tau=it.tau, cover_tau=it.cover_tau, cover_count=cover_count, size=len(f))
    if it.tau == p.t:
        return Classification(TRIVIAL, **base)
    if p.n > 2 * p.k and p.k >= p.t + 3 and it.tau == p.t + 2:
        for label in LABELS:
            g = build_default(p, label)
            if len(g) != len(f):
                continue
            if label == C1 and it.cover_tau != p.t or label == C2 and it.cover_tau != p.t + 1 \
                    or label == C3 and it.cover_tau != p.t + 2:
                continue
            perm = find_isomorphism(f, g)
            if perm is not None:
                return Classification(label, permutation=perm, **base)
    return Classification(OTHER, **base)


# --- grids -------------------------------------------------------------------------

def sweep(grid: Iterable[tuple[int, int, int]], s: int | Callable[[Params], int],
          budget: Budget | None = None) -> list[dict]:
    """Run exact_max over (n, k, t) cells; one summary row per cell."""
    rows = []
    for n, k, t in grid:
        row: dict = {"n": n, "k": k, "t": t}
        try:
            p = Params(n, k, t)
            cell_s = s(p) if callable(s) else s
            row["s"] = cell_s
            res = exact_max(p, cell_s, budget)
        except ParameterError as exc:
            row.update(status="rejected", reason=str(exc))
            rows.append(row)
            continue
        row.update(value=res.value, status=res.status, nodes=res.nodes,
                   constraints=res.constraints, seconds=round(res.seconds, 3))
        if n > 2 * k and k >= t + 3 and cell_s == t + 2:
            value, labels = max_f(p)
            row.update(max_f=value, max_f_labels=",".join(sorted(labels)),
                       in_theorem_range=n >= theorem_threshold(k, t))
        rows.append(row)
    return rows
