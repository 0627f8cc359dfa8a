"""Executable checks of the structural results on covers and sizes, and a suite runner.

Every check returns a :class:`CheckReport` whose verdict is ``pass``,
``fail`` or ``not-applicable``; the last one is used whenever the family
does not meet the check's hypotheses, so no check passes vacuously.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .combinat import (C1, C2, C3, LABELS, FORMULAS, Params, binomial, cross_bound,
                       degree_bound, degree_bound_range_ok, elements_of, full_mask, shadow_degree_bound,
                       size_lower_bound, subsets_of, theorem_threshold)
from .constructions import build_default, default_params
from .family import (Family, all_k_subsets, are_cross_intersecting, covering_number,
                     is_maximal, is_t_intersecting, iterated_tau, meets, min_covers, saturate)

PASS, FAIL, NA = "pass", "fail", "not-applicable"
PAPER_RANGE, EXPLORATION = "paper-range", "exploration"


@dataclass
class CheckReport:
    name: str
    instance: str
    verdict: str
    metrics: dict = field(default_factory=dict)
    regime: str = PAPER_RANGE
    family: Family | None = None

    @property
    def blocking(self) -> bool:
        """A failure inside the hypotheses' stated range counts against the suite."""
        return self.verdict == FAIL and self.regime == PAPER_RANGE

    def to_record(self) -> dict:
        rec = {"name": self.name, "instance": self.instance, "verdict": self.verdict,
               "regime": self.regime, "metrics": self.metrics}
        if self.verdict == FAIL and self.family is not None:
            p = self.family.params
            rec["family"] = {"n": p.n, "k": p.k, "t": p.t,
                             "sets": [list(x) for x in self.family.sets()]}
        return rec

    def to_line(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))


def _report(name, f: Family, instance, verdict, metrics=None, regime=PAPER_RANGE):
    return CheckReport(name, instance or str(f.params), verdict, metrics or {}, regime,
                       f if verdict == FAIL else None)


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


# --- single-family checks --------------------------------------------------------

def check_maximal(f: Family, instance: str = "") -> CheckReport:
    if not len(f) or not is_t_intersecting(f):
        return _report("maximality", f, instance, NA)
    return _report("maximality", f, instance, _verdict(is_maximal(f)), {"size": len(f)})


def check_cst(f: Family, instance: str = "") -> CheckReport:
    """Minimum t-covers of a maximal t-intersecting family (n >= 2k) are t-intersecting."""
    p = f.params
    if not len(f) or p.n < 2 * p.k or not is_t_intersecting(f) or not is_maximal(f):
        return _report("cst", f, instance, NA)
    cov = min_covers(f)
    ok = is_t_intersecting(cov.as_family())
    return _report("cst", f, instance, _verdict(ok), {"tau": cov.size, "covers": len(cov)})


def _tau_plus_two_gate(f: Family, strict_n: bool) -> bool:
    p = f.params
    if not len(f) or p.n < 2 * p.k + (1 if strict_n else 0):
        return False
    return is_t_intersecting(f) and is_maximal(f) and covering_number(f) == p.t + 2


def check_tau_trichotomy(f: Family, instance: str = "") -> CheckReport:
    p = f.params
    if not _tau_plus_two_gate(f, strict_n=False):
        return _report("tau_trichotomy", f, instance, NA)
    it = iterated_tau(f)
    ok = p.t <= it.cover_tau <= p.t + 2
    return _report("tau_trichotomy", f, instance, _verdict(ok),
                   {"tau": it.tau, "cover_tau": it.cover_tau})


def find_mw_structure(covers: Sequence[int], p: Params) -> tuple[int, int] | None:
    """(M, W) with covers == {T in C(M, t+2) : |T ∩ W| >= t+1}, if such a pair exists.

    M must be the union of the covers; W is tried over every cover.
    """
    t = p.t
    M = 0
    for c in covers:
        M |= c
    if M.bit_count() != p.k + 2:
        return None
    target = set(covers)
    for W in covers:
        want = {T for T in subsets_of(M, t + 2) if (T & W).bit_count() >= t + 1}
        if want == target:
            return M, W
    return None


def check_mincover_bounds(f: Family, instance: str = "") -> CheckReport:
    """Bounds on |T_t(F)| dispatched on tau_t(T_t(F)) for maximal F with tau_t(F) = t+2."""
    p = f.params
    n, k, t = p.n, p.k, p.t
    if k < t + 3 or not _tau_plus_two_gate(f, strict_n=True):
        return _report("mincover_bounds", f, instance, NA)
    cov = min_covers(f)
    fam = cov.as_family()
    cover_tau = covering_number(fam)
    size = len(cov)
    metrics = {"cover_tau": cover_tau, "covers": size}
    if cover_tau == t:
        bound = (k - t) * (k - t + 1) + 1
        metrics["bound"] = bound
        ok = size <= bound
    elif cover_tau == t + 1:
        bound = max((k - t) * (k - t + 1), (t + 2) * (k - t) + 1, binomial(t + 4, 2))
        mw = find_mw_structure(cov.covers, p)
        metrics.update(bound=bound, structure=mw is not None)
        if mw is not None:
            metrics.update(M=list(elements_of(mw[0])), W=list(elements_of(mw[1])))
        ok = size < bound or mw is not None
    elif cover_tau == t + 2:
        bound = binomial(t + 4, 2)
        metrics["bound"] = bound
        ok = size <= bound
        if t == 1:
            ok = ok and size < (k - t) * (k - t + 1) + 1
        if ok and size == bound and t >= 2:
            Z = 0
            for c in cov.covers:
                Z |= c
            exact = Z.bit_count() == t + 4 and set(cov.covers) == set(subsets_of(Z, t + 2))
            metrics["structure"] = exact
            ok = exact
    else:
        metrics["bound"] = None
        ok = False
    return _report("mincover_bounds", f, instance, _verdict(ok), metrics)


_COVER_TAU_OFFSET = {C1: 0, C2: 1, C3: 2}
_COVER_COUNT = {
    C1: lambda k, t: (k - t) * (k - t + 1) + 1,
    C2: lambda k, t: (t + 2) * (k - t) + 1,
    C3: lambda k, t: binomial(t + 4, 2),
}


def check_size_lower_bounds(f: Family, label: str, instance: str = "") -> CheckReport:
    """|F| strictly exceeds the lower bound attached to its construction type.

    Cells where F is verified to satisfy the bound's hypotheses (maximal,
    tau_t = t+2, matching tau_t(T_t) and |T_t|) are paper-range; any other
    applicable cell is reported as exploration.
    """
    p = f.params
    n, k, t = p.n, p.k, p.t
    if not (n > 2 * k and k >= t + 3) or not len(f):
        return _report("size_lower_bounds", f, instance, NA)
    bound = size_lower_bound(p, label)
    in_range = False
    if is_t_intersecting(f) and is_maximal(f):
        cov = min_covers(f)
        if cov.size == t + 2 and len(cov) == _COVER_COUNT[label](k, t):
            in_range = covering_number(cov.as_family()) == t + _COVER_TAU_OFFSET[label]
    metrics = {"label": label, "size": len(f), "bound": bound,
               "at_threshold": n >= theorem_threshold(k, t)}
    return _report("size_lower_bounds", f, instance, _verdict(len(f) > bound), metrics,
                   PAPER_RANGE if in_range else EXPLORATION)


def check_degree_bound(f: Family, instance: str = "") -> CheckReport:
    """Both degree bounds: on |F|, and on members containing no minimum cover."""
    p = f.params
    if not degree_bound_range_ok(p) or not len(f) or not is_t_intersecting(f):
        return _report("degree_bound", f, instance, NA)
    cov = min_covers(f)
    tau = cov.size
    full = degree_bound(p, tau)
    shadow = shadow_degree_bound(p, tau)
    covers = list(cov.covers)
    rest = sum(1 for m in f.members if not any(c & m == c for c in covers))
    metrics = {"tau": tau, "size": len(f), "bound": full, "no_cover_members": rest,
               "shadow_bound": shadow}
    return _report("degree_bound", f, instance, _verdict(len(f) <= full and rest <= shadow), metrics)


def check_cross_families(fs: Sequence[Family], instance: str = "") -> CheckReport:
    """Sum bound for r pairwise cross-intersecting k-uniform families."""
    r = len(fs)
    head = fs[0] if fs else None
    desc = instance or (f"n={head.params.n} k={head.params.k} r={r}" if head else "r=0")

    def na():
        return CheckReport("cross_families", desc, NA)

    if r < 2 or len({(f.params.n, f.params.k) for f in fs}) != 1:
        return na()
    n, k = head.params.n, head.params.k
    if n < 2 * k or sum(1 for f in fs if len(f)) < 2 or not are_cross_intersecting(list(fs), 1):
        return na()
    total = sum(len(f) for f in fs)
    bound = cross_bound(n, k, r)
    verdict = _verdict(total <= bound)
    rep = CheckReport("cross_families", desc, verdict,
                      {"sum": total, "bound": bound, "equality": total == bound, "r": r})
    if verdict == FAIL:
        rep.family = Family.of(Params(n, k, 1), (m for f in fs for m in f.members))
    return rep


# --- family generators for the suite ----------------------------------------------

def random_maximal_family(p: Params, seed: int) -> Family:
    """A reproducible maximal t-intersecting family.

    Even seeds saturate the empty family in a shuffled order.  Odd seeds keep a
    random half of a randomly relabeled construction (when (n,k,t) admits
    one) and saturate that, which tends to land near tau_t = t+2.
    """
    rng = random.Random(seed)
    if seed % 2 == 0 or not (p.n > 2 * p.k and p.k >= p.t + 3):
        return saturate(Family(p, ()), seed=seed)
    base = build_default(p, rng.choice(LABELS))
    perm_list = list(range(1, p.n + 1))
    rng.shuffle(perm_list)
    perm = dict(zip(range(1, p.n + 1), perm_list))
    kept = [m for m in base.permuted(perm).members if rng.random() < 0.5]
    return saturate(Family.of(p, kept), seed=seed)


def enumerate_maximal_families(p: Params, limit: int | None = None) -> list[Family]:
    """Every maximal t-intersecting family, as maximal cliques of the compatibility graph."""
    verts = all_k_subsets(p.n, p.k).tolist()
    g = nx.Graph()
    g.add_nodes_from(range(len(verts)))
    for i, a in enumerate(verts):
        for j in range(i + 1, len(verts)):
            if (a & verts[j]).bit_count() >= p.t:
                g.add_edge(i, j)
    out = []
    for clique in nx.find_cliques(g):
        out.append(Family.of(p, (verts[i] for i in clique)))
        if limit is not None and len(out) >= limit:
            break
    return sorted(out, key=lambda f: f.members)


def random_cross_tuple(n: int, k: int, r: int, rng: random.Random) -> list[Family]:
    """r non-empty pairwise cross-intersecting families drawn by rejection sampling.

    Random k-sets are offered to random families and kept when they meet every
    set already placed in the other families.
    """
    p = Params(n, k, 1)
    pool = all_k_subsets(n, k).tolist()
    fams: list[list[int]] = [[] for _ in range(r)]
    for i in range(r):
        # seed every family so each tuple is non-empty throughout
        fams[i].append(rng.choice([g for g in pool if all(g & h for f in fams for h in f)]))
    for _ in range(rng.randint(0, 4 * len(pool))):
        i = rng.randrange(r)
        g = rng.choice(pool)
        if g in fams[i]:
            continue
        if all((g & h) for j in range(r) if j != i for h in fams[j]):
            fams[i].append(g)
    return [Family.of(p, f) for f in fams]


def cross_extremal(n: int, k: int, r: int) -> list[Family]:
    """A pairwise cross-intersecting r-tuple whose total size equals cross_bound(n, k, r).

    Either r copies of the star at 1, or r-1 copies of {A} together with every k-set
    meeting A (A = {1..k}), whichever term of the bound is larger.
    """
    q = Params(n, k, 1)
    if r * binomial(n - 1, k - 1) >= cross_bound(n, k, r):
        return [star(q)] * r
    a = full_mask(k)
    meeting = Family(q, tuple(m for m in all_k_subsets(n, k).tolist() if m & a))
    return [meeting] + [Family(q, (a,))] * (r - 1)


def star(p: Params, element: int = 1) -> Family:
    bit = 1 << (element - 1)
    return Family(p, tuple(m for m in all_k_subsets(p.n, p.k).tolist() if m & bit))


# --- suite ------------------------------------------------------------------------

ACCEPTANCE_GRID = tuple((n, k, t) for t in (1, 2) for k in (t + 3, t + 4)
                        for n in range(2 * k + 1, 15))
EXHAUSTIVE_GRID = ((5, 2, 1), (6, 2, 1), (7, 2, 1), (8, 2, 1), (6, 3, 1), (6, 3, 2))
DEFAULT_GRID = ACCEPTANCE_GRID + EXHAUSTIVE_GRID

CHECK_NAMES = ("construction_size", "covering_signature", "maximality", "cst", "tau_trichotomy",
               "mincover_bounds", "size_lower_bounds", "degree_bound", "cross_families")


def check_construction(f: Family, label: str, instance: str = "") -> list[CheckReport]:
    """Size and covering-signature checks specific to a built construction."""
    p = f.params
    want = FORMULAS[label](p)
    out = [_report("construction_size", f, instance, _verdict(len(f) == want),
                   {"size": len(f), "formula": want})]
    it = iterated_tau(f)
    expected = (p.t + 2, p.t + _COVER_TAU_OFFSET[label])
    out.append(_report("covering_signature", f, instance,
                       _verdict((it.tau, it.cover_tau) == expected and it.covers_t_intersecting),
                       {"tau": it.tau, "cover_tau": it.cover_tau, "expected": list(expected)}))
    return out


def family_checks(f: Family, instance: str = "") -> list[CheckReport]:
    return [check_maximal(f, instance), check_cst(f, instance), check_tau_trichotomy(f, instance),
            check_mincover_bounds(f, instance), check_degree_bound(f, instance)]


def run_suite(grid: Iterable[tuple[int, int, int]] = DEFAULT_GRID, seeds: int = 200,
              budget: int | None = 5000, cross_samples: int = 100,
              fault: bool = False) -> list[CheckReport]:
    """Run every check over constructions, seeded random families, exhaustive
    small cells and cross-intersecting samples drawn from ``grid``.

    ``seeds`` random maximal families are spread round-robin over the cells
    with n >= 2k; ``budget`` caps the maximal families enumerated per small
    cell; ``fault`` drops one member of every built construction to exercise
    the failure path.
    """
    cells = [Params(*c) for c in grid]
    reports: list[CheckReport] = []

    for p in cells:
        if not (p.n > 2 * p.k and p.k >= p.t + 3):
            continue
        for label in LABELS:
            f = build_default(p, label)
            if fault:
                f = Family(p, f.members[:-1])
            tag = f"{p} {label}"
            reports += check_construction(f, label, tag)
            reports += family_checks(f, tag)
            reports.append(check_size_lower_bounds(f, label, tag))

    random_cells = [p for p in cells if p.n >= 2 * p.k]
    if random_cells:
        for seed in range(seeds):
            p = random_cells[seed % len(random_cells)]
            reports += family_checks(random_maximal_family(p, seed), f"{p} seed={seed}")

    for p in cells:
        if binomial(p.n, p.k) > 30 or p.n < 2 * p.k:
            continue
        for i, f in enumerate(enumerate_maximal_families(p, budget)):
            reports += family_checks(f, f"{p} maximal#{i}")

    cross_cells = sorted({(p.n, p.k) for p in cells if p.n >= 2 * p.k and p.k >= 2})
    if cross_cells:
        rng = random.Random(0)
        for n, k in cross_cells:
            for r in (2, 3):
                q = Params(n, k, 1)
                reports.append(check_cross_families([star(q)] * r, f"n={n} k={k} r={r} stars"))
                reports.append(check_cross_families(cross_extremal(n, k, r),
                                                    f"n={n} k={k} r={r} extremal"))
        for i in range(cross_samples):
            n, k = cross_cells[i % len(cross_cells)]
            r = 2 + i % 2
            reports.append(check_cross_families(random_cross_tuple(n, k, r, rng),
                                                f"n={n} k={k} r={r} sample={i}"))

    return sorted(reports, key=lambda rep: (rep.name, rep.instance))


def summarize(reports: Iterable[CheckReport]) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for rep in reports:
        row = out.setdefault(rep.name, {PASS: 0, FAIL: 0, NA: 0})
        row[rep.verdict] += 1
    return out
