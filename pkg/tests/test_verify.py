import json
import random

import pytest

from tintersect.combinat import C1, C2, C3, Params, binomial, k_subsets
from tintersect.constructions import build_default
from tintersect.family import Family, covering_number, iterated_tau, min_covers, saturate
from tintersect.verify import (
    EXPLORATION, FAIL, NA, PASS, PAPER_RANGE, CheckReport, check_cross_families, check_cst,
    check_degree_bound, check_maximal, check_mincover_bounds, check_size_lower_bounds,
    check_tau_trichotomy, enumerate_maximal_families, find_mw_structure, random_cross_tuple,
    random_maximal_family, run_suite, star, summarize,
)

P12 = Params(12, 4, 1)


def test_cst():
    assert check_cst(build_default(P12, C2)).verdict == PASS
    f = saturate(Family(Params(10, 4, 1), ()), seed=11)
    rep = check_cst(f)
    assert rep.verdict == PASS
    cov = min_covers(f).covers
    assert all((a & b).bit_count() >= 1 for a in cov for b in cov)
    assert check_cst(Family.of(P12, [(1, 2, 3, 4)])).verdict == NA


def test_trichotomy():
    rep = check_tau_trichotomy(build_default(P12, C1))
    assert rep.verdict == PASS and rep.metrics["cover_tau"] == 1
    rep = check_tau_trichotomy(build_default(P12, C3))
    assert rep.verdict == PASS and rep.metrics["cover_tau"] == 3
    found = 0
    for seed in range(1, 80, 2):
        f = random_maximal_family(P12, seed)
        if covering_number(f) == 3:
            found += 1
            assert check_tau_trichotomy(f).verdict == PASS
    assert found
    assert check_tau_trichotomy(star(P12)).verdict == NA


def test_mincover_bounds_on_constructions():
    rep = check_mincover_bounds(build_default(P12, C1))
    assert rep.verdict == PASS and rep.metrics["covers"] == 13 == rep.metrics["bound"]
    rep = check_mincover_bounds(build_default(P12, C2))
    assert rep.verdict == PASS and rep.metrics["covers"] == 10 and rep.metrics["structure"]
    assert rep.metrics["M"] == [1, 2, 3, 4, 5, 6] and rep.metrics["W"] == [1, 2, 3]
    rep = check_mincover_bounds(build_default(P12, C3))
    assert rep.verdict == PASS and rep.metrics["covers"] == 10 == binomial(5, 2)
    rep = check_mincover_bounds(build_default(Params(13, 5, 2), C3))
    assert rep.verdict == PASS and rep.metrics["structure"]


def test_structure_scanner_on_saturated_families():
    # dichotomy: either |T_t| is below the max bound, or T_t has the (M, W) shape
    seen = 0
    for p in (Params(12, 4, 1), Params(13, 5, 2), Params(11, 4, 1)):
        bound = max((p.k - p.t) * (p.k - p.t + 1), (p.t + 2) * (p.k - p.t) + 1, binomial(p.t + 4, 2))
        for seed in range(1, 120, 2):
            f = random_maximal_family(p, seed)
            it = iterated_tau(f)
            if it.tau != p.t + 2 or it.cover_tau != p.t + 1:
                continue
            seen += 1
            cov = min_covers(f)
            assert len(cov) < bound or find_mw_structure(cov.covers, p) is not None
            assert check_mincover_bounds(f).verdict == PASS
    assert seen


def test_structure_scanner_finds_construction_two():
    p = Params(13, 5, 2)
    cov = min_covers(build_default(p, C2))
    M, W = find_mw_structure(cov.covers, p)
    assert M.bit_count() == p.k + 2 and W.bit_count() == p.t + 2
    assert find_mw_structure(cov.covers[:-1], p) is None


def test_size_lower_bounds():
    rep = check_size_lower_bounds(build_default(P12, C1), C1)
    assert rep.verdict == PASS and rep.metrics["bound"] == 60 and rep.regime == PAPER_RANGE
    rep = check_size_lower_bounds(build_default(P12, C2), C2)
    assert rep.verdict == PASS and rep.metrics["bound"] == 63
    rep = check_size_lower_bounds(build_default(Params(13, 4, 1), C3), C3)
    assert rep.verdict == PASS and (rep.metrics["size"], rep.metrics["bound"]) == (85, 80)
    # a family outside the bound's hypotheses is measured but only as exploration
    rep = check_size_lower_bounds(star(P12), C3)
    assert rep.regime == EXPLORATION


def test_degree_bound():
    q = Params(13, 4, 1)
    rep = check_degree_bound(star(q))
    assert rep.verdict == PASS and rep.metrics["size"] == rep.metrics["bound"] == binomial(12, 3)
    rep = check_degree_bound(build_default(Params(14, 4, 1), C3))
    assert rep.verdict == PASS
    assert rep.metrics["no_cover_members"] <= rep.metrics["shadow_bound"]
    # n = 12 is below (k-t)(k-t+1)+t = 13
    assert check_degree_bound(star(P12)).verdict == NA
    assert check_degree_bound(saturate(Family(Params(10, 4, 1), ()), seed=1)).verdict == NA


def test_cross_families():
    for n, k in ((9, 3), (10, 4)):
        q = Params(n, k, 1)
        # r = 3: the all-equal stars attain the bound
        rep = check_cross_families([star(q)] * 3)
        assert rep.verdict == PASS and rep.metrics["equality"]
        assert rep.metrics["sum"] == 3 * binomial(n - 1, k - 1)
        # r = 2: the other term wins, attained by a single set against everything meeting it
        a = (1 << k) - 1
        meeting = Family(q, tuple(m for m in k_subsets(n, k) if m & a))
        rep = check_cross_families([Family(q, (a,)), meeting])
        assert rep.verdict == PASS and rep.metrics["equality"]
        rep = check_cross_families([star(q)] * 2)
        assert rep.verdict == PASS and not rep.metrics["equality"]
    rng = random.Random(1)
    for _ in range(20):
        rep = check_cross_families(random_cross_tuple(9, 3, 3, rng))
        assert rep.verdict == PASS
    q = Params(9, 3, 1)
    bad = [Family.of(q, [(1, 2, 3)]), Family.of(q, [(4, 5, 6)])]
    assert check_cross_families(bad).verdict == NA
    assert check_cross_families([star(q)]).verdict == NA


def test_maximality_check_catches_removed_member():
    f = build_default(P12, C3)
    assert check_maximal(f).verdict == PASS
    broken = Family(P12, f.members[:-1])
    rep = check_maximal(broken)
    assert rep.verdict == FAIL and rep.family == broken
    rec = rep.to_record()
    assert rec["family"]["n"] == 12 and len(rec["family"]["sets"]) == len(broken)


def test_report_serialization_is_stable():
    rep = CheckReport("cst", "n=5 k=2 t=1", PASS, {"tau": 1, "covers": 1})
    line = rep.to_line()
    assert list(json.loads(line)) == ["name", "instance", "verdict", "regime", "metrics"]
    assert line == rep.to_line()


def test_enumerate_maximal_families():
    fams = enumerate_maximal_families(Params(6, 3, 1))
    # 3-sets of [6] are disjoint only when complementary: one from each of 10 pairs
    assert len(fams) == 2 ** 10
    fams = enumerate_maximal_families(Params(5, 2, 1))
    assert sorted(len(f) for f in fams) == [3] * 10 + [4] * 5


def test_run_suite_small_and_empty():
    assert run_suite([]) == []
    reports = run_suite([(12, 4, 1), (6, 3, 1)], seeds=10, cross_samples=6)
    assert not any(r.blocking for r in reports)
    names = summarize(reports)
    assert names["cst"][PASS] > 0 and names["cst"][FAIL] == 0
    assert [(r.name, r.instance) for r in reports] == sorted((r.name, r.instance) for r in reports)


def test_run_suite_fault_injection():
    reports = run_suite([(12, 4, 1)], seeds=0, cross_samples=0, fault=True)
    failing = {r.name for r in reports if r.blocking}
    assert "maximality" in failing and "construction_size" in failing


def test_cross_extremal_attains_bound():
    from tintersect.combinat import cross_bound
    from tintersect.verify import cross_extremal
    for n, k in ((9, 3), (10, 4), (8, 4), (12, 3)):
        for r in (2, 3, 4):
            fs = cross_extremal(n, k, r)
            rep = check_cross_families(fs)
            assert rep.verdict == PASS and rep.metrics["equality"]
            assert sum(map(len, fs)) == cross_bound(n, k, r)
