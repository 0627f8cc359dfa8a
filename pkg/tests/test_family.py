import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_covers, brute_tau, brute_t_intersecting
from tintersect.combinat import C1, C2, C3, Params, binomial, k_subsets, mask_of, subsets_of
from tintersect.constructions import build_default, default_params
from tintersect.family import (
    Family, FamilyError, are_cross_intersecting, covering_number, is_maximal, is_t_cover,
    is_t_intersecting, is_trivial, iterated_tau, min_covers, saturate,
)
from tintersect.verify import random_cross_tuple, star

TRIANGLE = Family.of(Params(5, 2, 1), [(1, 2), (1, 3), (2, 3)])
STAR5 = star(Params(5, 2, 1))


def masks(*sets):
    return tuple(sorted(mask_of(s) for s in sets))


def test_family_normalizes_and_validates():
    f = Family.of(Params(5, 2, 1), [(2, 3), (1, 2), (2, 3)])
    assert f.sets() == [(1, 2), (2, 3)]
    assert (1, 2) in f and (1, 5) not in f
    with pytest.raises(FamilyError):
        Family.of(Params(5, 2, 1), [(1, 2, 3)])
    with pytest.raises(FamilyError):
        Family.of(Params(5, 2, 1), [(1, 6)])
    with pytest.raises(FamilyError):
        Family(Params(5, 2, 1), (mask_of((2, 3)), mask_of((1, 2))))


def test_t_intersecting_examples():
    assert is_t_intersecting(TRIANGLE)
    assert not is_t_intersecting(Family.of(Params(5, 2, 1), [(1, 2), (3, 4)]))
    assert is_t_intersecting(Family(Params(5, 2, 1), ()))
    assert is_t_intersecting(build_default(Params(12, 4, 1), C1))


def test_cross_intersecting_examples():
    p = Params(5, 2, 1)
    assert are_cross_intersecting([STAR5, STAR5], 1)
    assert not are_cross_intersecting([Family.of(p, [(1, 2)]), Family.of(p, [(3, 4)])], 1)
    rng = random.Random(7)
    for _ in range(10):
        fams = random_cross_tuple(9, 3, 3, rng)
        assert are_cross_intersecting(fams, 1)
        for i, a in enumerate(fams):
            for b in fams[i + 1:]:
                assert all(len(set(x) & set(y)) >= 1 for x in a.sets() for y in b.sets())
    with pytest.raises(FamilyError):
        are_cross_intersecting([STAR5, star(Params(6, 2, 1))], 1)


def test_cover_examples():
    assert is_t_cover(mask_of([1]), STAR5)
    assert not is_t_cover(mask_of([4, 5]), TRIANGLE)
    p = Params(12, 4, 1)
    f2 = build_default(p, C2)
    assert is_t_cover(default_params(p, C2).W, f2)


def test_covering_number_examples():
    assert covering_number(STAR5) == 1
    assert covering_number(TRIANGLE) == 2 == brute_tau(5, TRIANGLE.sets(), 1)
    assert covering_number(build_default(Params(12, 4, 1), C3)) == 3
    with pytest.raises(FamilyError):
        covering_number(Family(Params(5, 2, 1), ()))


def test_min_covers_examples():
    assert min_covers(STAR5).covers == masks((1,))
    assert min_covers(TRIANGLE).covers == masks((1, 2), (1, 3), (2, 3))
    c3 = min_covers(build_default(Params(12, 4, 1), C3))
    assert c3.size == 3
    assert c3.covers == tuple(sorted(subsets_of(mask_of(range(1, 6)), 3)))
    assert len(c3) == 10


def test_iterated_tau_of_constructions():
    for t, k, n in [(1, 4, 12), (2, 5, 11)]:
        p = Params(n, k, t)
        assert iterated_tau(build_default(p, C1))[:2] == (t + 2, t)
        assert iterated_tau(build_default(p, C2))[:2] == (t + 2, t + 1)
        assert iterated_tau(build_default(p, C3))[:2] == (t + 2, t + 2)


def test_iterated_tau_flags_non_intersecting_covers():
    # {12, 34} is not intersecting; its minimum covers {13,14,23,24} include disjoint pairs
    f = Family.of(Params(5, 2, 1), [(1, 2), (3, 4)])
    it = iterated_tau(f)
    assert it.tau == 2
    assert not it.covers_t_intersecting
    assert it.cover_tau == brute_tau(5, [tuple(sorted(s)) for s in brute_covers(5, f.sets(), 1, 2)], 1)


def test_is_trivial_examples():
    assert is_trivial(STAR5)
    assert not is_trivial(TRIANGLE)
    assert not is_trivial(build_default(Params(12, 4, 1), C2))


def test_is_maximal_examples():
    p = Params(9, 3, 1)
    full_star = star(p)
    assert len(full_star) == 28
    # exhaustive oracle: every 3-set not containing 1 misses some member of the star
    for m in k_subsets(9, 3):
        if not m & 1:
            assert any(not m & g for g in full_star.members)
    assert is_maximal(full_star)
    assert not is_maximal(Family.of(p, [(1, 2, 3)]))
    for lab in (C1, C2, C3):
        assert is_maximal(build_default(Params(12, 4, 1), lab))


def test_saturate_examples():
    # ascending bitmask order offers {1,3} (mask 5) and then {2,3} (mask 6) before {1,4} (mask 9)
    got = saturate(Family.of(Params(5, 2, 1), [(1, 2)]))
    assert got.sets() == [(1, 2), (1, 3), (2, 3)]
    assert is_maximal(got)
    full_star = star(Params(9, 3, 1))
    assert saturate(full_star) == full_star
    c2 = build_default(Params(12, 4, 1), C2)
    assert saturate(c2) == c2
    with pytest.raises(FamilyError):
        saturate(Family.of(Params(5, 2, 1), [(1, 2), (3, 4)]))


def test_saturate_seeded_is_reproducible():
    p = Params(10, 4, 1)
    a = saturate(Family(p, ()), seed=5)
    assert a == saturate(Family(p, ()), seed=5)
    assert is_maximal(a) and is_t_intersecting(a)


# --- properties over random small families ---------------------------------------

@st.composite
def small_families(draw, max_n=8):
    n = draw(st.integers(3, max_n))
    k = draw(st.integers(1, min(4, n)))
    t = draw(st.integers(1, k))
    p = Params(n, k, t)
    pool = list(k_subsets(n, k))
    picks = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=8))
    chosen = []
    for m in picks:
        if all((m & c).bit_count() >= t for c in chosen):
            chosen.append(m)
    return Family.of(p, chosen)


@settings(max_examples=150, deadline=None)
@given(small_families())
def test_covering_number_matches_brute_force(f):
    p = f.params
    sets = f.sets()
    tau = covering_number(f)
    assert tau == brute_tau(p.n, sets, p.t)
    assert p.t <= tau <= p.k
    cov = min_covers(f)
    assert {frozenset(c) for c in cov.as_family().sets()} == \
        {frozenset(c) for c in brute_covers(p.n, sets, p.t, tau)}
    assert all(is_t_cover(c, f) for c in cov.covers)
    assert not brute_covers(p.n, sets, p.t, tau - 1)
    assert is_trivial(f) == (tau == p.t)


@settings(max_examples=60, deadline=None)
@given(small_families(), st.integers(0, 10**6))
def test_saturate_properties(f, seed):
    for s in (None, seed):
        g = saturate(f, seed=s)
        assert set(f.members) <= set(g.members)
        assert is_maximal(g) and brute_t_intersecting(g.sets(), f.params.t)
        assert saturate(g, seed=s) == g


@pytest.mark.parametrize("n,k,t", [(9, 4, 1), (10, 4, 1), (12, 5, 1), (11, 5, 2), (12, 4, 2)])
def test_covers_of_maximal_families_are_t_intersecting(n, k, t):
    p = Params(n, k, t)
    for seed in range(12):
        f = saturate(Family(p, ()), seed=seed)
        assert is_t_intersecting(min_covers(f).as_family())


def test_cover_search_is_exact_up_to_n14():
    # no (tau-1)-subset of [n] covers, checked by full enumeration of candidate sets
    for (n, k, t), seed in [((14, 6, 2), 1), ((14, 5, 1), 2), ((13, 4, 1), 3), ((14, 6, 2), 4)]:
        f = saturate(Family(Params(n, k, t), ()), seed=seed)
        tau = covering_number(f)
        assert not any(is_t_cover(S, f) for S in k_subsets(n, tau - 1))
        everything = [S for S in k_subsets(n, tau) if is_t_cover(S, f)]
        assert tuple(everything) == min_covers(f).covers


@pytest.mark.parametrize("t,k", [(1, 4), (1, 5), (2, 5), (2, 6)])
def test_min_cover_structures_of_constructions(t, k):
    for n in range(2 * k + 1, 15):
        p = Params(n, k, t)
        c1 = min_covers(build_default(p, C1))
        assert len(c1) == (k - t) * (k - t + 1) + 1
        assert covering_number(c1.as_family()) == t
        cp = default_params(p, C2)
        want = tuple(sorted(T for T in subsets_of(cp.M, t + 2) if (T & cp.W).bit_count() >= t + 1))
        c2 = min_covers(build_default(p, C2))
        assert c2.covers == want and len(want) == (t + 2) * (k - t) + 1
        c3 = min_covers(build_default(p, C3))
        assert len(c3) == binomial(t + 4, 2)
