import random
from dataclasses import replace

import pytest

from tintersect.combinat import C1, C2, C3, FORMULAS, ParameterError, Params, elements_of, mask_of, size_lower_bound
from tintersect.constructions import (
    ConstructionError, build, build_construction1, build_construction2, build_construction3,
    default_params,
)
from tintersect.family import covering_number, is_maximal, is_t_intersecting

P = Params(12, 4, 1)
GRID = [Params(n, k, t) for t in (1, 2) for k in (t + 3, t + 4) for n in range(2 * k + 1, 15)]


def test_default_params():
    c1 = default_params(P, C1)
    assert (elements_of(c1.T), elements_of(c1.A), elements_of(c1.B), elements_of(c1.C), c1.u) == \
        ((1,), (2,), (3, 4, 5), (6, 7, 8), 6)
    assert elements_of(default_params(P, C2).M) == (1, 2, 3, 4, 5, 6)
    assert elements_of(default_params(P, C2).W) == (1, 2, 3)
    assert elements_of(default_params(P, C3).Z) == (1, 2, 3, 4, 5)
    q = Params(14, 6, 2)
    c1 = default_params(q, C1)
    assert elements_of(c1.T) == (1, 2) and elements_of(c1.A) == (1, 3)
    with pytest.raises(ParameterError):
        default_params(Params(8, 4, 1), C1)
    with pytest.raises(ConstructionError):
        default_params(P, "C4")


def test_construction1_examples():
    f = build_construction1(P)
    assert len(f) == 87
    assert (2, 3, 4, 5) in f                      # G1 = A ∪ B
    assert (2, 6, 7, 8) in f and (3, 4, 5, 6) in f  # G2, G3
    assert (9, 10, 11, 12) not in f


def test_construction2_examples():
    f = build_construction2(P)
    assert len(f) == 75
    assert all(m in f for m in [(1, 2, 3, 12), (1, 2, 3, 9)])
    assert (1, 4, 5, 6) in f
    assert (1, 2, 4, 12) in f and (1, 2, 9, 12) not in f


def test_construction3_examples():
    f = build_construction3(P)
    assert len(f) == 75
    assert (1, 2, 3, 12) in f
    assert (1, 2, 11, 12) not in f


@pytest.mark.parametrize("p", GRID, ids=str)
def test_grid_invariants(p):
    for label, builder in ((C1, build_construction1), (C2, build_construction2), (C3, build_construction3)):
        f = builder(p)
        assert len(f) == FORMULAS[label](p)
        assert f == builder(p, method="classes")
        assert is_t_intersecting(f) and is_maximal(f)
        assert covering_number(f) == p.t + 2
        assert len(f) > size_lower_bound(p, label)


@pytest.mark.parametrize("label", [C1, C2, C3])
def test_relabeling_invariance(label):
    rng = random.Random(label)
    for p in (Params(12, 4, 1), Params(13, 5, 2)):
        cp = default_params(p, label)
        base = build(p, cp)
        for _ in range(5):
            images = list(range(1, p.n + 1))
            rng.shuffle(images)
            perm = dict(zip(range(1, p.n + 1), images))
            assert build(p, cp.permuted(perm)) == base.permuted(perm)


def test_invalid_construction_params():
    cp = default_params(P, C1)
    with pytest.raises(ConstructionError):
        build(P, replace(cp, u=3))                       # u outside C
    with pytest.raises(ConstructionError):
        build(P, replace(cp, A=mask_of([1])))           # |T ∩ A| must be t-1
    with pytest.raises(ConstructionError):
        build(P, replace(cp, B=mask_of([2, 4, 5])))      # B meets A
    with pytest.raises(ConstructionError):
        build(P, replace(default_params(P, C2), W=mask_of([1, 2, 9])))
    with pytest.raises(ConstructionError):
        build(P, replace(default_params(P, C3), Z=mask_of([1, 2, 3, 4])))
    with pytest.raises(ValueError):
        build(P, cp, method="nope")
