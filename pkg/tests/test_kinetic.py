import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from sparse_delaunay import build, build_filtration
from sparse_delaunay.greedy import DuplicatePointError
from sparse_delaunay.kernel import SqScale, mpq
from sparse_delaunay.oracles import nerve_slice_check
from sparse_delaunay.persistence import reduce

from conftest import UNIT_SQUARE, random_points


def P(x, y):
    return (mpq(x), mpq(y))


def test_single_point():
    st_ = build_filtration([P(3, 4)], 1)
    assert [(e.simplex, e.birth) for e in st_] == [((0,), 0)]


@pytest.mark.parametrize("eps", [Fraction(1, 2), 1, 3])
def test_two_points(eps):
    st_ = build_filtration([P(0, 0), P(2, 0)], eps)
    assert [(e.simplex, e.birth) for e in st_] == [((0,), 0), ((1,), 0), ((0, 1), 1)]


def test_unclipped_triangle():
    st_ = build_filtration([P(0, 0), P(2, 0), P(1, 2)], 1)
    assert st_.birth((0, 1, 2)) == mpq(25, 16)
    assert st_.birth((0, 1)) == 1


def test_unit_square_h1_pair():
    (b, d), = reduce(build_filtration(UNIT_SQUARE, 1)).dim(1)
    assert abs(b - 0.5) < 1e-9 and abs(d - 0.7071067811865476) < 1e-9


def test_duplicates_rejected():
    with pytest.raises(DuplicatePointError):
        build([P(0, 0), P(1, 1), P(0, 0)], 1)


def test_bad_epsilon():
    with pytest.raises(ValueError):
        build(UNIT_SQUARE, 0)


def test_collinear_input():
    pts = [P(i, 0) for i in range(6)]
    st_ = build_filtration(pts, 1)
    assert st_.validate() == []
    d = reduce(st_)
    assert len([p for p in d.dim(0) if math.isinf(p[1])]) == 1


def check_invariants(pts, eps, res):
    store = res.store
    assert store.validate() == []
    n = len(pts)
    lam = res.schedule.lambda_sq
    e2 = (1 + mpq(eps)) ** 2
    for e in store:
        assert all(v < n for v in e.simplex), "Steiner vertex in output"
        for v in e.simplex:
            if lam[v] is not None:
                assert e.birth <= e2 * lam[v]
        if e.dim == 1:
            u, v = e.simplex
            l2 = (pts[u][0] - pts[v][0]) ** 2 + (pts[u][1] - pts[v][1]) ** 2
            assert SqScale(l2 / 4) <= e.birth
    assert res.stats.separation_violations == 0


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6), st.integers(3, 14),
       st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2)]))
def test_invariants_random(seed, n, eps):
    pts = random_points(seed, n, denom=64)  # coarse grid: many cocircular ties
    res = build(pts, eps)
    check_invariants(pts, eps, res)


def test_slices_match_oracle_small():
    pts = random_points(11, 12)
    res = build(pts, 1)
    lams = sorted(l for l in res.schedule.lambda_sq if l is not None)
    for s in [mpq(0), lams[0] / 2, lams[0], (lams[0] + lams[-1]) / 2, lams[-1], 4 * lams[-1]]:
        assert res.slice(s) == nerve_slice_check(pts, res.schedule, s)


def test_deterministic_output():
    pts = random_points(8, 20)
    assert build_filtration(pts, 1).dumps() == build_filtration(pts, 1).dumps()


def test_orthoradius_rule_valid():
    pts = random_points(9, 20)
    res = build(pts, 1, orthoradius_rule=True)
    check_invariants(pts, 1, res)


def test_stats_populated():
    res = build(random_points(10, 24), 1)
    assert res.stats.box_corners == 4
    assert len(res.stats.flips_per_wave) == len(res.schedule.waves())
    assert res.stats.separation_checks >= res.stats.steiner


@pytest.mark.parametrize("pts", [
    [(i, j) for i in range(4) for j in range(4)],
    [(3, 4), (4, 3), (-3, 4), (4, -3), (3, -4), (-4, 3), (-3, -4), (-4, -3), (5, 0), (0, 5), (-5, 0), (0, -5)],
    [(i, 0) for i in range(7)],
], ids=["grid", "cocircular", "collinear"])
@pytest.mark.parametrize("eps", [Fraction(1, 2), 2])
def test_degenerate_inputs(pts, eps):
    """Cocircular ties: the engine picks one diagonal, the nerve holds all; diagrams agree."""
    from sparse_delaunay.oracles import exact_alpha_filtration
    from sparse_delaunay.persistence import bottleneck_log
    pts = [P(x, y) for x, y in pts]
    res = build(pts, eps)
    check_invariants(pts, eps, res)
    d = bottleneck_log(reduce(res.store), reduce(exact_alpha_filtration(pts)))
    assert d <= math.log(1 + eps) + 1e-9
    lams = sorted(l for l in res.schedule.lambda_sq if l is not None)
    for s in (lams[0] / 3, lams[0], lams[-1]):
        assert res.slice(s) <= nerve_slice_check(pts, res.schedule, s)
