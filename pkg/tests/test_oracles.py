import math

from sparse_delaunay.greedy import greedy_permutation
from sparse_delaunay.kernel import SqScale, mpq
from sparse_delaunay.oracles import (
    delaunay_triangles, exact_alpha_filtration, naive_persistence, nerve_slice_check)
from sparse_delaunay.weights import WeightSchedule, build_schedule

from conftest import UNIT_SQUARE, random_points


def P(x, y):
    return (mpq(x), mpq(y))


def test_alpha_single_triangle():
    st = exact_alpha_filtration([P(0, 0), P(2, 0), P(1, 2)])
    assert st.birth((0, 1, 2)) == mpq(25, 16)
    assert st.birth((0, 1)) == 1
    assert st.validate() == []


def test_alpha_unit_square():
    st = exact_alpha_filtration(UNIT_SQUARE)
    edges = st.simplices(1)
    tris = st.simplices(2)
    assert len(tris) == 2
    for t in tris:
        assert st.birth(t) == mpq(1, 2)
    sides = [e for e in edges if st.birth(e) == mpq(1, 4)]
    assert len(sides) == 4 and len(edges) == 5


def test_alpha_two_points():
    st = exact_alpha_filtration([P(0, 0), P(2, 0)])
    assert [(e.simplex, e.birth) for e in st] == [((0,), 0), ((1,), 0), ((0, 1), 1)]


def test_alpha_collinear():
    st = exact_alpha_filtration([P(0, 0), P(3, 0), P(1, 0)])
    assert st.simplices(1) == [(0, 2), (1, 2)]


def test_delaunay_triangles_empty_circles():
    pts = random_points(5, 20, denom=1000)
    tris = delaunay_triangles(pts)
    # Euler: a triangulation of n points with h hull vertices has 2n - 2 - h triangles
    assert 20 - 2 <= len(tris) <= 2 * 20 - 5


def test_naive_single_vertex():
    from sparse_delaunay.filtration import FiltrationStore
    d = naive_persistence(FiltrationStore.from_births({(0,): 0}))
    assert d.pairs == ((0, 0.0, math.inf),)


def test_slice_at_zero_is_vertices():
    pts = random_points(1, 10)
    sched = build_schedule(greedy_permutation(pts), 1)
    assert nerve_slice_check(pts, sched, 0) == {(i,) for i in range(10)}


def _alpha_slice(pts, s):
    st = exact_alpha_filtration(pts)
    return {e.simplex for e in st if e.birth <= s}


def test_slice_unclipped_equals_alpha():
    pts = random_points(2, 12)
    never = WeightSchedule(mpq(1), [None] * 12, [None] * 12)
    for s in (mpq(1, 100), mpq(1, 20), mpq(1, 5), mpq(10)):
        assert nerve_slice_check(pts, never, s) == _alpha_slice(pts, s)


def test_slice_below_first_freeze_equals_alpha():
    pts = random_points(4, 16)
    sched = build_schedule(greedy_permutation(pts), 1)
    lo = min(l for l in sched.lambda_sq if l is not None)
    for frac in (mpq(1, 4), mpq(1, 2), mpq(99, 100)):
        assert nerve_slice_check(pts, sched, lo * frac) == _alpha_slice(pts, lo * frac)
