import math
from fractions import Fraction

import pytest

from sparse_delaunay.kernel import mpq
from sparse_delaunay.mesh import INF, Triangulation, canon
from sparse_delaunay.refinement import RefinementLimitError, aspect, refine, snap

from conftest import random_points


def P(x, y):
    return (mpq(x), mpq(y))


def single_triangle():
    t = Triangulation([P(0, 0), P(4, 0), P(0, 4)])
    t.add(0, 1, 2)
    for a, b in ((0, 1), (1, 2), (2, 0)):
        t.add(b, a, INF)
    return t


def boxed(points, half=50):
    """Delaunay triangulation of points inside a square box of the given half-side."""
    corners = [P(-half, -half), P(half, -half), P(half, half), P(-half, half)]
    t = Triangulation(corners + list(points))
    t.init_box([0, 1, 2, 3])
    for q in range(4, len(t.pts)):
        t.insert_delaunay(q, 0)
    return t


def is_delaunay(t):
    for a, b, c in t.triangles(finite_only=True):
        for u, v in ((a, b), (b, c), (c, a)):
            if t.in_circle(a, b, c, t.opp[(v, u)]):
                return False
    return True


# -- locate ----------------------------------------------------------------

def test_locate_inside_single_triangle():
    assert canon(single_triangle().locate(P(1, 1), 0)) == (0, 1, 2)


def test_locate_beyond_hull_edge():
    t = single_triangle()
    assert set(t.locate(P(2, -1), 0)) == {0, 1, INF}


def test_locate_two_triangle_square():
    t = Triangulation([P(0, 0), P(1, 0), P(1, 1), P(0, 1)])
    t.init_box([0, 1, 2, 3])
    # triangles (0,1,2) and (0,2,3); centroid of the second
    assert canon(t.locate(P(Fraction(1, 3), Fraction(2, 3)), 1)) == (0, 2, 3)


def test_incremental_insertion_is_delaunay():
    t = boxed(random_points(3, 40, denom=100))
    assert is_delaunay(t)
    assert all(len(t.neighbors(v)) >= 3 for v in t.vertices())


# -- aspect ----------------------------------------------------------------

def grid(n):
    return [P(i, j) for i in range(n) for j in range(n)]


def test_aspect_grid_interior():
    t = boxed(grid(5))
    v = 4 + 2 * 5 + 2  # (2, 2)
    rep = aspect(t, v)
    assert rep.aspect_sq == Fraction(1, 2)
    assert rep.nn_sq == 1


def test_aspect_forced_corner():
    t = boxed([P(0, 0), P(1, 0), P(0, 4), P(-1, 0), P(0, -4)])
    rep = aspect(t, 4)
    assert rep.aspect_sq == Fraction(17, 4)
    assert rep.far_corner in {P(Fraction(s1, 2), 2 * s2) for s1 in (-1, 1) for s2 in (-1, 1)}


def test_aspect_near_equilateral():
    # hexagonal lattice with sqrt(3) replaced by a close rational
    r3 = mpq(Fraction(math.sqrt(3)).limit_denominator(10 ** 9))
    pts = [(mpq(i) + mpq(j, 2), mpq(j) * r3 / 2) for i in range(-3, 4) for j in range(-3, 4)]
    t = boxed(pts)
    v = 4 + pts.index(P(0, 0))
    assert abs(float(aspect(t, v).aspect_sq) - 1 / 3) < 1e-6


def test_aspect_hull_vertex_unbounded():
    rep = aspect(single_triangle(), 0)
    assert rep.far_sq is None and rep.aspect_sq == math.inf


# -- refine ----------------------------------------------------------------

def test_refine_grid_adds_nothing():
    # the grid's own corners bound the hull, so boundary cells are unbounded and skipped
    pts = grid(6)
    corners = [0, 5 * 6, 6 * 6 - 1, 5]
    t = Triangulation(pts)
    t.init_box(corners)
    for q in range(len(pts)):
        if q not in corners:
            t.insert_delaunay(q, 0)
    assert is_delaunay(t)
    assert refine(t, 1) == 0


def test_refine_two_points_in_large_box():
    t = boxed([P(0, 0), P(1, 0)])
    added = refine(t, 1, limit=10 ** 4)
    assert added >= 1
    assert is_delaunay(t)
    # well spaced on exit: every bounded cell has aspect <= 2/eps
    for v in t.vertices():
        rep = aspect(t, v)
        assert rep.far_sq is None or rep.aspect_sq <= 4


def test_refine_limit():
    t = boxed([P(0, 0), P(1, 0)])
    with pytest.raises(RefinementLimitError):
        refine(t, 1, limit=3)


def test_refine_domain_keeps_hull():
    t = boxed([P(0, 0), P(1, 0)])
    refine(t, 1, domain=(mpq(-50), mpq(-50), mpq(50), mpq(50)), limit=10 ** 4)
    for x, y in t.pts[4:]:
        assert -50 < x < 50 and -50 < y < 50


def test_snap_grid_step():
    x = snap((mpq(1, 3), mpq(2, 7)), mpq(1))
    assert all(c.denominator & (c.denominator - 1) == 0 for c in x)
    assert max(abs(x[0] - mpq(1, 3)), abs(x[1] - mpq(2, 7))) <= mpq(1, 128)
