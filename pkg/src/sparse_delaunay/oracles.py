"""Brute-force ground truth: exact alpha filtration, slice nerves, textbook persistence.

These routines share no code paths with the kinetic engine beyond the exact
number type and the orientation predicate.  Floating point is used only to
discard candidates that fail by a wide margin; every accepted decision is
confirmed in exact arithmetic.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Set, Tuple

import numpy as np

from .filtration import FiltrationStore
from .greedy import check_distinct
from .kernel import Point, as_point, as_rational, mpq, orient2
from .persistence import Diagram, boundary_columns, pairs_from_lows
from .weights import WeightSchedule

ALPHA_MAX_N = 256
SLICE_MAX_N = 32
NAIVE_MAX_COLUMNS = 2000

SliceComplex = Set[Tuple[int, ...]]


# -- exact alpha filtration ---------------------------------------------------


def _lift(p: Point) -> mpq:
    return p[0] * p[0] + p[1] * p[1]


def _det3(r0, r1, r2):
    return (r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
            - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
            + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]))


def _incircle_det(pts, a, b, c, d) -> mpq:
    """Textbook 3x3 incircle determinant relative to d; > 0 iff d inside ccw (a, b, c)."""
    pd = pts[d]
    rows = []
    for v in (a, b, c):
        x, y = pts[v][0] - pd[0], pts[v][1] - pd[1]
        rows.append((x, y, x * x + y * y))
    return _det3(*rows)


def _perturbed_inside(pts, a, b, c, d) -> bool:
    """Incircle with lifts perturbed by infinitesimals, larger for smaller ids."""
    det = _incircle_det(pts, a, b, c, d)
    if det != 0:
        return det > 0
    quad = (a, b, c, d)
    for v in sorted(quad):
        sign = _lift_sign(pts, quad, quad.index(v))
        if sign != 0:
            return sign > 0
    return False


def _lift_sign(pts, quad, i) -> int:
    """Sign of d(det)/d(lift_i) for the 4x4 lifted determinant of ccw (a, b, c) and d."""
    base = [list(pts[v]) + [_lift(pts[v]), 1] for v in quad]
    m0 = [row[:] for row in base]
    m1 = [row[:] for row in base]
    m0[i][2] = mpq(0)
    m1[i][2] = mpq(1)
    diff = _det4(m1) - _det4(m0)
    return (diff > 0) - (diff < 0)


def _det4(m) -> mpq:
    total = mpq(0)
    for col in range(4):
        minor = [[m[r][c] for c in range(4) if c != col] for r in range(1, 4)]
        term = m[0][col] * _det3(*minor)
        total += term if col % 2 == 0 else -term
    return total


def delaunay_triangles(points) -> List[Tuple[int, int, int]]:
    """All Delaunay triangles (ccw) of distinct points, by the empty-circumdisk test."""
    pts = [as_point(p) for p in points]
    n = len(pts)
    arr = np.array([[float(p[0]), float(p[1])] for p in pts])
    out = []
    for a, b, c in combinations(range(n), 3):
        o = orient2(pts[a], pts[b], pts[c])
        if o == 0:
            continue
        if o < 0:
            b, c = c, b
        # float prefilter: a point clearly inside the circumdisk rejects the triangle
        ctr, r2 = _float_circle(arr[a], arr[b], arr[c])
        d2 = ((arr - ctr) ** 2).sum(axis=1)
        scale = 1e-9 * (r2 + 1.0)
        if np.any(d2 < r2 - scale):
            continue
        near = np.nonzero(d2 <= r2 + scale)[0]
        if all(_not_inside(pts, a, b, c, int(d)) for d in near if int(d) not in (a, b, c)):
            out.append((a, b, c))
    return out


def _not_inside(pts, a, b, c, d) -> bool:
    return not _perturbed_inside(pts, a, b, c, d)


def _float_circle(a, b, c):
    bx, by = b - a
    cx, cy = c - a
    det = 2 * (bx * cy - by * cx)
    ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / det
    uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / det
    return a + np.array([ux, uy]), ux * ux + uy * uy


def _circumradius_sq(p, q, r) -> mpq:
    bx, by = q[0] - p[0], q[1] - p[1]
    cx, cy = r[0] - p[0], r[1] - p[1]
    det = 2 * (bx * cy - by * cx)
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / det
    uy = (bx * c2 - cx * b2) / det
    return ux * ux + uy * uy


def exact_alpha_filtration(points) -> FiltrationStore:
    """Alpha filtration of the full Delaunay triangulation, births in squared scale."""
    pts = [as_point(p) for p in points]
    n = len(pts)
    if n > ALPHA_MAX_N:
        raise ValueError(f"exact_alpha_filtration supports at most {ALPHA_MAX_N} points")
    check_distinct(pts)
    births: Dict[Tuple[int, ...], mpq] = {(i,): mpq(0) for i in range(n)}
    tris = delaunay_triangles(pts)
    edges: Dict[Tuple[int, int], List[mpq]] = {}
    for t in tris:
        key = tuple(sorted(t))
        r2 = _circumradius_sq(pts[t[0]], pts[t[1]], pts[t[2]])
        births[key] = r2
        for e in combinations(key, 2):
            edges.setdefault(e, []).append(r2)
    if not tris and n >= 2:
        # collinear input: consecutive points along the line
        order = sorted(range(n), key=lambda i: pts[i])
        for u, v in zip(order, order[1:]):
            edges[tuple(sorted((u, v)))] = []
    for (u, v), cof in edges.items():
        pu, pv = pts[u], pts[v]
        mx, my = (pu[0] + pv[0]) / 2, (pu[1] + pv[1]) / 2
        h2 = ((pu[0] - pv[0]) ** 2 + (pu[1] - pv[1]) ** 2) / 4
        gabriel = all((p[0] - mx) ** 2 + (p[1] - my) ** 2 >= h2
                      for i, p in enumerate(pts) if i != u and i != v)
        births[(u, v)] = h2 if gabriel else min(cof)
    return FiltrationStore.from_births(births, n=n)


# -- slice nerve --------------------------------------------------------------


def _power2(p: Point, w2: mpq, x) -> mpq:
    return (x[0] - p[0]) ** 2 + (x[1] - p[1]) ** 2 + w2


def _bisector(pi, wi, pj, wj):
    """Line a.x = b where pi_i(x) = pi_j(x)."""
    a = (2 * (pj[0] - pi[0]), 2 * (pj[1] - pi[1]))
    b = _lift(pj) - _lift(pi) + wj - wi
    return a, b


def _intersect(l1, l2):
    (a1, b1), (a2, b2) = l1, l2
    det = a1[0] * a2[1] - a1[1] * a2[0]
    if det == 0:
        return None
    return ((b1 * a2[1] - b2 * a1[1]) / det, (a1[0] * b2 - a2[0] * b1) / det)


def _project(p, line):
    a, b = line
    t = (b - a[0] * p[0] - a[1] * p[1]) / (a[0] * a[0] + a[1] * a[1])
    return (p[0] + t * a[0], p[1] + t * a[1])


class _Slice:
    def __init__(self, pts: List[Point], w2: List[mpq], s: mpq):
        self.pts, self.w2, self.s = pts, w2, s
        self.arr = np.array([[float(p[0]), float(p[1])] for p in pts])
        self.warr = np.array([float(w) for w in w2])
        self.fs = float(s)
        span = float(np.abs(self.arr).max()) if len(pts) else 1.0
        self.tol = 1e-7 * (1.0 + span * span + self.fs)

    def float_ok(self, i: int, x) -> bool:
        """Could x be a witness for site i (in its cell, power <= s)? Float, generous."""
        d = ((self.arr - x) ** 2).sum(axis=1) + self.warr
        return d[i] <= self.fs + self.tol and d[i] <= d.min() + self.tol

    def exact_ok(self, i: int, x) -> bool:
        pw = _power2(self.pts[i], self.w2[i], x)
        if pw > self.s:
            return False
        return all(pw <= _power2(p, w, x) for p, w in zip(self.pts, self.w2))

    def line(self, i, j):
        return _bisector(self.pts[i], self.w2[i], self.pts[j], self.w2[j])

    def try_candidates(self, i: int, cands) -> bool:
        for x in cands:
            if x is None:
                continue
            if self.float_ok(i, np.array([float(x[0]), float(x[1])])) and self.exact_ok(i, x):
                return True
        return False


def nerve_slice_check(points, schedule: WeightSchedule, s) -> SliceComplex:
    """Simplices of dim <= 2 whose clipped weighted cells share a point at squared scale s."""
    pts = [as_point(p) for p in points]
    n = len(pts)
    if n > SLICE_MAX_N:
        raise ValueError(f"nerve_slice_check supports at most {SLICE_MAX_N} points")
    s = as_rational(s)
    w2 = [schedule.weight_sq(i, s) for i in range(n)]
    sl = _Slice(pts, w2, s)
    out: SliceComplex = set()
    for i in range(n):
        cands = [pts[i]] + [_project(pts[i], sl.line(i, j)) for j in range(n) if j != i]
        lines = [sl.line(i, j) for j in range(n) if j != i]
        cands += [_intersect(l1, l2) for l1, l2 in combinations(lines, 2)]
        if sl.try_candidates(i, cands):
            out.add((i,))
    edges = []
    for i, j in combinations(range(n), 2):
        if (i,) not in out or (j,) not in out:
            continue
        pi, pj = pts[i], pts[j]
        if (pi[0] - pj[0]) ** 2 + (pi[1] - pj[1]) ** 2 > 4 * s:
            continue
        lij = sl.line(i, j)
        cands = [_project(pi, lij)]
        cands += [_intersect(lij, sl.line(i, k)) for k in range(n) if k != i and k != j]
        if sl.try_candidates(i, cands):
            out.add((i, j))
            edges.append((i, j))
    for i, j, k in combinations(range(n), 3):
        if (i, j) not in out or (i, k) not in out or (j, k) not in out:
            continue
        if orient2(pts[i], pts[j], pts[k]) == 0:
            continue
        x = _intersect(sl.line(i, j), sl.line(i, k))
        if sl.try_candidates(i, [x]):
            out.add((i, j, k))
    return out


# -- textbook persistence -----------------------------------------------------


def naive_persistence(store: FiltrationStore, max_dim: int = 1) -> Diagram:
    """Dense left-to-right reduction: add earlier columns with equal low until lows are unique."""
    m = len(store)
    if m > NAIVE_MAX_COLUMNS:
        raise ValueError(f"naive_persistence supports at most {NAIVE_MAX_COLUMNS} columns")
    M = np.zeros((m, m), dtype=np.uint8)
    for j, col in enumerate(boundary_columns(store)):
        i = 0
        while col:
            if col & 1:
                M[i, j] = 1
            col >>= 1
            i += 1

    def low(j):
        nz = np.nonzero(M[:, j])[0]
        return int(nz[-1]) if len(nz) else -1

    for j in range(m):
        changed = True
        while changed:
            changed = False
            lj = low(j)
            if lj < 0:
                break
            for k in range(j):
                if low(k) == lj:
                    M[:, j] ^= M[:, k]
                    changed = True
                    break
    lows = {j: low(j) for j in range(m) if low(j) >= 0}
    return pairs_from_lows(store, lows, max_dim)
