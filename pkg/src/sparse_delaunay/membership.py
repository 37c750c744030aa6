"""Exact slice membership of simplices over a scale interval.

Within one combinatorial neighbourhood every squared weight is affine in s,
``w_v(s)^2 = m_v*s + c_v``, so orthocenters move affinely and the minimum
power distance over a dual face is a piecewise quadratic in s.  A simplex is
in the slice at s iff that minimum is at most s.

``aff(v)`` returns the pair ``(m_v, c_v)``.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence, Tuple

from .kernel import Point, SqScale, mpq, nonpositive_intervals
from .mesh import INF, Triangulation

Affine = Callable[[int], Tuple[int, mpq]]
Interval = Tuple[SqScale, Optional[SqScale]]
AffPoint = Tuple[Tuple[mpq, mpq], Tuple[mpq, mpq]]

_ZERO = mpq(0)


def affine_center(pts: Sequence[Point], aff: Affine, tri: Tuple[int, int, int]) -> AffPoint:
    """Power center of a triangle as ``X0 + s*X1``."""
    a, b, c = tri
    pa, pb, pc = pts[a], pts[b], pts[c]
    bx, by = pb[0] - pa[0], pb[1] - pa[1]
    cx, cy = pc[0] - pa[0], pc[1] - pa[1]
    det2 = 2 * (bx * cy - by * cx)
    (ma, ca), (mb, cb), (mc, cc) = aff(a), aff(b), aff(c)
    rb0 = bx * bx + by * by + cb - ca
    rc0 = cx * cx + cy * cy + cc - ca
    rb1, rc1 = mb - ma, mc - ma
    x0 = (pa[0] + (rb0 * cy - rc0 * by) / det2, pa[1] + (bx * rc0 - cx * rb0) / det2)
    x1 = ((rb1 * cy - rc1 * by) / det2, (bx * rc1 - cx * rb1) / det2)
    return x0, x1


def affine_edge_center(pts: Sequence[Point], aff: Affine, u: int, v: int) -> AffPoint:
    """Orthocenter of an edge (power-distance minimiser on its bisector) as ``X0 + s*X1``."""
    pu, pv = pts[u], pts[v]
    dx, dy = pv[0] - pu[0], pv[1] - pu[1]
    l2 = dx * dx + dy * dy
    (mu, cu), (mv, cv) = aff(u), aff(v)
    t0 = (l2 + cv - cu) / (2 * l2)
    t1 = mpq(mv - mu) / (2 * l2)
    return (pu[0] + t0 * dx, pu[1] + t0 * dy), (t1 * dx, t1 * dy)


def excess(pts: Sequence[Point], aff: Affine, v: int, center: AffPoint):
    """Coefficients (A, B, C) of ``pi_v(X(s))^2 - s`` for an affine point X."""
    (x0, y0), (x1, y1) = center
    pv = pts[v]
    m, c = aff(v)
    d0x, d0y = x0 - pv[0], y0 - pv[1]
    return (d0x * d0x + d0y * d0y + c,
            2 * (d0x * x1 + d0y * y1) + m - 1,
            x1 * x1 + y1 * y1)


def merge(intervals: List[Interval]) -> List[Interval]:
    """Union of closed intervals (``None`` upper end means unbounded)."""
    ivs = sorted(intervals, key=lambda iv: iv[0])
    out: List[Interval] = []
    for lo, hi in ivs:
        if out:
            plo, phi = out[-1]
            if phi is None or lo <= phi:
                if phi is not None and (hi is None or hi > phi):
                    out[-1] = (plo, hi)
                continue
        out.append((lo, hi))
    return out


def triangle_intervals(tri: Triangulation, aff: Affine, t, lo, hi) -> List[Interval]:
    pts = tri.pts
    ctr = affine_center(pts, aff, t)
    return nonpositive_intervals(*excess(pts, aff, t[0], ctr), lo, hi)


def _dot(p, d):
    return p[0] * d[0] + p[1] * d[1]


def edge_intervals(tri: Triangulation, aff: Affine, u: int, v: int, lo, hi) -> List[Interval]:
    """Scales in [lo, hi] at which the dual face of edge uv attains power distance <= s.

    The dual face is the segment between the orthocenters of the two incident
    triangles; the minimiser is the edge orthocenter clamped to that segment.
    """
    pts = tri.pts
    w = tri.opp[(u, v)]
    x = tri.opp[(v, u)]
    if w == INF or x == INF:
        raise ValueError("edge on the hull has an unbounded dual face")
    o_left = affine_center(pts, aff, (u, v, w))
    o_right = affine_center(pts, aff, (v, u, x))
    o_mid = affine_edge_center(pts, aff, u, v)
    pu, pv = pts[u], pts[v]
    d = (pu[1] - pv[1], pv[0] - pu[0])  # left normal of u -> v
    t_m = _dot(pu, d)  # the edge orthocenter lies on line uv
    tl0, tl1 = _dot(o_left[0], d), _dot(o_left[1], d)
    tr0, tr1 = _dot(o_right[0], d), _dot(o_right[1], d)
    lo = SqScale.coerce(lo)
    hi = SqScale.coerce(hi)
    cuts = {lo.a, hi.a}
    for k0, k1 in ((tl0, tl1), (tr0, tr1)):
        if k1 != 0:
            r = (t_m - k0) / k1
            if lo < r < hi:
                cuts.add(r)
    cuts = sorted(cuts)
    if len(cuts) == 1:
        cuts = [cuts[0], cuts[0]]
    out: List[Interval] = []
    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / 2
        if t_m < tr0 + tr1 * mid:
            ctr = o_right
        elif t_m > tl0 + tl1 * mid:
            ctr = o_left
        else:
            ctr = o_mid
        out.extend(nonpositive_intervals(*excess(pts, aff, u, ctr), a, b))
    return merge(out)


def vertex_intervals(tri: Triangulation, aff: Affine, v: int, lo, hi) -> List[Interval]:
    """Scales in [lo, hi] (hi may be None) at which the clipped cell of v is nonempty."""
    m_v, c_v = aff(v)
    if m_v == 0:
        # an unweighted site lies in its own cell, at power distance 0
        return [(SqScale.coerce(lo), None if hi is None else SqScale.coerce(hi))]
    if hi is None:
        raise ValueError("a weighted vertex needs a bounded interval")
    pts = tri.pts
    pv = pts[v]
    nbrs = [u for u in tri.neighbors(v) if u != INF]
    # p_v is in its own cell iff c_v + (m_v - m_u)s <= |p_v - p_u|^2 + c_u for all u
    bound = None
    feasible = True
    for u in nbrs:
        m_u, c_u = aff(u)
        pu = pts[u]
        d2 = (pv[0] - pu[0]) ** 2 + (pv[1] - pu[1]) ** 2
        slope = m_v - m_u
        rhs = d2 + c_u - c_v
        if slope == 0:
            if rhs < 0:
                feasible = False
        else:
            cap = rhs / slope
            bound = cap if bound is None or cap < bound else bound
    out: List[Interval] = []
    lo_s, hi_s = SqScale.coerce(lo), SqScale.coerce(hi)
    if feasible:
        top = hi_s if bound is None or bound >= hi_s else SqScale(bound)
        # p_v has power distance c_v + m_v*s <= s always, so only the cell test matters
        if top >= lo_s:
            out.append((lo_s, top))
    for u in nbrs:
        out.extend(edge_intervals(tri, aff, v, u, lo, hi))
    return merge(out)
