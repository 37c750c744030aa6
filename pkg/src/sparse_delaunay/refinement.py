"""Voronoi refinement: insert far Voronoi corners until every bounded cell is well spaced."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, List, Optional

from .kernel import Point, as_rational, mpq, power_center
from .mesh import INF, Triangulation


class RefinementLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class AspectReport:
    vertex: int
    nn_sq: mpq
    far_sq: Optional[mpq]  # None for an unbounded cell
    far_corner: Optional[Point]

    @property
    def aspect_sq(self):
        """far_sq / nn_sq, or math.inf for an unbounded cell."""
        if self.far_sq is None:
            return math.inf
        return self.far_sq / self.nn_sq


def aspect(tri: Triangulation, v: int, cache: Optional[dict] = None) -> AspectReport:
    """Aspect of the Voronoi cell of v in the current unweighted triangulation.

    ``cache`` maps sorted corner coordinates to circumcenters.
    """
    pts = tri.pts
    pv = pts[v]
    nn = None
    far = None
    corner = None
    zero = mpq(0)
    for a, b, c in tri.star(v):
        if b != INF:
            pb = pts[b]
            d2 = (pb[0] - pv[0]) ** 2 + (pb[1] - pv[1]) ** 2
            nn = d2 if nn is None or d2 < nn else nn
        if far is False:
            continue
        if INF in (b, c):
            far = False
            continue
        if cache is None:
            x = power_center([pv, pts[b], pts[c]], [zero, zero, zero])
        else:
            key = tuple(sorted((pv, pts[b], pts[c])))
            x = cache.get(key)
            if x is None:
                x = cache[key] = power_center(key, [zero, zero, zero])
        d2 = (x[0] - pv[0]) ** 2 + (x[1] - pv[1]) ** 2
        if far is None or d2 > far or (d2 == far and x < corner):
            far, corner = d2, x
    if far is False:
        return AspectReport(v, nn, None, None)
    return AspectReport(v, nn, far, corner)


def snap(x: Point, nn_sq) -> Point:
    """Round x to a dyadic grid of step at most sqrt(nn_sq)/64.

    Steiner positions are free; exact circumcenters of circumcenters would
    otherwise grow in bit length with every refinement round.
    """
    k = math.floor(math.log2(math.sqrt(float(nn_sq)) / 64))
    h = mpq(2) ** k
    while h * h * 4096 > nn_sq:
        h /= 2
    return (mpq(round(x[0] / h)) * h, mpq(round(x[1] / h)) * h)


def steiner_limit(n: int, spread: float, c: int = 64) -> int:
    """Guard on the Steiner count: C * n * log2(spread), with C = 64."""
    return int(c * max(n, 1) * max(1.0, math.log2(max(spread, 2.0)))) + 64


def refine(tri: Triangulation, eps, *, min_far_sq=None, domain=None,
           insert: Optional[Callable[[int, int], None]] = None,
           limit: Optional[int] = None) -> int:
    """Insert (snapped) far corners of cells with aspect > 2/eps; returns the number inserted.

    Cells touching the infinite vertex are skipped.  A corner is inserted only
    if its squared distance to the cell's site exceeds ``min_far_sq``; the
    kinetic engine uses this to keep Steiner points away from later clipped
    cells.  Corners outside ``domain = (xmin, ymin, xmax, ymax)`` are skipped,
    which keeps the hull fixed.  ``insert(z, hint)`` inserts the new vertex z (already appended to
    ``tri.pts``) and may decline by returning False; it defaults to plain
    Delaunay insertion.
    """
    eps = as_rational(eps)
    tau_sq = (2 / eps) ** 2
    if insert is None:
        insert = lambda z, hint: tri.insert_delaunay(z, hint)  # noqa: E731
    heap: List = []
    centers: dict = {}

    def push(v):
        rep = aspect(tri, v, centers)
        if rep.far_sq is not None and rep.far_sq > tau_sq * rep.nn_sq:
            heapq.heappush(heap, (-float(rep.aspect_sq), v))

    for v in sorted(tri.vertices()):
        push(v)
    added = 0
    while heap:
        key, v = heapq.heappop(heap)
        rep = aspect(tri, v, centers)
        if rep.far_sq is None or not rep.far_sq > tau_sq * rep.nn_sq:
            continue
        if -key != float(rep.aspect_sq):
            heapq.heappush(heap, (-float(rep.aspect_sq), v))
            continue
        x = snap(rep.far_corner, rep.nn_sq)
        if domain is not None and not (domain[0] < x[0] < domain[2] and domain[1] < x[1] < domain[3]):
            continue
        pv = tri.pts[v]
        if min_far_sq is not None and not (x[0] - pv[0]) ** 2 + (x[1] - pv[1]) ** 2 > min_far_sq:
            continue
        if limit is not None and added >= limit:
            raise RefinementLimitError(
                f"Steiner count exceeded {limit}; aspect^2 of vertex {v} is {float(rep.aspect_sq):.6g}")
        z = len(tri.pts)
        tri.pts.append(x)
        if insert(z, v) is False:
            tri.pts.pop()
            continue
        added += 1
        for u in [z] + [u for u in tri.neighbors(z) if u != INF]:
            push(u)
    return added
