"""Planar triangulation with a symbolic infinite vertex.

A triangle is a counterclockwise vertex triple; it is stored through its three
directed edges in ``opp``: ``opp[(u, v)] == w`` iff (u, v, w) is a triangle.
Every edge therefore has two incident triangles, those on the hull being
completed by ``INF``.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Tuple

from .greedy import DuplicatePointError
from .kernel import Point, incircle, orient2

INF = -1

Tri = Tuple[int, int, int]


def canon(t: Tri) -> Tri:
    """Rotation of a ccw triple starting at its smallest id (orientation kept)."""
    a, b, c = t
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


def skey(vs) -> Tuple[int, ...]:
    return tuple(sorted(vs))


class Triangulation:
    """Mutable triangulation over an indexable list of rational points."""

    def __init__(self, points: List[Point]):
        self.pts = points
        self.opp: Dict[Tuple[int, int], int] = {}
        self.vedge: Dict[int, int] = {}

    # -- structure -------------------------------------------------------

    def add(self, a: int, b: int, c: int) -> None:
        opp = self.opp
        opp[(a, b)] = c
        opp[(b, c)] = a
        opp[(c, a)] = b
        if a != INF:
            self.vedge[a] = b
        if b != INF:
            self.vedge[b] = c
        if c != INF:
            self.vedge[c] = a

    def remove(self, a: int, b: int, c: int) -> None:
        del self.opp[(a, b)], self.opp[(b, c)], self.opp[(c, a)]

    def has_triangle(self, t: Tri) -> bool:
        return self.opp.get((t[0], t[1])) == t[2]

    def triangles(self, finite_only: bool = False) -> Iterator[Tri]:
        for (u, v), w in self.opp.items():
            if u < v and u < w:
                if finite_only and u == INF:
                    continue
                yield (u, v, w)

    def vertices(self) -> List[int]:
        return list(self.vedge)

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u, v in self.opp:
            if u < v:
                yield (u, v)

    def neighbors(self, v: int) -> List[int]:
        """Neighbours of v in counterclockwise order (may contain INF)."""
        start = self.vedge[v]
        out = [start]
        w = self.opp[(v, start)]
        while w != start:
            out.append(w)
            w = self.opp[(v, w)]
        return out

    def star(self, v: int) -> List[Tri]:
        """Triangles incident to v, each rotated to start at v."""
        return [(v, w, self.opp[(v, w)]) for w in self.neighbors(v)]

    def is_finite(self, t) -> bool:
        return INF not in t

    # -- construction ----------------------------------------------------

    def init_box(self, corners: List[int]) -> None:
        """Start from a convex quadrilateral given counterclockwise."""
        c0, c1, c2, c3 = corners
        self.add(c0, c1, c2)
        self.add(c0, c2, c3)
        for a, b in ((c0, c1), (c1, c2), (c2, c3), (c3, c0)):
            self.add(b, a, INF)

    def split13(self, t: Tri, q: int) -> List[Tri]:
        a, b, c = t
        self.remove(a, b, c)
        new = [(a, b, q), (b, c, q), (c, a, q)]
        for x in new:
            self.add(*x)
        return new

    def split24(self, a: int, b: int, q: int) -> List[Tri]:
        """Insert q on edge (a, b), splitting both incident triangles."""
        c = self.opp[(a, b)]
        d = self.opp[(b, a)]
        self.remove(a, b, c)
        self.remove(b, a, d)
        new = [(a, q, c), (q, b, c), (b, q, d), (q, a, d)]
        for x in new:
            self.add(*x)
        return new

    def flip(self, u: int, v: int) -> Tuple[Tri, Tri]:
        """Replace edge (u, v) by the opposite diagonal; returns the two new triangles."""
        w = self.opp[(u, v)]
        x = self.opp[(v, u)]
        self.remove(u, v, w)
        self.remove(v, u, x)
        t1, t2 = (x, w, u), (w, x, v)
        self.add(*t1)
        self.add(*t2)
        return t1, t2

    def merge31(self, r: int) -> Tri:
        """Remove a degree-3 vertex, merging its star into one triangle."""
        a, b, c = self.neighbors(r)
        for t in ((r, a, b), (r, b, c), (r, c, a)):
            self.remove(*t)
        del self.vedge[r]
        self.add(a, b, c)
        return (a, b, c)

    # -- geometry --------------------------------------------------------

    def orient(self, a: int, b: int, c: int) -> int:
        p = self.pts
        return orient2(p[a], p[b], p[c])

    def contains(self, t: Tri, q: Point) -> bool:
        """Closed containment; for an infinite triangle, the open outer side of its hull edge."""
        p = self.pts
        if INF in t:
            i = t.index(INF)
            a, b = t[(i + 1) % 3], t[(i + 2) % 3]
            return orient2(p[a], p[b], q) < 0
        a, b, c = t
        return (orient2(p[a], p[b], q) >= 0 and orient2(p[b], p[c], q) >= 0
                and orient2(p[c], p[a], q) >= 0)

    def locate(self, q: Point, hint: int) -> Tri:
        """Triangle containing q by a visibility walk from vertex ``hint``.

        When q lies on an edge the lexicographically smaller of the two
        containing triangles (canonical rotation) is returned.
        """
        p = self.pts
        t = None
        for w in self.neighbors(hint):
            x = self.opp[(hint, w)]
            if w != INF and x != INF:
                t = (hint, w, x)
                break
        if t is None:
            raise ValueError("hint vertex has no finite triangle")
        opp = self.opp
        steps = 0
        limit = 4 * len(opp) + 16
        while True:
            steps += 1
            if steps > limit:
                raise RuntimeError("point location walk did not terminate")
            a, b, c = t
            moved = False
            for u, v in ((a, b), (b, c), (c, a)):
                if orient2(p[u], p[v], q) < 0:
                    w = opp[(v, u)]
                    t = (v, u, w)
                    moved = True
                    break
            if not moved:
                break
            if w == INF:
                return t
        for v in t:
            if p[v] == q:
                raise DuplicatePointError("duplicate point")
        # tie toward the smallest triangle when q is on an edge
        best = canon(t)
        a, b, c = t
        for u, v in ((a, b), (b, c), (c, a)):
            if orient2(p[u], p[v], q) == 0:
                w = opp[(v, u)]
                if w != INF:
                    best = min(best, canon((v, u, w)))
        return best

    def edge_containing(self, t: Tri, q: Point) -> Optional[Tuple[int, int]]:
        """Directed edge of finite triangle t on which q lies, if any."""
        p = self.pts
        a, b, c = t
        for u, v in ((a, b), (b, c), (c, a)):
            if orient2(p[u], p[v], q) == 0:
                return (u, v)
        return None

    def in_circle(self, a: int, b: int, c: int, d: int) -> bool:
        """True iff d strictly violates the (possibly infinite) ccw triangle (a, b, c)."""
        if d == INF:
            return False
        p = self.pts
        if INF in (a, b, c):
            i = (a, b, c).index(INF)
            u, v = (a, b, c)[(i + 1) % 3], (a, b, c)[(i + 2) % 3]
            o = orient2(p[u], p[v], p[d])
            if o != 0:
                return o > 0
            pu, pv, pd = p[u], p[v], p[d]
            dot = (pd[0] - pu[0]) * (pv[0] - pu[0]) + (pd[1] - pu[1]) * (pv[1] - pu[1])
            l2 = (pv[0] - pu[0]) ** 2 + (pv[1] - pu[1]) ** 2
            return 0 < dot < l2
        return incircle(p[a], p[b], p[c], p[d]) > 0

    def insert_delaunay(self, q: int, hint: int) -> List[Tri]:
        """Unweighted incremental insertion with Lawson flips.

        Returns the triangles incident to q afterwards.
        """
        pq = self.pts[q]
        t = self.locate(pq, hint)
        if INF in t:
            new = self.split13(t, q)
        else:
            e = self.edge_containing(t, pq)
            if e is None:
                new = self.split13(t, q)
            else:
                new = self.split24(e[0], e[1], q)
        stack = []
        for a, b, c in new:
            # rotate so q is last; the edge opposite q is (x, y)
            i = (a, b, c).index(q)
            x, y = (a, b, c)[(i + 1) % 3], (a, b, c)[(i + 2) % 3]
            stack.append((x, y))
        while stack:
            x, y = stack.pop()
            if self.opp.get((x, y)) != q:
                continue
            z = self.opp[(y, x)]
            if self.in_circle(x, y, q, z):
                self.flip(x, y)
                stack.append((x, z))
                stack.append((z, y))
        return self.star(q)
