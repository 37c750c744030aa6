"""Kinetic construction of the sparse Delaunay filtration.

Waves of points sharing a freezing time are processed from the largest
freezing time down.  Within a wave the squared scale s sweeps downward from
``(1+eps)^2 lambda^2`` to ``lambda^2`` while the regular triangulation of the
weighted points is maintained by flips taken from a max-queue keyed by s.

Births are exact.  Every live simplex on input vertices remembers the scale
at which its current combinatorial neighbourhood began; whenever that
neighbourhood changes, the slice membership over the elapsed scale interval
is solved exactly and appended to the simplex's membership interval.  The
interval must stay connected (a gap means a simplex left a slice and came
back), and its lower end is the birth.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .filtration import FiltrationEntry, FiltrationStore
from .greedy import GreedyOrder, check_distinct, greedy_permutation
from .kernel import Point, SqScale, affine_lifted_det, as_point, as_rational, mpq
from .membership import (Interval, affine_center, edge_intervals, excess,
                         triangle_intervals, vertex_intervals)
from .mesh import INF, Triangulation, canon
from .refinement import refine, steiner_limit
from .weights import WeightSchedule, build_schedule

log = logging.getLogger("sparse_delaunay")
TRACE = 5

Key = Tuple[int, ...]

# at equal scale, restore regularity before the next insertion
_LAWSON, _INSERT = 0, 1


class KineticError(RuntimeError):
    pass


class MonotonicityError(KineticError):
    """A simplex re-entered a slice after leaving it, or was emitted twice."""


@dataclass(frozen=True)
class FlipEvent:
    kind: str  # "insert" or "lawson"
    vertices: Tuple[int, ...]
    scale: mpq


@dataclass
class BuildStats:
    steiner: int = 0
    box_corners: int = 4
    flips_per_wave: List[Tuple[int, int]] = field(default_factory=list)
    separation_checks: int = 0
    separation_violations: int = 0
    separation_rejections: int = 0
    stale_events: int = 0
    removals: int = 0
    catch_up_flips: int = 0
    deferred_flips: int = 0
    flip_simplices: int = 0
    flip_simplices_kept: int = 0


@dataclass
class BuildResult:
    store: FiltrationStore
    stats: BuildStats
    intervals: Dict[Key, Interval]
    greedy: GreedyOrder
    schedule: WeightSchedule

    def slice(self, s) -> Set[Key]:
        """Simplices of dim <= 2 whose membership interval contains s."""
        s = SqScale.coerce(s)
        return {k for k, (lo, hi) in self.intervals.items()
                if lo <= s and (hi is None or s <= hi)}

    def max_slice_degree(self, s) -> int:
        deg: Dict[int, int] = {}
        for k in self.slice(s):
            if len(k) == 2:
                for v in k:
                    deg[v] = deg.get(v, 0) + 1
        return max(deg.values(), default=0)


class KineticState:
    """Mutable engine state: triangulation, weights regime, event queue, births."""

    def __init__(self, points: Sequence[Point], schedule: WeightSchedule, greedy: GreedyOrder,
                 *, orthoradius_rule: bool = False):
        self.n = n = len(points)
        self.pts: List[Point] = [as_point(p) for p in points]
        self.schedule = schedule
        self.greedy = greedy
        self.eps = schedule.epsilon
        self.orthoradius_rule = orthoradius_rule
        self.tri = Triangulation(self.pts)
        self.stats = BuildStats()
        self.frozen: Set[int] = set()
        self.frozen_lsq: Optional[mpq] = None
        self.current_s: Optional[mpq] = None
        self.s_bot: Optional[mpq] = None
        self.s_top: Optional[mpq] = None
        self.inserted: Set[int] = set()
        self.since: Dict[Key, Optional[mpq]] = {}
        self.member: Dict[Key, Interval] = {}
        self.dirty: Set[Key] = set()
        self.pending: Dict[int, Tuple[int, int, int]] = {}
        self.bucket: Dict[Tuple[int, int, int], Set[int]] = {}
        self.queue: List = []
        self.flip_records: Dict[Key, Tuple[mpq, bool, mpq]] = {}
        self.degenerate: Dict[Key, mpq] = {}
        self.degenerate_edges: Dict[Key, mpq] = {}
        self._wave_flips = 0
        self._init_box()

    # -- setup -------------------------------------------------------------

    def _init_box(self) -> None:
        pts = self.pts
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
        width = max(max(xs) - min(xs), max(ys) - min(ys))
        reach = mpq(0)
        for k in set(w for w in self.schedule.wave if w is not None):
            lam_top = (1 + self.eps) ** (k + 1)
            reach = max(reach, lam_top)
        # every input is farther than 2 (1+eps) lambda_max from every corner
        h = width + 2 * reach + 1
        corners = [(cx - h, cy - h), (cx + h, cy - h), (cx + h, cy + h), (cx - h, cy + h)]
        ids = []
        for c in corners:
            ids.append(len(pts))
            pts.append(c)
        self.box = (cx - h, cy - h, cx + h, cy + h)
        self.tri.init_box(ids)
        p0 = self.greedy.order[0]
        self.tri.insert_delaunay(p0, ids[0])
        self.inserted.add(p0)
        self.since[(p0,)] = None

    # -- regime ------------------------------------------------------------

    def aff(self, v: int) -> Tuple[int, mpq]:
        if v in self.frozen:
            return 1, -self.frozen_lsq
        return 0, mpq(0)

    # -- simplex bookkeeping -----------------------------------------------

    def _faces(self, t) -> Set[Key]:
        n = self.n
        vs = [v for v in t if 0 <= v < n]
        out = {(v,) for v in vs}
        for a, b in combinations(sorted(vs), 2):
            out.add((a, b))
        if len(vs) == 3:
            out.add(tuple(sorted(vs)))
        return out

    def _alive(self, key: Key) -> bool:
        tri = self.tri
        if len(key) == 1:
            return key[0] in self.inserted
        if len(key) == 2:
            return key in tri.opp
        a, b, c = key
        return tri.opp.get((a, b)) == c or tri.opp.get((a, c)) == b

    def _oriented(self, key: Key):
        a, b, c = key
        return (a, b, c) if self.tri.opp.get((a, b)) == c else (a, c, b)

    def _intervals(self, key: Key, lo, hi) -> List[Interval]:
        if len(key) == 1:
            return vertex_intervals(self.tri, self.aff, key[0], lo, hi)
        if len(key) == 2:
            return edge_intervals(self.tri, self.aff, key[0], key[1], lo, hi)
        return triangle_intervals(self.tri, self.aff, self._oriented(key), lo, hi)

    def _close(self, key: Key, s: mpq) -> None:
        hi = self.since.pop(key)
        if hi is not None and hi == s:
            # transient within one scale; s itself is covered by the simplices
            # alive just above and just below it
            return
        ivs = self._intervals(key, s, hi)
        if not ivs:
            return
        if len(ivs) > 1:
            raise MonotonicityError(f"simplex {key} leaves and re-enters the slice within [{s}, {hi}]")
        lo_new, hi_new = ivs[0]
        old = self.member.get(key)
        if old is None:
            self.member[key] = (lo_new, hi_new)
        elif hi_new != old[0]:
            raise MonotonicityError(f"simplex {key} re-enters the slice at {hi_new} after leaving at {old[0]}")
        else:
            self.member[key] = (lo_new, old[1])

    def _open(self, key: Key, s: mpq) -> None:
        if key in self.since:
            raise KineticError(f"simplex {key} opened twice")
        self.since[key] = s
        self.dirty.add(key)

    def _close_tris(self, tris: Iterable, s: mpq) -> Set[Key]:
        keys: Set[Key] = set()
        for t in tris:
            keys |= self._faces(t)
        for k in sorted(keys):
            self._close(k, s)
        return keys

    def _reopen(self, closed: Set[Key], new_tris: Iterable, s: mpq) -> None:
        keys = set(k for k in closed if self._alive(k))
        for t in new_tris:
            keys |= self._faces(t)
        for k in sorted(keys):
            self._open(k, s)

    # -- flip simplices ------------------------------------------------------

    def _det(self, quad, s: mpq) -> mpq:
        pts = self.pts
        aff = [self.aff(v) for v in quad]
        d0, d1 = affine_lifted_det([pts[v] for v in quad], [m for m, _ in aff], [c for _, c in aff])
        return d0 + d1 * s

    def _record_flip(self, S: Iterable[int], s: mpq, t_ccw) -> None:
        """Emit the flip simplex of a kinetic event.

        Catch-up flips, taken where the determinant is already positive (the
        static insertion cascade at the top of a wave), are construction steps
        and emit nothing.
        """
        S = tuple(S)
        key = tuple(sorted(S))
        if any(v >= self.n for v in key):
            return
        if self._det(S, s) != 0:
            self.stats.catch_up_flips += 1
            return
        if key in self.flip_records:
            raise MonotonicityError(f"flip simplex {key} emitted twice")
        ctr = affine_center(self.pts, self.aff, t_ccw)
        A, B, C = excess(self.pts, self.aff, t_ccw[0], ctr)
        ok = A + B * s + C * s * s <= 0
        self.flip_records[key] = (s, ok, self.s_top)
        self.stats.flip_simplices += 1

    # -- events --------------------------------------------------------------

    def _push(self, s: mpq, kind: int, verts: Tuple[int, ...], payload) -> None:
        heapq.heappush(self.queue, (-s, kind, tuple(sorted(verts)), payload))

    def _event_scale(self, quad) -> Optional[mpq]:
        pts = self.pts
        aff = [self.aff(v) for v in quad]
        d0, d1 = affine_lifted_det([pts[v] for v in quad], [m for m, _ in aff], [c for _, c in aff])
        s = self.current_s
        if d0 + d1 * s > 0:
            ev = s
        elif d1 < 0:
            ev = -d0 / d1
        else:
            return None
        return ev if ev > self.s_bot else None

    def _schedule_edge(self, u: int, v: int) -> None:
        opp = self.tri.opp
        w = opp.get((u, v))
        x = opp.get((v, u))
        if w is None or x is None or w == INF or x == INF:
            return
        ev = self._event_scale((u, v, w, x))
        if ev is not None:
            self._push(ev, _LAWSON, (u, v, w, x), (u, v, w, x))

    def _schedule_insert(self, q: int) -> None:
        t = self.pending[q]
        if INF in t:
            raise KineticError(f"point {q} lies outside the bounding box")
        ev = self._event_scale((t[0], t[1], t[2], q))
        if ev is None:
            raise KineticError(f"point {q} would never be inserted in its wave")
        self._push(ev, _INSERT, t + (q,), (q, t))

    def _schedule_around(self, tris) -> None:
        for a, b, c in tris:
            for u, v in ((a, b), (b, c), (c, a)):
                self._schedule_edge(u, v)

    def _relocate(self, old_tris, new_tris) -> None:
        moved: List[int] = []
        for t in old_tris:
            moved.extend(self.bucket.pop(canon(t), ()))
        for q in sorted(moved):
            pq = self.pts[q]
            home = min(canon(t) for t in new_tris if self.tri.contains(t, pq))
            self.pending[q] = home
            self.bucket.setdefault(home, set()).add(q)
            self._schedule_insert(q)

    def _do_insert(self, q: int, s: mpq) -> None:
        tri = self.tri
        t = self.pending.pop(q)
        self.bucket[t].discard(q)
        e = tri.edge_containing(t, self.pts[q])
        if e is None:
            old = [t]
        else:
            a, b = e
            old = [(a, b, tri.opp[(a, b)]), (b, a, tri.opp[(b, a)])]
        closed = self._close_tris(old, s)
        if e is None:
            self._record_flip(t + (q,), s, t)
        else:
            for o in old:
                self._record_flip(o + (q,), s, o)
            a, b = e
            ab = tuple(sorted(e))
            member_at_s = ((ab in self.member and self.member[ab][0] == s)
                           or self.degenerate_edges.get(ab) == s)
            if q < self.n and member_at_s:
                # lifted a, b, q are collinear: all three cells share one bisector line,
                # so both halves of ab are members at s even if they vanish at once
                self.degenerate[tuple(sorted((a, b, q)))] = s
                for f in ((a, q), (b, q)):
                    self.degenerate_edges.setdefault(tuple(sorted(f)), s)
        new = tri.split13(t, q) if e is None else tri.split24(e[0], e[1], q)
        self.inserted.add(q)
        self._reopen(closed, new, s)
        log.log(TRACE, "insert %d at s=%s", q, s)
        self._relocate(old, new)
        self._schedule_around(new)

    def _do_lawson(self, quad, s: mpq) -> None:
        u, v, w, x = quad
        tri = self.tri
        ou, ov = tri.orient(x, w, u), tri.orient(w, x, v)
        if ou <= 0 or ov <= 0:
            r = u if ou < 0 else v if ov < 0 else None
            if r is not None and len(tri.neighbors(r)) == 3:
                self._do_remove(r, s)
                return True
            # reflex quad: wait until neighbouring flips make it convex
            self.stats.deferred_flips += 1
            return False
        old = [(u, v, w), (v, u, x)]
        closed = self._close_tris(old, s)
        self._record_flip((u, v, w, x), s, (u, v, w))
        new = tri.flip(u, v)
        self._reopen(closed, new, s)
        log.log(TRACE, "flip %d-%d -> %d-%d at s=%s", u, v, w, x, s)
        self._relocate(old, new)
        self._schedule_around(new)
        return True

    def _do_remove(self, r: int, s: mpq) -> None:
        """(3,1) flip: a frozen degree-3 vertex whose power cell vanished goes back to pending.

        Happens only in the catch-up cascade at the top of a wave, where a
        later insertion can swallow an earlier frozen point; below the top,
        frozen cells only grow.
        """
        if r not in self.frozen:
            raise KineticError(f"unweighted vertex {r} would become redundant at s={s}")
        tri = self.tri
        a, b, c = tri.neighbors(r)
        old = [(r, a, b), (r, b, c), (r, c, a)]
        closed = self._close_tris(old, s)
        self._record_flip((a, b, c, r), s, (a, b, c))
        new = [tri.merge31(r)]
        self.inserted.discard(r)
        self._reopen(closed, new, s)
        self.stats.removals += 1
        log.log(TRACE, "remove %d at s=%s", r, s)
        self._relocate(old, new)
        home = canon((a, b, c))
        self.pending[r] = home
        self.bucket.setdefault(home, set()).add(r)
        self._schedule_insert(r)
        self._schedule_around(new)

    def check_regular(self) -> None:
        """Raise unless every interior edge is locally regular at the current scale."""
        opp = self.tri.opp
        for (u, v), w in opp.items():
            x = opp[(v, u)]
            if u > v or INF in (u, v, w, x):
                continue
            pts = self.pts
            aff = [self.aff(t) for t in (u, v, w, x)]
            d0, d1 = affine_lifted_det([pts[t] for t in (u, v, w, x)],
                                       [m for m, _ in aff], [c for _, c in aff])
            if d0 + d1 * self.current_s > 0:
                raise KineticError(f"edge {u}-{v} is not locally regular at s={self.current_s}")

    # -- waves ---------------------------------------------------------------

    def _hint(self, q: int) -> int:
        g = self.greedy
        rank = g.rank
        r = rank[q]
        while True:
            r = g.pred[r]
            v = g.order[r]
            if v in self.inserted:
                return v

    def locate(self, q: Point, hint: int):
        return self.tri.locate(as_point(q), hint)

    def run_wave(self, F: Sequence[int], s_top, s_bot) -> List[FiltrationEntry]:
        """Sweep one wave from s_top down to s_bot; returns the flip simplices it emitted."""
        s_top, s_bot = as_rational(s_top), as_rational(s_bot)
        before = set(self.flip_records)
        self.s_top, self.s_bot = s_top, s_bot
        self.current_s = s_top
        self._wave_flips = 0
        if F:
            lams = {self.schedule.lambda_sq[q] for q in F}
            if len(lams) != 1 or next(iter(lams)) != s_bot:
                raise KineticError("wave points must share lambda^2 equal to the wave bottom")
            self.frozen = set(F)
            self.frozen_lsq = s_bot
            rank = self.greedy.rank
            for q in sorted(F, key=lambda i: rank[i]):
                t = canon(self.tri.locate(self.pts[q], self._hint(q)))
                self.pending[q] = t
                self.bucket.setdefault(t, set()).add(q)
            for q in sorted(F):
                self._schedule_insert(q)
        while self.queue:
            neg, kind, _, payload = heapq.heappop(self.queue)
            s = -neg
            if s > self.current_s:
                raise KineticError("event queue went backwards")
            if kind == _INSERT:
                q, t = payload
                if self.pending.get(q) != t or not self.tri.has_triangle(t):
                    self.stats.stale_events += 1
                    continue
                self.current_s = s
                self._do_insert(q, s)
            else:
                u, v, w, x = payload
                if self.tri.opp.get((u, v)) != w or self.tri.opp.get((v, u)) != x:
                    self.stats.stale_events += 1
                    continue
                self.current_s = s
                if not self._do_lawson(payload, s):
                    continue
            self._wave_flips += 1
        if self.pending:
            raise KineticError(f"points left uninserted at wave end: {sorted(self.pending)}")
        self.bucket.clear()
        self.current_s = s_bot
        self.check_regular()
        # close everything whose neighbourhood saw weights, then drop the weights
        self.current_s = s_bot
        touched = sorted(k for k in self.dirty if k in self.since)
        for k in touched:
            self._close(k, s_bot)
        self.frozen = set()
        self.frozen_lsq = None
        for k in touched:
            self._open(k, s_bot)
        self.dirty.clear()
        self.stats.flips_per_wave.append((len(F), self._wave_flips))
        return [FiltrationEntry(k, SqScale(self.flip_records[k][0]))
                for k in sorted(set(self.flip_records) - before)]

    def refine(self, s_bot) -> int:
        """Voronoi refinement at the end of a wave with bottom scale s_bot."""
        s_bot = as_rational(s_bot)
        tri = self.tri

        def insert(z: int, hint: int) -> None:
            pz = self.pts[z]
            start = canon(tri.locate(pz, hint))
            cavity = {start}
            stack = [start]
            while stack:
                a, b, c = stack.pop()
                for u, v in ((a, b), (b, c), (c, a)):
                    w = tri.opp[(v, u)]
                    nb = canon((v, u, w))
                    if nb not in cavity and tri.in_circle(v, u, w, z):
                        cavity.add(nb)
                        stack.append(nb)
            # the nearest vertex to z after insertion is a cavity vertex
            self.stats.separation_checks += 1
            for t in cavity:
                for u in t:
                    if u == INF:
                        continue
                    pu = self.pts[u]
                    if not (pz[0] - pu[0]) ** 2 + (pz[1] - pu[1]) ** 2 > 4 * s_bot:
                        self.stats.separation_rejections += 1
                        return False
            closed = self._close_tris(cavity, s_bot)
            new = tri.insert_delaunay(z, hint)
            self._reopen(closed, new, s_bot)
            for u in tri.neighbors(z):
                if u == INF:
                    continue
                pu = self.pts[u]
                if not (pz[0] - pu[0]) ** 2 + (pz[1] - pu[1]) ** 2 > 4 * s_bot:
                    self.stats.separation_violations += 1
            return True

        added = refine(tri, self.eps, min_far_sq=4 * s_bot, domain=self.box, insert=insert,
                       limit=max(0, self._steiner_cap() - self.stats.steiner))
        self.stats.steiner += added
        self.dirty.clear()
        return added

    def _steiner_cap(self) -> int:
        radii = [r for r in self.greedy.radii_sq if r is not None]
        if not radii:
            return 0
        spread = math.sqrt(float(max(radii)) / float(min(radii)))
        return steiner_limit(self.n, spread)

    def finish(self) -> None:
        """Close every live simplex down to s = 0 in the unweighted regime."""
        self.current_s = mpq(0)
        for k in sorted(self.since, key=lambda k: (len(k), k)):
            self._close(k, mpq(0))

    def birth_time(self, simplex: Sequence[int]) -> Optional[SqScale]:
        """Smallest s in the current wave range at which simplex is in the slice, assuming
        the current structure persists; None if it is never a member there."""
        key = tuple(sorted(simplex))
        if len(key) == 1:
            return SqScale(0)
        if not self._alive(key):
            raise KineticError(f"simplex {key} is not in the current triangulation")
        lo = self.frozen_lsq if self.frozen else mpq(0)
        ivs = self._intervals(key, lo, self.current_s)
        return ivs[0][0] if ivs else None

    # -- output --------------------------------------------------------------

    def entries(self) -> List[FiltrationEntry]:
        births: Dict[Key, SqScale] = {k: lo for k, (lo, _) in self.member.items()}
        for k, s in self.degenerate_edges.items():
            if k not in births:
                births[k] = SqScale(s)
        for k, s in self.degenerate.items():
            if k not in births:
                births[k] = SqScale(s)
        for k, (s, ok, s_top) in sorted(self.flip_records.items()):
            if self.orthoradius_rule:
                if ok:
                    births[k] = SqScale(s)
                    self.stats.flip_simplices_kept += 1
                continue
            faces = [tuple(f) for f in combinations(k, 3)]
            if all(f in births for f in faces):
                b = max([SqScale(s)] + [births[f] for f in faces])
                if b <= s_top:
                    births[k] = b
                    self.stats.flip_simplices_kept += 1
        for k, b in births.items():
            if any(v >= self.n for v in k):
                raise KineticError(f"Steiner vertex in emitted simplex {k}")
        return [FiltrationEntry(k, b) for k, b in births.items()]


def build(points, eps, *, start: int = 0, orthoradius_rule: bool = False) -> BuildResult:
    """Full construction with diagnostics."""
    pts = [as_point(p) for p in points]
    if not pts:
        raise ValueError("at least one point is required")
    check_distinct(pts)
    eps = as_rational(eps)
    greedy = greedy_permutation(pts, start)
    schedule = build_schedule(greedy, eps)
    state = KineticState(pts, schedule, greedy, orthoradius_rule=orthoradius_rule)
    waves = schedule.waves()
    for i, (k, members) in enumerate(waves):
        s_bot = schedule.lambda_sq[members[0]]
        s_top = (1 + eps) ** 2 * s_bot
        state.run_wave(members, s_top, s_bot)
        if i + 1 < len(waves):
            state.refine(s_bot)
    state.finish()
    store = FiltrationStore(state.entries(), n=len(pts), eps=eps)
    return BuildResult(store, state.stats, dict(state.member), greedy, schedule)


def build_filtration(points, eps, *, orthoradius_rule: bool = False) -> FiltrationStore:
    return build(points, eps, orthoradius_rule=orthoradius_rule).store
