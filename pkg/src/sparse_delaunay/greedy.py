"""Greedy (farthest-point) permutations with insertion radii and nearest predecessors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .kernel import Point, as_point, mpq


class DuplicatePointError(ValueError):
    pass


@dataclass(frozen=True)
class GreedyOrder:
    """A greedy permutation.

    ``order[i]`` is the input index of the point of rank ``i``.  ``radii_sq[i]``
    is its squared insertion radius (``None`` for rank 0, whose radius is
    infinite) and ``pred[i]`` the rank of its nearest predecessor.
    """

    order: List[int]
    radii_sq: List[Optional[mpq]]
    pred: List[Optional[int]]

    def __len__(self):
        return len(self.order)

    @property
    def radii(self) -> List[float]:
        return [math.inf if r is None else math.sqrt(float(r)) for r in self.radii_sq]

    @property
    def rank(self) -> List[int]:
        out = [0] * len(self.order)
        for i, idx in enumerate(self.order):
            out[idx] = i
        return out


def check_distinct(points: Sequence[Point]) -> None:
    if len(set(points)) != len(points):
        raise DuplicatePointError("duplicate input points")


def greedy_permutation(points, start: int = 0) -> GreedyOrder:
    """Quadratic farthest-point traversal starting from ``points[start]``.

    Ties for the farthest point go to the smallest input index; ties for the
    nearest predecessor go to the earliest rank.
    """
    pts = [as_point(p) for p in points]
    n = len(pts)
    if n == 0:
        raise ValueError("empty point set")
    if not 0 <= start < n:
        raise IndexError("start index out of range")
    check_distinct(pts)

    order = [start]
    radii_sq: List[Optional[mpq]] = [None]
    pred: List[Optional[int]] = [None]
    # for each input index: squared distance to the current prefix and the rank realising it
    dist = [None] * n
    near = [0] * n
    done = [False] * n
    done[start] = True
    sx, sy = pts[start]
    for j in range(n):
        if not done[j]:
            dx, dy = pts[j][0] - sx, pts[j][1] - sy
            dist[j] = dx * dx + dy * dy
    for rank in range(1, n):
        best = -1
        for j in range(n):
            if not done[j] and (best < 0 or dist[j] > dist[best]):
                best = j
        done[best] = True
        order.append(best)
        radii_sq.append(dist[best])
        pred.append(near[best])
        bx, by = pts[best]
        for j in range(n):
            if not done[j]:
                dx, dy = pts[j][0] - bx, pts[j][1] - by
                d = dx * dx + dy * dy
                if d < dist[j]:
                    dist[j] = d
                    near[j] = rank
    return GreedyOrder(order, radii_sq, pred)
