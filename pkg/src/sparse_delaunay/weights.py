"""Freezing times, weight functions and wave bucketing."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .greedy import GreedyOrder
from .kernel import UNFROZEN, WeightClass, as_rational, mpq


def _check_eps(eps) -> mpq:
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return eps


def freezing_time_sq(r_sq, eps) -> Tuple[mpq, int]:
    """Squared freezing time and wave index for a squared insertion radius.

    Returns ``((1+eps)**(2k), k)`` with k the smallest integer such that
    ``(1+eps)**k >= (1+eps)/eps * r``.
    """
    r_sq = as_rational(r_sq)
    eps = _check_eps(eps)
    if r_sq <= 0:
        raise ValueError("insertion radius must be positive")
    base_sq = (1 + eps) ** 2
    target = ((1 + eps) / eps) ** 2 * r_sq
    k = math.ceil(math.log(float(target)) / math.log(float(base_sq)))
    # the float guess can be off by one either way
    while base_sq ** k < target:
        k += 1
    while base_sq ** (k - 1) >= target:
        k -= 1
    return base_sq ** k, k


def freezing_time(r, eps) -> Tuple[mpq, mpq, int]:
    """(lambda, lambda**2, k) for a rational insertion radius ``r``."""
    r = as_rational(r)
    if r <= 0:
        raise ValueError("insertion radius must be positive")
    lam_sq, k = freezing_time_sq(r * r, eps)
    return (1 + as_rational(eps)) ** k, lam_sq, k


def weight_sq(lambda_sq, s) -> mpq:
    """Squared weight max(0, s - lambda**2)."""
    d = as_rational(s) - as_rational(lambda_sq)
    return d if d > 0 else mpq(0)


def ball_radius_sq(lambda_sq, s) -> mpq:
    """Squared radius of the clipping ball, min(s, lambda**2)."""
    s, lambda_sq = as_rational(s), as_rational(lambda_sq)
    return s if s < lambda_sq else lambda_sq


@dataclass(frozen=True)
class WeightSchedule:
    """Per-point freezing data indexed by input index.

    ``lambda_sq[i] is None`` for the first greedy point, which never freezes.
    """

    epsilon: mpq
    lambda_sq: List[Optional[mpq]]
    wave: List[Optional[int]]

    @property
    def lam(self) -> List[float]:
        return [math.inf if l is None else math.sqrt(float(l)) for l in self.lambda_sq]

    def weight_class(self, i: int) -> WeightClass:
        l = self.lambda_sq[i]
        return UNFROZEN if l is None else WeightClass(l)

    def weight_sq(self, i: int, s) -> mpq:
        l = self.lambda_sq[i]
        return mpq(0) if l is None else weight_sq(l, s)

    def ball_radius_sq(self, i: int, s) -> mpq:
        l = self.lambda_sq[i]
        return as_rational(s) if l is None else ball_radius_sq(l, s)

    def waves(self) -> List[Tuple[int, List[int]]]:
        """(k, input indices) pairs, largest freezing time first."""
        groups: Dict[int, List[int]] = {}
        for i, k in enumerate(self.wave):
            if k is not None:
                groups.setdefault(k, []).append(i)
        return [(k, groups[k]) for k in sorted(groups, reverse=True)]


def build_schedule(greedy: GreedyOrder, eps) -> WeightSchedule:
    eps = _check_eps(eps)
    n = len(greedy)
    lambda_sq: List[Optional[mpq]] = [None] * n
    wave: List[Optional[int]] = [None] * n
    for rank, idx in enumerate(greedy.order):
        r_sq = greedy.radii_sq[rank]
        if r_sq is None:
            continue
        lambda_sq[idx], wave[idx] = freezing_time_sq(r_sq, eps)
    return WeightSchedule(eps, lambda_sq, wave)
