"""Exact planar predicates and scale-parametric root solving.

Coordinates are ``gmpy2.mpq`` rationals.  The global parameter is the squared
scale ``s = alpha**2``; within a wave every squared weight is affine in ``s``
so flip times are rational.  Values that come out of minimising a quadratic
over ``s`` (births and deaths of simplices) are quadratic surds and are
carried exactly by :class:`SqScale`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import gmpy2
import mpmath
from gmpy2 import mpq

Q = mpq
Point = Tuple[mpq, mpq]

_ZERO = mpq(0)


class DegenerateError(ValueError):
    pass


class TwoClassError(ValueError):
    pass


def as_rational(x) -> mpq:
    """Convert ints, strings (``"3/4"``), Fractions or mpq to ``mpq``."""
    if isinstance(x, type(_ZERO)):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        return mpq(Fraction(x))
    return mpq(x)


def as_point(p) -> Point:
    return (as_rational(p[0]), as_rational(p[1]))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightClass:
    """``lambda_sq is None`` means Unfrozen (weight zero at every scale)."""

    lambda_sq: Optional[mpq] = None

    @property
    def frozen(self) -> bool:
        return self.lambda_sq is not None

    def weight_sq(self, s) -> mpq:
        if self.lambda_sq is None:
            return _ZERO
        d = as_rational(s) - self.lambda_sq
        return d if d > 0 else _ZERO

    def affine(self) -> Tuple[int, mpq]:
        """(slope, offset) of the squared weight as a function of s, valid for s >= lambda_sq."""
        if self.lambda_sq is None:
            return 0, _ZERO
        return 1, -self.lambda_sq


UNFROZEN = WeightClass()


def frozen(lambda_sq) -> WeightClass:
    return WeightClass(as_rational(lambda_sq))


# ---------------------------------------------------------------------------
# predicates


def orient2(a: Point, b: Point, c: Point) -> int:
    """Sign of det(b - a, c - a); +1 for a counterclockwise turn."""
    return _sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def orient_value(a: Point, b: Point, c: Point) -> mpq:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def lifted_det(a: Point, b: Point, c: Point, q: Point, la, lb, lc, lq) -> mpq:
    """Lifted determinant with lift values ``l = |p|^2 + w^2`` given explicitly.

    Positive iff, for counterclockwise (a, b, c), the lifted q lies below the
    plane through the lifted a, b, c.
    """
    adx, ady = a[0] - q[0], a[1] - q[1]
    bdx, bdy = b[0] - q[0], b[1] - q[1]
    cdx, cdy = c[0] - q[0], c[1] - q[1]
    # the lift column differs from |a - q|^2 by a combination of the first two
    # columns, so the determinant is the usual incircle one
    al = la - lq - 2 * (q[0] * adx + q[1] * ady)
    bl = lb - lq - 2 * (q[0] * bdx + q[1] * bdy)
    cl = lc - lq - 2 * (q[0] * cdx + q[1] * cdy)
    return (al * (bdx * cdy - cdx * bdy)
            + bl * (cdx * ady - adx * cdy)
            + cl * (adx * bdy - bdx * ady))


def _norm2(p: Point) -> mpq:
    return p[0] * p[0] + p[1] * p[1]


def incircle(a: Point, b: Point, c: Point, q: Point) -> int:
    """Unweighted incircle sign; +1 iff q is strictly inside the circle of ccw (a, b, c)."""
    return _sign(lifted_det(a, b, c, q, _norm2(a), _norm2(b), _norm2(c), _norm2(q)))


def power_incircle(a, b, c, q, s) -> int:
    """Sign of the weighted incircle test at squared scale ``s``.

    Each argument is a ``(point, WeightClass)`` pair.  +1 means q violates the
    orthoball of the counterclockwise triangle (a, b, c), i.e. a flip is due.
    """
    s = as_rational(s)
    (pa, ca), (pb, cb), (pc, cc), (pq, cq) = a, b, c, q
    if orient2(pa, pb, pc) == 0:
        raise DegenerateError("degenerate triangle")
    return _sign(lifted_det(
        pa, pb, pc, pq,
        _norm2(pa) + ca.weight_sq(s), _norm2(pb) + cb.weight_sq(s),
        _norm2(pc) + cc.weight_sq(s), _norm2(pq) + cq.weight_sq(s)))


def affine_lifted_det(pts: Sequence[Point], slopes: Sequence[int], offsets: Sequence[mpq]):
    """Coefficients (D0, D1) of the lifted determinant ``D0 + D1*s`` for affine squared weights."""
    a, b, c, q = pts
    l0 = [_norm2(p) + o for p, o in zip(pts, offsets)]
    d0 = lifted_det(a, b, c, q, *l0)
    if slopes[0] == slopes[1] == slopes[2] == slopes[3]:
        return d0, _ZERO
    # derivative: same determinant with lift column replaced by the slopes
    m = slopes
    adx, ady = a[0] - q[0], a[1] - q[1]
    bdx, bdy = b[0] - q[0], b[1] - q[1]
    cdx, cdy = c[0] - q[0], c[1] - q[1]
    d1 = ((m[0] - m[3]) * (bdx * cdy - cdx * bdy)
          + (m[1] - m[3]) * (cdx * ady - adx * cdy)
          + (m[2] - m[3]) * (adx * bdy - bdx * ady))
    return d0, mpq(d1)


def flip_scale(a, b, c, q) -> Optional[mpq]:
    """Squared scale at which the weighted incircle determinant of (a, b, c; q) vanishes.

    Arguments are ``(point, WeightClass)`` pairs.  Returns ``None`` when the
    determinant does not depend on s, or when its root lies below the freezing
    time of a frozen participant (the squared weight would be negative).
    """
    classes = [a[1], b[1], c[1], q[1]]
    lams = {wc.lambda_sq for wc in classes if wc.frozen}
    if len(lams) > 1:
        raise TwoClassError("not two-class")
    pts = [a[0], b[0], c[0], q[0]]
    if orient2(pts[0], pts[1], pts[2]) == 0:
        raise DegenerateError("degenerate triangle")
    aff = [wc.affine() for wc in classes]
    d0, d1 = affine_lifted_det(pts, [m for m, _ in aff], [o for _, o in aff])
    if d1 == 0:
        return None
    root = -d0 / d1
    if lams and root < next(iter(lams)):
        return None
    return root


def orthoball(simplex, s) -> Tuple[Point, mpq]:
    """Orthocenter and squared orthoradius of 1 to 3 weighted points at squared scale s.

    The orthocenter is the point of the affine hull with equal power distance
    to every member; it minimises the maximum power distance over that hull.
    """
    s = as_rational(s)
    pts = [as_point(p) for p, _ in simplex]
    w2 = [wc.weight_sq(s) for _, wc in simplex]
    if len(pts) == 1:
        return pts[0], w2[0]
    if len(pts) == 2:
        u, v = pts
        dx, dy = v[0] - u[0], v[1] - u[1]
        l2 = dx * dx + dy * dy
        if l2 == 0:
            raise DegenerateError("degenerate simplex")
        t = (l2 + w2[1] - w2[0]) / (2 * l2)
        center = (u[0] + t * dx, u[1] + t * dy)
        return center, t * t * l2 + w2[0]
    if len(pts) == 3:
        center = power_center(pts, w2)
        dx, dy = center[0] - pts[0][0], center[1] - pts[0][1]
        return center, dx * dx + dy * dy + w2[0]
    raise ValueError("orthoball expects 1 to 3 points")


def power_center(pts: Sequence[Point], w2: Sequence[mpq]) -> Point:
    """Point of equal power distance to three weighted points (additive weights)."""
    a, b, c = pts
    bx, by = b[0] - a[0], b[1] - a[1]
    cx, cy = c[0] - a[0], c[1] - a[1]
    det = bx * cy - by * cx
    if det == 0:
        raise DegenerateError("degenerate simplex")
    # 2 x.(b-a) = |b|^2 - |a|^2 + wb - wa, written relative to a
    rb = bx * bx + by * by + w2[1] - w2[0]
    rc = cx * cx + cy * cy + w2[2] - w2[0]
    ux = (rb * cy - rc * by) / (2 * det)
    uy = (bx * rc - cx * rb) / (2 * det)
    return (a[0] + ux, a[1] + uy)


# ---------------------------------------------------------------------------
# exact quadratic surds


def _sign_surd(a, b, r) -> int:
    """Sign of a + b*sqrt(r) for rationals a, b and r >= 0."""
    sa, sb = _sign(a), _sign(b) if r != 0 else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    d = a * a - b * b * r
    return sa if d > 0 else (sb if d < 0 else 0)


def _sign_surd2(a, b, r1, c, r2) -> int:
    """Sign of a + b*sqrt(r1) + c*sqrt(r2)."""
    if r1 == r2 or b == 0 or c == 0 or r1 == 0 or r2 == 0:
        if b == 0 or r1 == 0:
            return _sign_surd(a, c, r2)
        if c == 0 or r2 == 0:
            return _sign_surd(a, b, r1)
        return _sign_surd(a, b + c, r1)
    # sign of the irrational part b*sqrt(r1) + c*sqrt(r2)
    sb, sc = _sign(b), _sign(c)
    if sb == sc:
        t = sb
    else:
        d = b * b * r1 - c * c * r2
        t = sb if d > 0 else (sc if d < 0 else 0)
    sa = _sign(a)
    if sa == 0 or t == 0 or sa == t:
        return t if sa == 0 else sa
    u = _sign_surd(a * a - b * b * r1 - c * c * r2, -2 * b * c, r1 * r2)
    return sa if u > 0 else (t if u < 0 else 0)


_SQRT_OF = {p * p: p for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)}
_SMALL_SQUARES = tuple(_SQRT_OF)


class SqScale:
    """Exact squared scale ``a + b*sqrt(r)`` with rational a, b, r.

    Rational values have ``b == r == 0``.  Instances are immutable and totally
    ordered; they compare with plain numbers as well.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a=0, b=0, r=0):
        a, b, r = as_rational(a), as_rational(b), as_rational(r)
        if b == 0 or r == 0:
            b = r = _ZERO
        else:
            if r < 0:
                raise ValueError("negative radicand")
            # integer radicand: sqrt(p/q) = sqrt(p*q)/q
            num, den = r.numerator, r.denominator
            ri = num * den
            b = b / den
            for f in _SMALL_SQUARES:
                while ri % f == 0 and ri > f:
                    ri //= f
                    b *= _SQRT_OF[f]
            root, exact = gmpy2.iroot(ri, 2)
            if exact:
                a, b, r = a + b * root, _ZERO, _ZERO
            else:
                r = mpq(ri)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "r", r)

    def __setattr__(self, name, value):
        raise AttributeError("SqScale is immutable")

    @classmethod
    def coerce(cls, x) -> "SqScale":
        return x if isinstance(x, SqScale) else cls(x)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> mpq:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        return _sign_surd(self.a, self.b, self.r)

    def _cmp(self, other) -> int:
        if not isinstance(other, SqScale):
            try:
                other = SqScale(other)
            except (TypeError, ValueError):
                return NotImplemented
        return _sign_surd2(self.a - other.a, self.b, self.r, -other.b, other.r)

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __hash__(self):
        # equal surds share the rational part because 1 and sqrt(r) are independent
        return hash(self.a)

    def to_mpf(self, prec: int = 128):
        with mpmath.workprec(prec):
            v = mpmath.mpf(int(self.a.numerator)) / int(self.a.denominator)
            if self.b != 0:
                v += (mpmath.mpf(int(self.b.numerator)) / int(self.b.denominator)
                      * mpmath.sqrt(int(self.r)))
            return v

    def __float__(self):
        if self.b == 0:
            return float(self.a)
        return float(self.to_mpf())

    def alpha(self, prec: int = 128) -> float:
        """Unsquared scale sqrt(s) as a float."""
        with mpmath.workprec(prec):
            v = self.to_mpf(prec)
            return float(mpmath.sqrt(v if v > 0 else 0))

    def __str__(self):
        if self.b == 0:
            return f"{self.a.numerator}/{self.a.denominator}"
        return (f"{self.a.numerator}/{self.a.denominator}"
                f"+{self.b.numerator}/{self.b.denominator}*sqrt({self.r.numerator})")

    def __repr__(self):
        return f"SqScale({self})"

    @classmethod
    def parse(cls, text: str) -> "SqScale":
        text = text.strip()
        if "*sqrt(" in text:
            head, rad = text.split("*sqrt(")
            if not rad.endswith(")"):
                raise ValueError(f"bad surd {text!r}")
            a, b = head.split("+", 1) if not head.startswith("-") else _split_signed(head)
            return cls(mpq(a), mpq(b), mpq(rad[:-1]))
        return cls(mpq(text))

    def evaluate_quadratic_sign(self, A, B, C) -> int:
        """Sign of A + B*x + C*x**2 at x = self."""
        a, b, r = self.a, self.b, self.r
        return _sign_surd(A + B * a + C * (a * a + b * b * r), B * b + 2 * C * a * b, r)


def _split_signed(head: str):
    i = head.index("+", 1)
    return head[:i], head[i + 1:]


INF_SCALE = None  # sentinel used for "never ends"


def quadratic_roots(A, B, C):
    """Sorted real roots of A + B*s + C*s**2 as SqScale values (empty if none or identically 0)."""
    if C == 0:
        if B == 0:
            return []
        return [SqScale(-A / B)]
    D = B * B - 4 * A * C
    if D < 0:
        return []
    a0 = -B / (2 * C)
    if D == 0:
        return [SqScale(a0)]
    k = 1 / (2 * abs(C))
    return [SqScale(a0, -k, D), SqScale(a0, k, D)]


def rational_between(x: SqScale, y: SqScale) -> mpq:
    """Some rational strictly between x < y."""
    prec = 64
    while True:
        with mpmath.workprec(prec):
            m = (x.to_mpf(prec) + y.to_mpf(prec)) / 2
            man, exp = mpmath.mpf(m).man_exp
            cand = mpq(int(man)) * (mpq(2) ** int(exp)) if exp >= 0 else mpq(int(man), 2 ** (-int(exp)))
        if x < cand < y:
            return cand
        prec *= 2


def nonpositive_intervals(A, B, C, lo, hi):
    """Closed intervals inside [lo, hi] (rational bounds) where A + B*s + C*s**2 <= 0.

    Returned as a list of ``(SqScale, SqScale)`` pairs in increasing order.
    """
    lo, hi = SqScale.coerce(lo), SqScale.coerce(hi)
    if hi < lo:
        return []
    if lo == hi:
        return [(lo, hi)] if lo.evaluate_quadratic_sign(A, B, C) <= 0 else []
    if A == 0 and B == 0 and C == 0:
        return [(lo, hi)]
    cuts = [lo] + [x for x in quadratic_roots(A, B, C) if lo < x < hi] + [hi]
    out = []
    for x, y in zip(cuts, cuts[1:]):
        if x.is_rational and y.is_rational:
            mid = (x.a + y.a) / 2
        else:
            mid = rational_between(x, y)
        inside = SqScale(mid).evaluate_quadratic_sign(A, B, C) <= 0
        if inside:
            _append(out, x, y)
        else:
            for e in (x, y):
                if e.evaluate_quadratic_sign(A, B, C) <= 0:
                    _append(out, e, e)
    return out


def _append(out, x, y):
    if out and out[-1][1] >= x:
        if y > out[-1][1]:
            out[-1] = (out[-1][0], y)
        return
    out.append((x, y))
