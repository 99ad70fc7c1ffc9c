"""Exact scalar and point primitives.

Coordinates are Python ints (lattice points) or fractions.Fraction
(intersection points, midpoints).  Every predicate is an exact sign
computation; there is no floating point and no epsilon anywhere in this
package.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Union

Coord = Union[int, Fraction]


@dataclass(frozen=True)
class LatticePoint:
    """A point of the integer lattice Z^2."""

    x: int
    y: int

    def __iter__(self):
        return iter((self.x, self.y))


@dataclass(frozen=True)
class RationalPoint:
    """An exact rational point.

    Fraction keeps every coordinate reduced with a positive denominator,
    so structural equality is semantic equality.
    """

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __iter__(self):
        return iter((self.x, self.y))


PointLike = Union[LatticePoint, RationalPoint]


def as_rational(p: PointLike) -> RationalPoint:
    """Coerce a lattice or rational point to a RationalPoint."""
    if isinstance(p, RationalPoint):
        return p
    return RationalPoint(Fraction(p.x), Fraction(p.y))


def midpoint(a: PointLike, b: PointLike) -> RationalPoint:
    return RationalPoint(Fraction(a.x + b.x, 2), Fraction(a.y + b.y, 2))


@dataclass(frozen=True)
class Segment:
    """A closed segment with distinct rational endpoints."""

    start: RationalPoint
    end: RationalPoint

    def __post_init__(self):
        if self.start == self.end:
            raise ValueError(f"zero-length segment at {self.start}")


def lattice_segment(a: LatticePoint, b: LatticePoint) -> Segment:
    return Segment(as_rational(a), as_rational(b))


class Orientation(Enum):
    CLOCKWISE = "cw"
    COUNTERCLOCKWISE = "ccw"
    COLLINEAR = "collinear"


def orientation(a: PointLike, b: PointLike, c: PointLike) -> Orientation:
    """Turn direction of the ordered triple (a, b, c).

    Sign of the cross product (b - a) x (c - a); counter-clockwise is the
    positive (right-handed, y-up) side.
    """
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if d > 0:
        return Orientation.COUNTERCLOCKWISE
    if d < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


class PointOnSegment(Enum):
    ENDPOINT = "endpoint"
    RELATIVE_INTERIOR = "relative_interior"
    OFF = "off"


def point_on_segment(p: PointLike, s: Segment) -> PointOnSegment:
    """Locate p relative to the closed segment s."""
    q = as_rational(p)
    if q == s.start or q == s.end:
        return PointOnSegment.ENDPOINT
    if orientation(s.start, s.end, q) is not Orientation.COLLINEAR:
        return PointOnSegment.OFF
    if _in_box(q.x, q.y, s.start.x, s.start.y, s.end.x, s.end.y):
        return PointOnSegment.RELATIVE_INTERIOR
    return PointOnSegment.OFF


def segment_intersection(s1: Segment, s2: Segment):
    """Exact intersection of two closed segments.

    Returns None when the segments are disjoint, a RationalPoint when they
    meet in exactly one point, or a Segment when they share a
    positive-length collinear piece.
    """
    ax, ay = s1.start.x, s1.start.y
    bx, by = s1.end.x, s1.end.y
    cx, cy = s2.start.x, s2.start.y
    dx, dy = s2.end.x, s2.end.y

    d1 = _cross(ax, ay, bx, by, cx, cy)
    d2 = _cross(ax, ay, bx, by, dx, dy)
    if d1 == 0 and d2 == 0:
        # Collinear: lexicographic order agrees with order along the line.
        lo1, hi1 = sorted(((ax, ay), (bx, by)))
        lo2, hi2 = sorted(((cx, cy), (dx, dy)))
        lo = max(lo1, lo2)
        hi = min(hi1, hi2)
        if lo > hi:
            return None
        if lo == hi:
            return RationalPoint(*lo)
        return Segment(RationalPoint(*lo), RationalPoint(*hi))

    d3 = _cross(cx, cy, dx, dy, ax, ay)
    d4 = _cross(cx, cy, dx, dy, bx, by)

    touches = set()
    if d1 == 0 and _in_box(cx, cy, ax, ay, bx, by):
        touches.add((cx, cy))
    if d2 == 0 and _in_box(dx, dy, ax, ay, bx, by):
        touches.add((dx, dy))
    if d3 == 0 and _in_box(ax, ay, cx, cy, dx, dy):
        touches.add((ax, ay))
    if d4 == 0 and _in_box(bx, by, cx, cy, dx, dy):
        touches.add((bx, by))
    if touches:
        # Non-collinear segments cannot share two points.
        (t,) = touches
        return RationalPoint(*t)

    if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0):
        t = Fraction(d3, d3 - d4)
        return RationalPoint(ax + t * (bx - ax), ay + t * (by - ay))
    return None


def gcd_width(a: LatticePoint, b: LatticePoint) -> int:
    """gcd(|dx|, |dy|) of the edge a -> b.

    Zero iff a == b; otherwise one less than the number of lattice points
    on the closed segment, which makes it the boundary-count contribution
    of a polygon edge.
    """
    return gcd(b.x - a.x, b.y - a.y)


def lattice_points_on_segment(a: LatticePoint, b: LatticePoint) -> list[LatticePoint]:
    """All lattice points on the closed segment a -> b, in order from a."""
    g = gcd_width(a, b)
    if g == 0:
        return [a]
    sx = (b.x - a.x) // g
    sy = (b.y - a.y) // g
    return [LatticePoint(a.x + i * sx, a.y + i * sy) for i in range(g + 1)]


def _cross(ax, ay, bx, by, cx, cy):
    # (b - a) x (c - a)
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _contact(ax, ay, bx, by, cx, cy, dx, dy):
    """Classify the contact of closed segments AB and CD (integer inputs).

    Returns None (disjoint), "cross" (single interior crossing),
    "overlap" (collinear share of positive length), or the single shared
    point as an (x, y) tuple.  Integer-only twin of segment_intersection
    for the hot paths that never need rational crossing coordinates.
    """
    d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    d2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    if d1 == 0 and d2 == 0:
        lo1, hi1 = sorted(((ax, ay), (bx, by)))
        lo2, hi2 = sorted(((cx, cy), (dx, dy)))
        lo = lo1 if lo1 > lo2 else lo2
        hi = hi1 if hi1 < hi2 else hi2
        if lo > hi:
            return None
        if lo == hi:
            return lo
        return "overlap"
    d3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    d4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    touches = set()
    if d1 == 0 and _in_box(cx, cy, ax, ay, bx, by):
        touches.add((cx, cy))
    if d2 == 0 and _in_box(dx, dy, ax, ay, bx, by):
        touches.add((dx, dy))
    if d3 == 0 and _in_box(ax, ay, cx, cy, dx, dy):
        touches.add((ax, ay))
    if d4 == 0 and _in_box(bx, by, cx, cy, dx, dy):
        touches.add((bx, by))
    if touches:
        (t,) = touches
        return t
    if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0):
        return "cross"
    return None


def _in_box(px, py, ax, ay, bx, by):
    # Bounding-box containment; a full on-segment test when collinearity
    # is already known.
    if ax <= bx:
        if not ax <= px <= bx:
            return False
    elif not bx <= px <= ax:
        return False
    if ay <= by:
        return ay <= py <= by
    return by <= py <= ay
