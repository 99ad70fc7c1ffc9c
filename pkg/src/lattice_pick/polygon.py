"""Vertex-list polygons: simplicity, point location, hulls, convexity.

A polygon is an open list of lattice vertices (the closing edge back to
the first vertex is implicit).  Consecutive collinear vertices are legal
as long as the chain keeps moving forward; exact 180-degree backtracking
and every other self-contact make the chain non-simple.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import count
from typing import Iterable, Sequence

from .exact import LatticePoint, Orientation, PointLike, _cross, _in_box

VertexList = tuple[LatticePoint, ...]


class PolygonError(ValueError):
    """Base class for vertex-list validation failures."""


class TooFewVerticesError(PolygonError):
    pass


class DegenerateEdgeError(PolygonError):
    pass


class NotSimpleError(PolygonError):
    """The closed chain touches itself; `edges` is the offending pair."""

    def __init__(self, edges: tuple[int, int], message: str):
        super().__init__(message)
        self.edges = edges


class AllCollinearError(PolygonError):
    pass


class PointLocation(Enum):
    INSIDE = "inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


def vertex_list(points: Iterable) -> VertexList:
    """Coerce an iterable of LatticePoint or (x, y) pairs to a VertexList."""
    out = []
    for p in points:
        if isinstance(p, LatticePoint):
            out.append(p)
        else:
            x, y = p
            out.append(LatticePoint(int(x), int(y)))
    return tuple(out)


@dataclass(frozen=True)
class Polygon:
    """A simple closed lattice polygon.

    Construct through validate_polygon; building one directly runs the
    same checks (the constructor rejects anything non-simple).
    """

    vertices: VertexList

    def __post_init__(self):
        vts = tuple(self.vertices)
        object.__setattr__(self, "vertices", vts)
        object.__setattr__(self, "_coords", tuple((p.x, p.y) for p in vts))
        _validate(vts, self._coords)

    @classmethod
    def _trusted(cls, vts: VertexList) -> "Polygon":
        # Skip-validation path for internal construction of chains that are
        # simple by construction (sides of a verified split).  The
        # certificate checker never trusts these: it re-validates every
        # node polygon it derives.
        self = object.__new__(cls)
        object.__setattr__(self, "vertices", vts)
        object.__setattr__(self, "_coords", tuple((p.x, p.y) for p in vts))
        return self

    @cached_property
    def signed_area2(self) -> int:
        return _signed_area2(self._coords)

    @property
    def orientation(self) -> Orientation:
        if self.signed_area2 > 0:
            return Orientation.COUNTERCLOCKWISE
        return Orientation.CLOCKWISE

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self):
        """Cyclic edges as (start, end) vertex pairs."""
        vts = self.vertices
        n = len(vts)
        for i in range(n):
            yield vts[i], vts[(i + 1) % n]

    def bounding_box(self) -> tuple[int, int, int, int]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


def validate_polygon(vts: Sequence[LatticePoint]) -> Polygon:
    """Smart constructor: returns a Polygon iff the closed chain is simple.

    Raises TooFewVerticesError, DegenerateEdgeError, or NotSimpleError
    (carrying the offending edge pair).
    """
    return Polygon(tuple(vts))


def is_simple(vts: Sequence[LatticePoint]) -> bool:
    """True iff the closed chain over vts is a simple closed curve.

    All vertices must be pairwise distinct, non-adjacent edges must be
    fully disjoint, and adjacent edges may meet only at their shared
    endpoint (no collinear backtracking).
    """
    coords = tuple((p.x, p.y) for p in vts)
    return _simplicity_violation(coords) is None


def rotate_vertices(vts: Sequence[LatticePoint], k: int) -> VertexList:
    """Cyclic left-rotation by k (mod length); same closed chain."""
    vts = tuple(vts)
    k = k % len(vts)
    return vts[k:] + vts[:k]


def classify_point(p: PointLike, poly: Polygon) -> PointLocation:
    """Jordan location of p relative to the polygon, decided exactly.

    Boundary membership is tested edge by edge; otherwise parity is
    counted along a ray whose direction is chosen so that it misses every
    vertex (decidable because the arithmetic is exact).
    """
    return _classify(p.x, p.y, poly._coords)


def convex_hull(points: Iterable[LatticePoint]) -> list[LatticePoint]:
    """Extreme points (hull corners) in counter-clockwise order.

    Collinear boundary points are dropped: every returned point is a
    corner.  Raises AllCollinearError when the hull is not
    two-dimensional.
    """
    pts = sorted({(p.x, p.y) for p in points})
    if len(pts) >= 3:
        lower = []
        for q in pts:
            while len(lower) > 1 and _cross(*lower[-2], *lower[-1], *q) <= 0:
                lower.pop()
            lower.append(q)
        upper = []
        for q in reversed(pts):
            while len(upper) > 1 and _cross(*upper[-2], *upper[-1], *q) <= 0:
                upper.pop()
            upper.append(q)
        hull = lower[:-1] + upper[:-1]
        if len(hull) >= 3:
            return [LatticePoint(x, y) for x, y in hull]
    raise AllCollinearError(f"hull of {len(pts)} distinct points is degenerate")


def extreme_point_count(poly: Polygon) -> int:
    """Number of corners of the convex hull of the vertex set."""
    return len(convex_hull(poly.vertices))


def is_convex(poly: Polygon) -> bool:
    """True iff every vertex lies on the frontier of the convex hull.

    Vertices in the relative interior of hull edges are allowed, so a
    formally-many-sided polygon that is geometrically a triangle counts
    as convex.
    """
    hull = convex_hull(poly.vertices)
    return all(on_hull_frontier(v, hull) for v in poly.vertices)


def on_hull_frontier(p: LatticePoint, hull: Sequence[LatticePoint]) -> bool:
    """True iff p lies on the boundary of the hull polygon."""
    n = len(hull)
    px, py = p.x, p.y
    for i in range(n):
        a = hull[i]
        b = hull[(i + 1) % n]
        if _cross(a.x, a.y, b.x, b.y, px, py) == 0 and _in_box(
            px, py, a.x, a.y, b.x, b.y
        ):
            return True
    return False


# -- internals ---------------------------------------------------------------


def _signed_area2(coords) -> int:
    n = len(coords)
    s = 0
    for i in range(n):
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % n]
        s += ax * by - bx * ay
    return s


def _validate(vts: VertexList, coords=None) -> None:
    if len(vts) < 3:
        raise TooFewVerticesError(f"need at least 3 vertices, got {len(vts)}")
    n = len(vts)
    if coords is None:
        coords = tuple((p.x, p.y) for p in vts)
    if n == 3:
        # Three distinct non-collinear points always close a simple chain.
        (ax, ay), (bx, by), (cx, cy) = coords
        if (ax, ay) == (bx, by) or (bx, by) == (cx, cy) or (cx, cy) == (ax, ay):
            raise DegenerateEdgeError("consecutive equal vertices")
        if (bx - ax) * (cy - ay) == (by - ay) * (cx - ax):
            raise NotSimpleError((1, 2), "three collinear vertices back-track")
        return
    for i in range(n):
        if coords[i] == coords[(i + 1) % n]:
            raise DegenerateEdgeError(f"consecutive equal vertices at index {i}")
    bad = _simplicity_violation(coords)
    if bad is not None:
        i, j = bad
        raise NotSimpleError(
            (i, j), f"edges ({i}-{(i + 1) % n}) and ({j}-{(j + 1) % n}) intersect"
        )


def _simplicity_violation(coords) -> tuple[int, int] | None:
    """Offending edge pair of the closed chain, or None when simple."""
    n = len(coords)
    seen: dict[tuple[int, int], int] = {}
    for i, c in enumerate(coords):
        if c in seen:
            return (seen[c], i)
        seen[c] = i
    for i in range(n):
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % n]
        for j in range(i + 1, n):
            cx, cy = coords[j]
            dx, dy = coords[(j + 1) % n]
            if j == i + 1 or (i == 0 and j == n - 1):
                # Adjacent edges share one endpoint; collinear
                # continuation is fine, backtracking is not.
                if j == i + 1:
                    sx, sy, ux, uy, wx, wy = bx, by, ax, ay, dx, dy
                else:
                    sx, sy, ux, uy, wx, wy = ax, ay, bx, by, cx, cy
                if (ux - sx) * (wy - sy) == (uy - sy) * (wx - sx) and (
                    (ux - sx) * (wx - sx) + (uy - sy) * (wy - sy) > 0
                ):
                    return (i, j)
            elif _closed_segments_touch(ax, ay, bx, by, cx, cy, dx, dy):
                return (i, j)
    return None


def _closed_segments_touch(ax, ay, bx, by, cx, cy, dx, dy) -> bool:
    d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    d2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    d3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    d4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 and d2 and d3 and d4:
        return True
    if d1 == 0 and _in_box(cx, cy, ax, ay, bx, by):
        return True
    if d2 == 0 and _in_box(dx, dy, ax, ay, bx, by):
        return True
    if d3 == 0 and _in_box(ax, ay, cx, cy, dx, dy):
        return True
    if d4 == 0 and _in_box(bx, by, cx, cy, dx, dy):
        return True
    return False


def _classify(px, py, coords) -> PointLocation:
    """Exact point location against a closed coordinate chain.

    Works for integer and Fraction coordinates alike; with lattice input
    everything stays in integer arithmetic.
    """
    n = len(coords)
    for i in range(n):
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % n]
        if (bx - ax) * (py - ay) == (by - ay) * (px - ax) and _in_box(
            px, py, ax, ay, bx, by
        ):
            return PointLocation.ON_BOUNDARY
    if _ray_parity(px, py, coords):
        return PointLocation.INSIDE
    return PointLocation.OUTSIDE


def _ray_parity(px, py, coords) -> bool:
    """Crossing parity of a ray from p; p must not be on the chain."""
    # Ray direction (k, 1): pick k so the supporting line through p misses
    # every vertex, which removes all degenerate crossing cases.
    for k in count(2):
        for x, y in coords:
            if x - px == k * (y - py):
                break
        else:
            break

    n = len(coords)
    inside = False
    ax, ay = coords[-1]
    sa = k * (ay - py) - (ax - px)
    for i in range(n):
        bx, by = coords[i]
        sb = k * (by - py) - (bx - px)
        if (sa > 0) != (sb > 0):
            # Segment straddles the line; count it when the crossing lies
            # on the forward half (t > 0 along direction (k, 1)).
            if (sa * (by - py) - sb * (ay - py)) * (sa - sb) > 0:
                inside = not inside
        ay, sa = by, sb
    return inside
