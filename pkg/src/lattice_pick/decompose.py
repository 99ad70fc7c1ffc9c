"""Recursive decomposition of lattice polygons into elementary triangles.

Triangles refine down to elementary leaves (splitting at an interior
lattice point, or at a boundary lattice point viewed as a formal vertex);
convex polygons split along a chord whose interior lies strictly inside;
non-convex polygons give up a pocket, leaving a filled polygon plus the
pocket, both strictly smaller.  The result is a binary certificate tree
whose every claim is re-checkable with exact predicates.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Literal, Sequence, Union

from .counting import PickCounts, boundary_count
from .exact import LatticePoint, _contact, gcd_width
from .polygon import (
    PointLocation,
    Polygon,
    PolygonError,
    VertexList,
    _classify,
    _ray_parity,
    convex_hull,
    is_convex,
    on_hull_frontier,
    rotate_vertices,
)

logger = logging.getLogger(__name__)


class NotATriangleError(ValueError):
    pass


class NotElementaryError(ValueError):
    pass


class AlreadyElementaryError(ValueError):
    pass


class EndpointsNotVerticesError(ValueError):
    pass


class NoGoodLinepathError(Exception):
    """No validating chord exists; signals a broken internal invariant."""


class PolygonConvexError(ValueError):
    pass


class NegativeCountError(ValueError):
    """Count recombination underflowed; the certificate is malformed."""


class InternalInvariantViolation(Exception):
    """A geometric fact the construction guarantees failed its check."""


@dataclass(frozen=True)
class UnimodularWitness:
    """Affine map taking the unit triangle (0,0),(1,0),(0,1) to a triangle.

    Matrix columns are v1-v0 and v2-v0, the translation is v0; the map is
    lattice-preserving exactly when |det| = 1.
    """

    m11: int
    m12: int
    m21: int
    m22: int
    translation: LatticePoint

    @property
    def determinant(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def unit_triangle_image(self) -> tuple[LatticePoint, LatticePoint, LatticePoint]:
        t = self.translation
        return (
            t,
            LatticePoint(t.x + self.m11, t.y + self.m21),
            LatticePoint(t.x + self.m12, t.y + self.m22),
        )


@dataclass(frozen=True)
class SplitPath:
    """Simple open chain between two boundary vertices of a polygon."""

    vertices: tuple[LatticePoint, ...]

    def __post_init__(self):
        vts = tuple(self.vertices)
        object.__setattr__(self, "vertices", vts)
        if len(vts) < 2:
            raise ValueError("split path needs at least two vertices")
        for a, b in zip(vts, vts[1:]):
            if a == b:
                raise ValueError("split path repeats a vertex consecutively")
        if vts[0] == vts[-1]:
            raise ValueError("split path endpoints must differ")


@dataclass(frozen=True)
class PocketDecomposition:
    """A pocket cut off a non-convex polygon.

    rotation realigns the parent so the pocket path is a prefix of its
    vertex list; pocket_path = [a, x1..xm, b] with a, b on the hull
    frontier and every x strictly inside the hull; filled is the parent
    with x1..xm replaced by the chord b-a.
    """

    rotation: int
    pocket_path: tuple[LatticePoint, ...]
    pocket: Polygon
    filled: Polygon


@dataclass(frozen=True)
class Leaf:
    triangle: Polygon
    witness: UnimodularWitness


@dataclass(frozen=True)
class Split:
    parent: Polygon
    path: SplitPath
    left: "DecompositionTree"
    right: "DecompositionTree"


@dataclass(frozen=True)
class PocketSplit:
    parent: Polygon
    pocket: PocketDecomposition
    filled_tree: "DecompositionTree"
    pocket_tree: "DecompositionTree"


DecompositionTree = Union[Leaf, Split, PocketSplit]


# -- triangles ----------------------------------------------------------------


def _column_walk_setup(coords):
    """Per-edge column-walk state for a triangle.

    For the edge y at column c the numerator is linear in c, so the walk
    keeps (num, den > 0, slope) per non-vertical edge and advances num by
    slope from one column to the next; span gates tell which edges bound
    a given column.
    """
    (x0, y0), (x1, y1), (x2, y2) = coords
    xmin = min(x0, x1, x2)
    xmax = max(x0, x1, x2)
    c0 = xmin + 1
    loxs, hixs, nums, dens, slopes = [], [], [], [], []
    for ax, ay, bx, by in ((x0, y0, x1, y1), (x1, y1, x2, y2), (x2, y2, x0, y0)):
        den = bx - ax
        if den == 0:
            continue
        slope = by - ay
        num = ay * den + (c0 - ax) * slope
        if den < 0:
            den, slope, num = -den, -slope, -num
            loxs.append(bx)
            hixs.append(ax)
        else:
            loxs.append(ax)
            hixs.append(bx)
        nums.append(num)
        dens.append(den)
        slopes.append(slope)
    return c0, xmax, loxs, hixs, nums, dens, slopes


def _first_interior_point(coords) -> LatticePoint | None:
    """Lexicographically smallest interior lattice point of a triangle.

    At each column strictly inside the x-range the open triangle meets
    the column in an open rational y-interval; the first column holding
    an integer strictly inside yields the point.  Exact throughout:
    rational bounds are compared and floored by cross multiplication.
    """
    c0, xmax, loxs, hixs, nums, dens, slopes = _column_walk_setup(coords)
    m = len(nums)
    for c in range(c0, xmax):
        lo_n = lo_d = hi_n = hi_d = 0
        for i in range(m):
            if loxs[i] <= c <= hixs[i]:
                num = nums[i]
                den = dens[i]
                if lo_d == 0:
                    lo_n = hi_n = num
                    lo_d = hi_d = den
                else:
                    if num * lo_d < lo_n * den:
                        lo_n, lo_d = num, den
                    if num * hi_d > hi_n * den:
                        hi_n, hi_d = num, den
            nums[i] += slopes[i]
        y_first = lo_n // lo_d + 1
        if y_first <= -((-hi_n) // hi_d) - 1:
            return LatticePoint(c, y_first)
    return None


def triangle_interior_count(tri: Polygon) -> int:
    """Interior lattice count of a triangle by exact column walk.

    Same value as counting.interior_count, in O(min(width, height))
    integer steps; slivers are walked across their narrow dimension.
    """
    coords = tri._coords
    if len(coords) != 3:
        raise NotATriangleError(f"expected 3 vertices, got {len(coords)}")
    (x0, y0), (x1, y1), (x2, y2) = coords
    if max(y0, y1, y2) - min(y0, y1, y2) < max(x0, x1, x2) - min(x0, x1, x2):
        coords = ((y0, x0), (y1, x1), (y2, x2))
    c0, xmax, loxs, hixs, nums, dens, slopes = _column_walk_setup(coords)
    m = len(nums)
    total = 0
    for c in range(c0, xmax):
        lo_n = lo_d = hi_n = hi_d = 0
        for i in range(m):
            if loxs[i] <= c <= hixs[i]:
                num = nums[i]
                den = dens[i]
                if lo_d == 0:
                    lo_n = hi_n = num
                    lo_d = hi_d = den
                else:
                    if num * lo_d < lo_n * den:
                        lo_n, lo_d = num, den
                    if num * hi_d > hi_n * den:
                        hi_n, hi_d = num, den
            nums[i] += slopes[i]
        span = -((-hi_n) // hi_d) - 1 - (lo_n // lo_d)
        if span > 0:
            total += span
    return total


def is_elementary(tri: Polygon) -> bool:
    """True iff the triangle has no interior and no extra boundary points."""
    if len(tri.vertices) != 3:
        raise NotATriangleError(f"expected 3 vertices, got {len(tri.vertices)}")
    if boundary_count(tri) != 3:
        return False
    return _first_interior_point(tri._coords) is None


def unimodular_witness(tri: Polygon) -> UnimodularWitness:
    """Witness map for an elementary triangle; |det| must be 1."""
    if len(tri.vertices) != 3:
        raise NotATriangleError(f"expected 3 vertices, got {len(tri.vertices)}")
    v0, v1, v2 = tri.vertices
    w = UnimodularWitness(
        v1.x - v0.x, v2.x - v0.x, v1.y - v0.y, v2.y - v0.y, v0
    )
    if abs(w.determinant) != 1:
        raise NotElementaryError(f"edge matrix determinant is {w.determinant}")
    return w


def _triangle_step(tri: Polygon):
    """One refinement step: a Leaf, or (child polygons, assembler)."""
    vts = tri.vertices
    (x0, y0), (x1, y1), (x2, y2) = tri._coords
    # Twice-area 1 is exactly the elementary case (any extra lattice point
    # would span a smaller positive lattice area, and the edge-matrix
    # determinant is this signed area).  The witness re-checks |det| = 1.
    if abs((x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)) == 1:
        return Leaf(tri, unimodular_witness(tri))
    p = _first_interior_point(tri._coords)
    v0, v1, v2 = vts
    if p is not None:
        # Join the interior point to all three corners.  Two nested chord
        # splits keep the tree binary: first the two-segment path
        # v0 -> p -> v2, then the diagonal v1 -> p of the leftover quad.
        t1 = Polygon._trusted((v0, p, v2))
        quad = Polygon._trusted((v0, v1, v2, p))
        t2 = Polygon._trusted((v1, p, v0))
        t3 = Polygon._trusted((v1, v2, p))
        outer = SplitPath((v0, p, v2))
        inner = SplitPath((v1, p))

        def assemble(children, tri=tri, quad=quad, outer=outer, inner=inner):
            c1, c2, c3 = children
            return Split(tri, outer, c1, Split(quad, inner, c2, c3))

        return [t1, t2, t3], assemble

    # No interior point but extra boundary points: cut from the opposite
    # corner to the first non-vertex lattice point, inserting that point
    # as a formal vertex so the chord runs between vertices.
    for i in range(3):
        a = vts[i]
        b = vts[(i + 1) % 3]
        g = gcd_width(a, b)
        if g >= 2:
            x = LatticePoint(a.x + (b.x - a.x) // g, a.y + (b.y - a.y) // g)
            opposite = vts[(i + 2) % 3]
            relisted = vts[: i + 1] + (x,) + vts[i + 1 :]
            quad = Polygon._trusted(relisted)
            path = SplitPath((opposite, x))
            s1, s2 = split_sides(relisted, path.vertices)
            left, right = Polygon._trusted(s1), Polygon._trusted(s2)

            def assemble(children, quad=quad, path=path):
                return Split(quad, path, children[0], children[1])

            return [left, right], assemble
    raise InternalInvariantViolation("triangle neither elementary nor splittable")


def split_triangle(tri: Polygon) -> list[Polygon]:
    """The sub-triangles of one refinement step of a non-elementary triangle."""
    if len(tri.vertices) != 3:
        raise NotATriangleError(f"expected 3 vertices, got {len(tri.vertices)}")
    step = _triangle_step(tri)
    if isinstance(step, Leaf):
        raise AlreadyElementaryError("triangle is already elementary")
    children, _ = step
    return children


# -- good paths and splits -----------------------------------------------------


def is_good_path(poly: Polygon, path: Sequence[LatticePoint]) -> bool:
    """True iff path splits the polygon: a simple chain between two
    vertices whose relative interior lies strictly inside.

    Checked as: the chain is simple, every chain segment meets every
    polygon edge only in the chain's endpoints, and the first segment's
    midpoint classifies inside (with exact predicates the three together
    are equivalent to full containment).
    """
    path = tuple(path)
    if len(path) < 2:
        raise ValueError("path needs at least two vertices")
    if path[0] not in poly.vertices or path[-1] not in poly.vertices:
        raise EndpointsNotVerticesError(
            f"path endpoints {path[0]}, {path[-1]} must be polygon vertices"
        )
    pc = tuple((p.x, p.y) for p in path)
    if len(pc) == 2:
        if pc[0] == pc[1]:
            return False
    elif not _open_chain_simple(pc):
        return False
    first = pc[0]
    last = pc[-1]
    coords = poly._coords
    n = len(coords)
    for s in range(len(pc) - 1):
        px, py = pc[s]
        qx, qy = pc[s + 1]
        ax, ay = coords[-1]
        for i in range(n):
            bx, by = coords[i]
            # Edges strictly on one side of the chord's line cannot touch.
            d1 = (qx - px) * (ay - py) - (qy - py) * (ax - px)
            d2 = (qx - px) * (by - py) - (qy - py) * (bx - px)
            if d1 != 0 and d2 != 0 and (d1 > 0) == (d2 > 0):
                ax, ay = bx, by
                continue
            c = _contact(px, py, qx, qy, ax, ay, bx, by)
            ax, ay = bx, by
            if c is None:
                continue
            if c != first and c != last:
                return False
    # Midpoint test, scaled by two to stay integral; the contact pass above
    # already guarantees the midpoint is off the boundary.
    mx = pc[0][0] + pc[1][0]
    my = pc[0][1] + pc[1][1]
    doubled = tuple((2 * x, 2 * y) for x, y in coords)
    return _ray_parity(mx, my, doubled)


def _open_chain_simple(pc) -> bool:
    n = len(pc)
    if len(set(pc)) != n:
        return False
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            c = _contact(*pc[i], *pc[i + 1], *pc[j], *pc[j + 1])
            if j == i + 1:
                if c != pc[j]:
                    return False
            elif c is not None:
                return False
    return True


def split_sides(
    vts: Sequence[LatticePoint], path: Sequence[LatticePoint]
) -> tuple[VertexList, VertexList]:
    """The two vertex lists a split path cuts a polygon into.

    Side one follows the path forward then the polygon onward from the
    path's end; side two walks the polygon from start to end and returns
    along the path.
    """
    vts = tuple(vts)
    path = tuple(path)
    n = len(vts)
    i = vts.index(path[0])
    j = vts.index(path[-1])
    side1 = list(path) + [vts[(j + t) % n] for t in range(1, (i - j) % n)]
    side2 = [vts[(i + t) % n] for t in range((j - i) % n + 1)]
    side2 += list(reversed(path[1:-1]))
    return tuple(side1), tuple(side2)


def find_good_linepath_convex(poly: Polygon) -> SplitPath:
    """A chord of a convex polygon (>= 4 vertices) that splits it.

    With three hull corners, connect the first non-corner vertex to the
    corner opposite its hull edge; with more corners, one of the chords
    between the first three corners works.  A full vertex-pair scan backs
    up the construction for degenerate inputs.
    """
    vts = poly.vertices
    if len(vts) < 4:
        raise ValueError("chord search needs at least 4 vertices")
    hull = convex_hull(vts)
    if len(hull) == 3:
        corners = set(hull)
        d = next(v for v in vts if v not in corners)
        for i in range(3):
            a, b = hull[i], hull[(i + 1) % 3]
            if _on_closed_edge(d, a, b):
                candidate = (d, hull[(i + 2) % 3])
                if is_good_path(poly, candidate):
                    return SplitPath(candidate)
                break
    else:
        a, b, c = hull[0], hull[1], hull[2]
        for u, w in ((a, b), (b, c), (c, a)):
            if is_good_path(poly, (u, w)):
                return SplitPath((u, w))
    logger.warning("constructive chord search failed; scanning all vertex pairs")
    n = len(vts)
    for i in range(n):
        for j in range(i + 1, n):
            if is_good_path(poly, (vts[i], vts[j])):
                return SplitPath((vts[i], vts[j]))
    raise NoGoodLinepathError(f"no good chord in {vts}")


def _on_closed_edge(d, a, b) -> bool:
    return (
        (b.x - a.x) * (d.y - a.y) == (b.y - a.y) * (d.x - a.x)
        and min(a.x, b.x) <= d.x <= max(a.x, b.x)
        and min(a.y, b.y) <= d.y <= max(a.y, b.y)
    )


# -- pockets --------------------------------------------------------------------


def _pocket_runs(poly: Polygon) -> list[tuple[int, tuple[LatticePoint, ...]]]:
    """Maximal cyclic runs of hull-interior vertices with flanking
    frontier vertices; pairs of (run start index, [a, x1..xm, b])."""
    vts = poly.vertices
    n = len(vts)
    hull = convex_hull(vts)
    interior = [not on_hull_frontier(v, hull) for v in vts]
    runs = []
    for i in range(n):
        if interior[i] and not interior[i - 1]:
            run = [vts[i]]
            k = i
            while interior[(k + 1) % n]:
                k = (k + 1) % n
                run.append(vts[k])
            path = (vts[(i - 1) % n], *run, vts[(k + 1) % n])
            runs.append((i, path))
    return runs


def all_pocket_paths(poly: Polygon) -> list[tuple[LatticePoint, ...]]:
    """Every pocket path of the polygon, ordered by run start index."""
    return [path for _, path in _pocket_runs(poly)]


def find_pocket(poly: Polygon) -> PocketDecomposition:
    """Extract the first pocket of a non-convex polygon.

    Rotates the vertex list so the pocket path [a, x1..xm, b] is a prefix,
    verifies the chord b-a meets the polygon only at a and b, and returns
    the pocket and filled polygons.
    """
    runs = _pocket_runs(poly)
    if not runs:
        raise PolygonConvexError("polygon is convex, no pocket to extract")
    start, path = runs[0]
    vts = poly.vertices
    n = len(vts)
    rotation = (start - 1) % n
    rotated = rotate_vertices(vts, rotation)
    m = len(path) - 2
    a, b = path[0], path[-1]
    coords = poly._coords
    for i in range(n):
        c = _contact(
            b.x, b.y, a.x, a.y, *coords[i], *coords[(i + 1) % n]
        )
        if c is None:
            continue
        if c != (a.x, a.y) and c != (b.x, b.y):
            raise InternalInvariantViolation(
                f"filling chord {b}->{a} meets the polygon at {c}"
            )
    filled_vts = (a,) + rotated[m + 1 :]
    try:
        pocket = Polygon(path)
        filled = Polygon(filled_vts)
    except PolygonError as exc:
        raise InternalInvariantViolation(f"pocket pieces not simple: {exc}") from exc
    return PocketDecomposition(rotation, path, pocket, filled)


# -- count recombination ---------------------------------------------------------


def path_interior_lattice_count(path: Sequence[LatticePoint]) -> int:
    """Lattice points on the open chain, both endpoints excluded."""
    return sum(gcd_width(a, b) for a, b in zip(path, path[1:])) - 1


def pick_union_counts(
    kind: Literal["split", "pocket"], c1: PickCounts, c2: PickCounts, shared: int
) -> PickCounts:
    """Parent counts from child counts across a shared split path.

    shared is the lattice count on the path excluding its endpoints.  For
    a split the parent is the union of the two sides; for a pocket the
    parent is the filled polygon (c1) minus the pocket (c2).  Either way
    a zero Pick residual in both children forces a zero residual in the
    parent.
    """
    if kind == "split":
        interior = c1.interior + c2.interior + shared
        boundary = c1.boundary + c2.boundary - 2 * shared - 2
        a2 = c1.area2 + c2.area2
    elif kind == "pocket":
        interior = c1.interior - c2.interior - shared
        boundary = c1.boundary - c2.boundary + 2 * shared + 2
        a2 = c1.area2 - c2.area2
    else:
        raise ValueError(f"unknown union kind {kind!r}")
    if interior < 0 or boundary < 0 or a2 < 0:
        raise NegativeCountError(
            f"{kind} union of {c1} and {c2} with shared={shared} underflows"
        )
    return PickCounts(interior, boundary, a2)


# -- the decomposition loop -------------------------------------------------------


class _Frame:
    __slots__ = ("assemble", "arity", "children", "parent")

    def __init__(self, assemble, arity, parent):
        self.assemble = assemble
        self.arity = arity
        self.children = []
        self.parent = parent


def _step(poly: Polygon):
    if len(poly.vertices) == 3:
        return _triangle_step(poly)
    if is_convex(poly):
        path = find_good_linepath_convex(poly)
        s1, s2 = split_sides(poly.vertices, path.vertices)
        left, right = Polygon._trusted(s1), Polygon._trusted(s2)

        def assemble(children, poly=poly, path=path):
            return Split(poly, path, children[0], children[1])

        return [left, right], assemble
    pd = find_pocket(poly)

    def assemble(children, poly=poly, pd=pd):
        return PocketSplit(poly, pd, children[0], children[1])

    return [pd.filled, pd.pocket], assemble


def decompose(poly: Polygon) -> DecompositionTree:
    """Full decomposition of a polygon into elementary-triangle leaves.

    Deterministic for a fixed input; implemented with an explicit stack
    because refinement depth grows with the lattice size of the polygon.
    """
    root = _Frame(None, 1, None)
    stack: list[tuple[Polygon, _Frame]] = [(poly, root)]
    while stack:
        p, parent = stack.pop()
        step = _step(p)
        if isinstance(step, Leaf):
            node: DecompositionTree = step
            frame = parent
            while True:
                frame.children.append(node)
                if len(frame.children) < frame.arity or frame.parent is None:
                    break
                node = frame.assemble(frame.children)
                frame = frame.parent
        else:
            kids, assemble = step
            frame = _Frame(assemble, len(kids), parent)
            for k in reversed(kids):
                stack.append((k, frame))
    return root.children[0]


def iter_tree(tree: DecompositionTree):
    """Pre-order node iterator (explicit stack, depth-safe)."""
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Split):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, PocketSplit):
            stack.append(node.pocket_tree)
            stack.append(node.filled_tree)


def leaf_count(tree: DecompositionTree) -> int:
    return sum(1 for node in iter_tree(tree) if isinstance(node, Leaf))


def tree_depth(tree: DecompositionTree) -> int:
    """Longest root-to-leaf edge count; a lone leaf has depth 0."""
    best = 0
    stack = [(tree, 0)]
    while stack:
        node, d = stack.pop()
        if isinstance(node, Leaf):
            best = max(best, d)
        elif isinstance(node, Split):
            stack.append((node.left, d + 1))
            stack.append((node.right, d + 1))
        else:
            stack.append((node.filled_tree, d + 1))
            stack.append((node.pocket_tree, d + 1))
    return best


def node_polygon(node: DecompositionTree) -> Polygon:
    """The polygon a tree node is about."""
    if isinstance(node, Leaf):
        return node.triangle
    return node.parent
