"""Serializable decomposition certificates and their independent checker.

A certificate carries only structure: the root polygon, node kinds, split
paths, pocket rotations, and leaf witnesses.  Every node polygon is
re-derived top-down from the root, every leaf is re-measured, and counts
are recombined bottom-up, so nothing the producer claims is trusted.

Wire format (canonical JSON, integers as decimal strings):
  {"format_version": "1",
   "polygon": [[x, y], ...],
   "tree": {"kind": "leaf" | "split" | "pocket",
            "witness": {"m": [[m11, m12], [m21, m22]], "t": [x, y]},
            "path": [[x, y], ...],
            "rotation": r,
            "children": [node, node]}}
"""
from __future__ import annotations

import json
import sys
from math import gcd
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Union

from .counting import (
    PickCounts,
    area2,
    boundary_count,
    interior_count,
    pick_area2,
)
from .decompose import (
    DecompositionTree,
    Leaf,
    NegativeCountError,
    PocketSplit,
    Split,
    UnimodularWitness,
    is_good_path,
    path_interior_lattice_count,
    pick_union_counts,
    split_sides,
    triangle_interior_count,
)
from .exact import LatticePoint, _contact, _cross, _in_box
from .polygon import (
    Polygon,
    PolygonError,
    convex_hull,
    on_hull_frontier,
    rotate_vertices,
)

FORMAT_VERSION = "1"


class MalformedCertificateError(Exception):
    """The byte stream or JSON structure is not a certificate."""


@dataclass(frozen=True)
class CertLeaf:
    witness: UnimodularWitness


@dataclass(frozen=True)
class CertSplit:
    path: tuple[LatticePoint, ...]
    children: tuple["CertNode", "CertNode"]


@dataclass(frozen=True)
class CertPocket:
    path: tuple[LatticePoint, ...]
    rotation: int
    children: tuple["CertNode", "CertNode"]


CertNode = Union[CertLeaf, CertSplit, CertPocket]


@dataclass(frozen=True)
class Certificate:
    format_version: str
    polygon: tuple[LatticePoint, ...]
    tree: CertNode


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    message: str


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    violations: tuple[Violation, ...]
    root_counts: PickCounts
    residual: int


def make_certificate(poly: Polygon, tree: DecompositionTree) -> Certificate:
    """Strip a decomposition tree to its checkable structure."""
    work: list[tuple[DecompositionTree, bool]] = [(tree, False)]
    vals: list[CertNode] = []
    while work:
        node, visited = work.pop()
        if isinstance(node, Leaf):
            vals.append(CertLeaf(node.witness))
        elif not visited:
            work.append((node, True))
            if isinstance(node, Split):
                work.append((node.right, False))
                work.append((node.left, False))
            else:
                work.append((node.pocket_tree, False))
                work.append((node.filled_tree, False))
        else:
            right = vals.pop()
            left = vals.pop()
            if isinstance(node, Split):
                vals.append(CertSplit(node.path.vertices, (left, right)))
            else:
                vals.append(
                    CertPocket(node.pocket.pocket_path, node.pocket.rotation, (left, right))
                )
    return Certificate(FORMAT_VERSION, poly.vertices, vals[0])


# -- serialization -------------------------------------------------------------


def serialize(cert: Certificate) -> bytes:
    """Canonical JSON bytes: sorted keys, no whitespace, decimal-string ints."""
    obj = {
        "format_version": cert.format_version,
        "polygon": [[str(p.x), str(p.y)] for p in cert.polygon],
        "tree": _node_to_obj(cert.tree),
    }
    with _deep_recursion(_struct_depth(cert.tree)):
        return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("ascii")


def deserialize(data: bytes) -> Certificate:
    """Parse certificate bytes; raises MalformedCertificateError with the
    offending location on any structural problem."""
    try:
        with _deep_recursion(50_000):
            obj = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedCertificateError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedCertificateError("top level must be an object")
    version = obj.get("format_version")
    if version != FORMAT_VERSION:
        raise MalformedCertificateError(
            f"unsupported format_version {version!r}, expected {FORMAT_VERSION!r}"
        )
    polygon = tuple(_parse_point(p, "polygon") for p in _expect_list(obj, "polygon", "$"))
    tree = _parse_tree(obj.get("tree"))
    return Certificate(FORMAT_VERSION, polygon, tree)


def _node_to_obj(root: CertNode) -> dict:
    work: list[tuple[CertNode, bool]] = [(root, False)]
    vals: list[dict] = []
    while work:
        node, visited = work.pop()
        if isinstance(node, CertLeaf):
            w = node.witness
            vals.append(
                {
                    "kind": "leaf",
                    "witness": {
                        "m": [[str(w.m11), str(w.m12)], [str(w.m21), str(w.m22)]],
                        "t": [str(w.translation.x), str(w.translation.y)],
                    },
                }
            )
        elif not visited:
            work.append((node, True))
            work.append((node.children[1], False))
            work.append((node.children[0], False))
        else:
            right = vals.pop()
            left = vals.pop()
            d = {
                "kind": "split" if isinstance(node, CertSplit) else "pocket",
                "path": [[str(p.x), str(p.y)] for p in node.path],
                "children": [left, right],
            }
            if isinstance(node, CertPocket):
                d["rotation"] = str(node.rotation)
            vals.append(d)
    return vals[0]


def _parse_tree(root_obj) -> CertNode:
    """Iterative structural parse of the tree object."""
    work = [(root_obj, "tree", False)]
    vals: list[CertNode] = []
    while work:
        obj, where, visited = work.pop()
        if visited:
            right = vals.pop()
            left = vals.pop()
            kind, path, rotation = obj
            if kind == "split":
                vals.append(CertSplit(path, (left, right)))
            else:
                vals.append(CertPocket(path, rotation, (left, right)))
            continue
        if not isinstance(obj, dict):
            raise MalformedCertificateError(f"{where}: node must be an object")
        kind = obj.get("kind")
        if kind == "leaf":
            vals.append(CertLeaf(_parse_witness(obj.get("witness"), where)))
        elif kind in ("split", "pocket"):
            path = tuple(
                _parse_point(p, where) for p in _expect_list(obj, "path", where)
            )
            if len(path) < 2:
                raise MalformedCertificateError(f"{where}: path needs two points")
            rotation = 0
            if kind == "pocket":
                if "rotation" not in obj:
                    raise MalformedCertificateError(f"{where}: pocket needs rotation")
                rotation = _parse_int(obj["rotation"], where)
            children = _expect_list(obj, "children", where)
            if len(children) != 2:
                raise MalformedCertificateError(f"{where}: need exactly 2 children")
            work.append(((kind, path, rotation), where, True))
            work.append((children[1], f"{where}.1", False))
            work.append((children[0], f"{where}.0", False))
        else:
            raise MalformedCertificateError(f"{where}: unknown node kind {kind!r}")
    return vals[0]


def _parse_witness(obj, where) -> UnimodularWitness:
    if not isinstance(obj, dict) or "m" not in obj or "t" not in obj:
        raise MalformedCertificateError(f"{where}: witness needs 'm' and 't'")
    m = obj["m"]
    if (
        not isinstance(m, list)
        or len(m) != 2
        or any(not isinstance(row, list) or len(row) != 2 for row in m)
    ):
        raise MalformedCertificateError(f"{where}: witness matrix must be 2x2")
    t = _parse_point(obj["t"], where)
    return UnimodularWitness(
        _parse_int(m[0][0], where),
        _parse_int(m[0][1], where),
        _parse_int(m[1][0], where),
        _parse_int(m[1][1], where),
        t,
    )


def _parse_point(p, where) -> LatticePoint:
    if not isinstance(p, list) or len(p) != 2:
        raise MalformedCertificateError(f"{where}: point must be an [x, y] pair")
    return LatticePoint(_parse_int(p[0], where), _parse_int(p[1], where))


def _parse_int(v, where) -> int:
    if isinstance(v, bool):
        raise MalformedCertificateError(f"{where}: expected integer, got bool")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v, 10)
        except ValueError:
            raise MalformedCertificateError(f"{where}: bad integer {v!r}") from None
    raise MalformedCertificateError(f"{where}: expected integer, got {type(v).__name__}")


def _expect_list(obj, key, where) -> list:
    v = obj.get(key)
    if not isinstance(v, list):
        raise MalformedCertificateError(f"{where}: {key!r} must be an array")
    return v


def _struct_depth(root: CertNode) -> int:
    best = 0
    stack = [(root, 1)]
    while stack:
        node, d = stack.pop()
        best = max(best, d)
        if not isinstance(node, CertLeaf):
            stack.append((node.children[0], d + 1))
            stack.append((node.children[1], d + 1))
    return best


@contextmanager
def _deep_recursion(depth: int):
    # json.dumps/loads recurse over nesting depth; certificates can be deep.
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * depth + 1000))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


# -- checking -------------------------------------------------------------------


def check_certificate(cert: Certificate) -> CheckReport:
    """Re-verify every geometric claim in a certificate.

    Node polygons are derived from the root downward, leaves are measured
    directly, counts recombine upward, and every failed rule is collected
    (no fail-fast).  valid iff there are no violations and the root Pick
    residual is zero.
    """
    found: list[tuple[tuple[int, ...], str, str]] = []

    def violate(link, rule, message):
        found.append((_link_to_tuple(link), rule, message))

    root_poly = None
    try:
        root_poly = Polygon(cert.polygon)
    except PolygonError as exc:
        violate(None, "root-polygon", str(exc))

    # Post-order over (node, expected polygon); parents combine counts.
    work: list[tuple] = [(cert.tree, root_poly, None, False, None)]
    vals: list[PickCounts | None] = []
    while work:
        node, expected, link, visited, combine = work.pop()
        if visited:
            right = vals.pop()
            left = vals.pop()
            if left is None or right is None:
                vals.append(None)
                continue
            try:
                vals.append(combine(left, right))
            except NegativeCountError as exc:
                violate(link, "union-negative-counts", str(exc))
                vals.append(None)
            continue
        if expected is None:
            vals.append(None)
            continue
        if isinstance(node, CertLeaf):
            vals.append(_check_leaf(node, expected, link, violate))
            continue
        if isinstance(node, CertSplit):
            left_poly, right_poly = _check_split(node, expected, link, violate)
        else:
            left_poly, right_poly = _check_pocket(node, expected, link, violate)
        shared = path_interior_lattice_count(node.path)
        kind = "split" if isinstance(node, CertSplit) else "pocket"

        def combine(l, r, kind=kind, shared=shared):
            return pick_union_counts(kind, l, r, shared)

        work.append((node, expected, link, True, combine))
        work.append((node.children[1], right_poly, (1, link), False, None))
        work.append((node.children[0], left_poly, (0, link), False, None))

    counts = vals[0] if vals else None
    if counts is None:
        counts = PickCounts(0, 0, 0)
    residual = counts.area2 - pick_area2(counts.interior, counts.boundary)
    if residual != 0 and not found:
        found.append(((), "root-residual", f"Pick residual is {residual}"))
    violations = tuple(
        Violation(_render_path(p), rule, msg) for p, rule, msg in sorted(found)
    )
    return CheckReport(not violations and residual == 0, violations, counts, residual)


def _check_leaf(node: CertLeaf, expected: Polygon, link, violate) -> PickCounts:
    vts = expected.vertices
    if len(vts) != 3:
        violate(link, "leaf-triangle", f"leaf polygon has {len(vts)} vertices")
        interior = interior_count(expected)
        boundary = boundary_count(expected)
    else:
        interior = triangle_interior_count(expected)
        (x0, y0), (x1, y1), (x2, y2) = expected._coords
        boundary = (
            gcd(x1 - x0, y1 - y0) + gcd(x2 - x1, y2 - y1) + gcd(x0 - x2, y0 - y2)
        )
    w = node.witness
    if abs(w.determinant) != 1:
        violate(link, "leaf-witness-determinant", f"|det| = {abs(w.determinant)}")
    if w.unit_triangle_image() != vts:
        violate(
            link,
            "leaf-witness-image",
            f"witness maps the unit triangle to {w.unit_triangle_image()}, "
            f"leaf is {vts}",
        )
    return PickCounts(interior, boundary, area2(expected))


def _check_split(node: CertSplit, expected: Polygon, link, violate):
    path = node.path
    relisted = list(expected.vertices)
    ok = True
    inserted = False
    for endpoint in (path[0], path[-1]):
        if endpoint in relisted:
            continue
        # A chord may end on a boundary lattice point; the polygon is then
        # read with that point as a formal (collinear) vertex.
        at = _edge_interior_index(relisted, endpoint)
        if at is None:
            violate(link, "split-path-endpoints", f"{endpoint} is not on the boundary")
            ok = False
        else:
            relisted.insert(at + 1, endpoint)
            inserted = True
    if not ok:
        return None, None
    if inserted:
        try:
            parent = Polygon(tuple(relisted))
        except PolygonError as exc:
            violate(link, "split-parent", str(exc))
            return None, None
    else:
        parent = expected
    if not is_good_path(parent, path):
        violate(link, "split-good-path", f"path {path} does not split {parent.vertices}")
    s1, s2 = split_sides(parent.vertices, path)
    return (
        _side_polygon(s1, "split-side-left", link, violate),
        _side_polygon(s2, "split-side-right", link, violate),
    )


def _check_pocket(node: CertPocket, expected: Polygon, link, violate):
    path = node.path
    vts = expected.vertices
    m = len(path) - 2
    if m < 1:
        violate(link, "pocket-path-length", "pocket path needs an interior vertex")
        return None, None
    rotated = rotate_vertices(vts, node.rotation)
    if rotated[: m + 2] != path:
        violate(
            link,
            "pocket-path-alignment",
            f"path is not the rotated vertex prefix (rotation {node.rotation})",
        )
        return None, None
    try:
        hull = convex_hull(vts)
    except PolygonError as exc:
        violate(link, "pocket-hull", str(exc))
        return None, None
    a, b = path[0], path[-1]
    for p in (a, b):
        if not on_hull_frontier(p, hull):
            violate(link, "pocket-endpoints-frontier", f"{p} is not on the hull frontier")
    for p in path[1:-1]:
        if on_hull_frontier(p, hull):
            violate(link, "pocket-interior-vertices", f"{p} is on the hull frontier")
    coords = expected._coords
    n = len(coords)
    for i in range(n):
        c = _contact(b.x, b.y, a.x, a.y, *coords[i], *coords[(i + 1) % n])
        if c is not None and c != (a.x, a.y) and c != (b.x, b.y):
            violate(
                link,
                "pocket-filling-chord",
                f"chord {b}->{a} meets the polygon at {c}",
            )
    filled = _side_polygon((a,) + rotated[m + 1 :], "pocket-filled", link, violate)
    pocket = _side_polygon(path, "pocket-polygon", link, violate)
    return filled, pocket


def _side_polygon(vts, rule, link, violate):
    try:
        return Polygon(tuple(vts))
    except PolygonError as exc:
        violate(link, rule, str(exc))
        return None


def _edge_interior_index(vts, p) -> int | None:
    n = len(vts)
    for i in range(n):
        a = vts[i]
        b = vts[(i + 1) % n]
        if _cross(a.x, a.y, b.x, b.y, p.x, p.y) == 0 and _in_box(
            p.x, p.y, a.x, a.y, b.x, b.y
        ):
            return i
    return None


def _link_to_tuple(link) -> tuple[int, ...]:
    out = []
    while link is not None:
        out.append(link[0])
        link = link[1]
    return tuple(reversed(out))


def _render_path(parts: tuple[int, ...]) -> str:
    return "root" if not parts else "root." + ".".join(str(i) for i in parts)
