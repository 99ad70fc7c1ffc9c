"""Deterministic SVG rendering of lattice polygons.

All geometry is integral, the scale factor is an integer, and elements
are emitted in a fixed order, so a given polygon and flag set always
produces byte-identical output.  The y-axis is flipped so figures read
with y growing upward.
"""
from __future__ import annotations

from .decompose import Leaf, all_pocket_paths, decompose, iter_tree
from .polygon import PointLocation, Polygon, _classify, convex_hull, is_convex

SCALE = 24
PADDING = 1  # lattice units around the bounding box
POINT_RADIUS = 5

INTERIOR_COLOR = "green"
BOUNDARY_COLOR = "blue"
POCKET_COLOR = "orange"
HULL_DASH = "8 6"
ALTERNATE_POCKET_DASH = "2 5"


def render_svg(
    poly: Polygon,
    show_hull: bool = False,
    show_pockets: bool = False,
    show_decomposition: bool = False,
    show_lattice: bool = False,
) -> str:
    xmin, ymin, xmax, ymax = poly.bounding_box()
    width = (xmax - xmin + 2 * PADDING) * SCALE
    height = (ymax - ymin + 2 * PADDING) * SCALE

    def pt(p) -> str:
        x = (p.x - xmin + PADDING) * SCALE
        y = (ymax + PADDING - p.y) * SCALE
        return f"{x},{y}"

    def path_d(points, close: bool) -> str:
        d = "M" + " L".join(pt(p) for p in points)
        return d + " Z" if close else d

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]

    if show_hull:
        hull = convex_hull(poly.vertices)
        parts.append(
            f'<path d="{path_d(hull, True)}" fill="none" stroke="black" '
            f'stroke-width="1" stroke-dasharray="{HULL_DASH}"/>'
        )

    if show_pockets and not is_convex(poly):
        pockets = all_pocket_paths(poly)
        first = pockets[0]
        parts.append(
            f'<path d="{path_d(first, True)}" fill="{POCKET_COLOR}" '
            f'fill-opacity="0.35" stroke="none"/>'
        )
        parts.append(
            f'<path d="{path_d((first[-1], first[0]), False)}" fill="none" '
            f'stroke="{POCKET_COLOR}" stroke-width="3"/>'
        )
        for other in pockets[1:]:
            parts.append(
                f'<path d="{path_d((other[-1], other[0]), False)}" fill="none" '
                f'stroke="{POCKET_COLOR}" stroke-width="2" '
                f'stroke-dasharray="{ALTERNATE_POCKET_DASH}"/>'
            )

    if show_decomposition:
        tree = decompose(poly)
        for node in iter_tree(tree):
            if isinstance(node, Leaf):
                parts.append(
                    f'<path d="{path_d(node.triangle.vertices, True)}" fill="none" '
                    f'stroke="gray" stroke-width="1"/>'
                )

    parts.append(
        f'<path d="{path_d(poly.vertices, True)}" fill="none" stroke="black" '
        f'stroke-width="2"/>'
    )

    if show_lattice:
        for y in range(ymin, ymax + 1):
            for x in range(xmin, xmax + 1):
                loc = _classify(x, y, poly._coords)
                if loc is PointLocation.INSIDE:
                    color = INTERIOR_COLOR
                elif loc is PointLocation.ON_BOUNDARY:
                    color = BOUNDARY_COLOR
                else:
                    continue
                cx = (x - xmin + PADDING) * SCALE
                cy = (ymax + PADDING - y) * SCALE
                parts.append(
                    f'<circle cx="{cx}" cy="{cy}" r="{POINT_RADIUS}" fill="{color}"/>'
                )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
