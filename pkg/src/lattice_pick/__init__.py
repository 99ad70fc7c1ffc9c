"""Exact lattice-polygon kernel: Pick counts and certified decompositions."""

from .certificate import (
    Certificate,
    CheckReport,
    MalformedCertificateError,
    Violation,
    check_certificate,
    deserialize,
    make_certificate,
    serialize,
)
from .counting import (
    PickCounts,
    PickReport,
    area2,
    boundary_count,
    counts_by_classification,
    interior_count,
    pick_area2,
    verify_pick,
)
from .decompose import (
    DecompositionTree,
    Leaf,
    PocketDecomposition,
    PocketSplit,
    Split,
    SplitPath,
    UnimodularWitness,
    decompose,
    find_good_linepath_convex,
    find_pocket,
    is_elementary,
    is_good_path,
    leaf_count,
    pick_union_counts,
    split_triangle,
    tree_depth,
    unimodular_witness,
)
from .exact import (
    LatticePoint,
    Orientation,
    PointOnSegment,
    RationalPoint,
    Segment,
    gcd_width,
    orientation,
    point_on_segment,
    segment_intersection,
)
from .generate import GenerationExhaustedError, GeneratorConfig, generate_polygon
from .polygon import (
    PointLocation,
    Polygon,
    classify_point,
    convex_hull,
    extreme_point_count,
    is_convex,
    is_simple,
    rotate_vertices,
    validate_polygon,
    vertex_list,
)
from .render_svg import render_svg

__all__ = [
    "Certificate",
    "CheckReport",
    "DecompositionTree",
    "GenerationExhaustedError",
    "GeneratorConfig",
    "LatticePoint",
    "Leaf",
    "MalformedCertificateError",
    "Orientation",
    "PickCounts",
    "PickReport",
    "PocketDecomposition",
    "PocketSplit",
    "PointLocation",
    "PointOnSegment",
    "Polygon",
    "RationalPoint",
    "Segment",
    "Split",
    "SplitPath",
    "UnimodularWitness",
    "Violation",
    "area2",
    "boundary_count",
    "check_certificate",
    "classify_point",
    "convex_hull",
    "counts_by_classification",
    "decompose",
    "deserialize",
    "extreme_point_count",
    "find_good_linepath_convex",
    "find_pocket",
    "gcd_width",
    "generate_polygon",
    "interior_count",
    "is_convex",
    "is_elementary",
    "is_good_path",
    "is_simple",
    "leaf_count",
    "make_certificate",
    "orientation",
    "pick_area2",
    "pick_union_counts",
    "point_on_segment",
    "render_svg",
    "rotate_vertices",
    "segment_intersection",
    "serialize",
    "split_triangle",
    "tree_depth",
    "unimodular_witness",
    "validate_polygon",
    "verify_pick",
    "vertex_list",
]
