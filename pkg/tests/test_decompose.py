import itertools

import pytest
from hypothesis import given, settings, strategies as st

from lattice_pick.counting import (
    PickCounts,
    area2,
    boundary_count,
    counts_by_classification,
    interior_count,
    pick_area2,
)
from lattice_pick.decompose import (
    AlreadyElementaryError,
    EndpointsNotVerticesError,
    Leaf,
    NegativeCountError,
    NotATriangleError,
    NotElementaryError,
    PocketSplit,
    PolygonConvexError,
    Split,
    all_pocket_paths,
    decompose,
    find_good_linepath_convex,
    find_pocket,
    is_elementary,
    is_good_path,
    iter_tree,
    leaf_count,
    node_polygon,
    path_interior_lattice_count,
    pick_union_counts,
    split_sides,
    split_triangle,
    tree_depth,
    triangle_interior_count,
    unimodular_witness,
)
from lattice_pick.exact import LatticePoint, gcd_width, lattice_points_on_segment
from lattice_pick.generate import GeneratorConfig, generate_polygon
from lattice_pick.polygon import Polygon, is_convex, validate_polygon, vertex_list
from conftest import poly

L = LatticePoint


def brute_counts(p: Polygon) -> PickCounts:
    inner, edge = counts_by_classification(p)
    return PickCounts(inner, edge, area2(p))


# -- elementary triangles -------------------------------------------------------------


def test_is_elementary_examples(unit_triangle):
    assert is_elementary(poly([(0, 0), (1, 0), (1, 1)]))
    assert not is_elementary(poly([(0, 0), (3, 0), (0, 3)]))
    assert is_elementary(unit_triangle)


def test_is_elementary_requires_triangle(rectangle):
    with pytest.raises(NotATriangleError):
        is_elementary(rectangle)


def test_is_elementary_matches_brute_force():
    # All lattice triangles in [0,3]^2: counts-based definition agrees with
    # the witness determinant.
    pts = [(x, y) for x in range(4) for y in range(4)]
    for a, b, c in itertools.combinations(pts, 3):
        try:
            tri = poly([a, b, c])
        except Exception:
            continue
        counts = brute_counts(tri)
        expected = counts.interior == 0 and counts.boundary == 3
        assert is_elementary(tri) == expected
        det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        assert expected == (abs(det) == 1)


def test_unimodular_witness_examples(unit_triangle):
    w = unimodular_witness(poly([(0, 0), (1, 0), (1, 1)]))
    assert (w.m11, w.m12, w.m21, w.m22) == (1, 1, 0, 1)
    assert w.translation == L(0, 0)
    assert w.determinant == 1

    w = unimodular_witness(unit_triangle)
    assert (w.m11, w.m12, w.m21, w.m22) == (1, 0, 0, 1)

    w = unimodular_witness(poly([(5, 7), (6, 7), (5, 8)]))
    assert (w.m11, w.m12, w.m21, w.m22) == (1, 0, 0, 1)
    assert w.translation == L(5, 7)
    assert w.unit_triangle_image() == (L(5, 7), L(6, 7), L(5, 8))


def test_unimodular_witness_rejects_non_elementary():
    with pytest.raises(NotElementaryError):
        unimodular_witness(poly([(0, 0), (3, 0), (0, 3)]))


def test_triangle_interior_count_matches_scan():
    pts = [(x, y) for x in range(5) for y in range(5)]
    import random

    rng = random.Random(7)
    for _ in range(300):
        a, b, c = rng.sample(pts, 3)
        try:
            tri = poly([a, b, c])
        except Exception:
            continue
        assert triangle_interior_count(tri) == interior_count(tri) == brute_counts(tri).interior


# -- split_triangle ---------------------------------------------------------------------


def test_split_triangle_interior_case():
    tri = poly([(0, 0), (3, 0), (0, 3)])
    assert brute_counts(tri) == PickCounts(1, 9, 9)
    parts = split_triangle(tri)
    assert len(parts) == 3
    for part in parts:
        assert len(part.vertices) == 3
        assert L(1, 1) in part.vertices
        child = brute_counts(part)
        parent = brute_counts(tri)
        assert child.interior + child.boundary < parent.interior + parent.boundary


def test_split_triangle_boundary_case():
    tri = poly([(0, 0), (2, 0), (0, 1)])
    assert brute_counts(tri) == PickCounts(0, 4, 2)
    parts = split_triangle(tri)
    assert len(parts) == 2
    for part in parts:
        assert L(1, 0) in part.vertices
        assert is_elementary(part)


def test_split_triangle_rejects_elementary(unit_triangle):
    with pytest.raises(AlreadyElementaryError):
        split_triangle(unit_triangle)


# -- good paths ---------------------------------------------------------------------------


def test_is_good_path_examples(square2, pentagon):
    assert is_good_path(square2, vertex_list([(0, 0), (2, 2)]))
    assert not is_good_path(square2, vertex_list([(0, 0), (2, 0)]))
    assert not is_good_path(pentagon, vertex_list([(0, 3), (2, 1), (4, 3)]))


def test_is_good_path_polygonal_chain(pentagon):
    pd = find_pocket(pentagon)
    assert is_good_path(pd.filled, pd.pocket_path)


def test_is_good_path_endpoint_errors(square2):
    with pytest.raises(EndpointsNotVerticesError):
        is_good_path(square2, vertex_list([(1, 1), (2, 2)]))


def test_is_good_path_rejects_outside_chain(pentagon):
    # Chord through the dent runs outside the polygon.
    assert not is_good_path(pentagon, vertex_list([(4, 3), (0, 3)]))


def test_split_sides_square(square2):
    s1, s2 = split_sides(square2.vertices, vertex_list([(0, 0), (2, 2)]))
    assert s1 == vertex_list([(0, 0), (2, 2), (0, 2)])
    assert s2 == vertex_list([(0, 0), (2, 0), (2, 2)])


# -- convex chord search ---------------------------------------------------------------------


def test_convex_chord_three_corner_case(fig_triangle_quad):
    path = find_good_linepath_convex(fig_triangle_quad)
    assert path.vertices == vertex_list([(2, 2), (0, 0)])
    assert is_good_path(fig_triangle_quad, path.vertices)


def test_convex_chord_square(square2):
    path = find_good_linepath_convex(square2)
    assert set(map(tuple, path.vertices)) in (
        {(0, 0), (2, 2)},
        {(2, 0), (0, 2)},
    )
    assert is_good_path(square2, path.vertices)


def test_convex_chord_hexagon(hexagon):
    path = find_good_linepath_convex(hexagon)
    # Exhaustively enumerate the chords that qualify; the returned one
    # must be among them.
    vts = hexagon.vertices
    good = set()
    for i in range(len(vts)):
        for j in range(i + 1, len(vts)):
            if is_good_path(hexagon, (vts[i], vts[j])):
                good.add(frozenset(((vts[i].x, vts[i].y), (vts[j].x, vts[j].y))))
    assert good
    key = frozenset(((path.vertices[0].x, path.vertices[0].y), (path.vertices[-1].x, path.vertices[-1].y)))
    assert key in good


def test_convex_chord_formal_pentagon(formal_pentagon_square):
    path = find_good_linepath_convex(formal_pentagon_square)
    assert is_good_path(formal_pentagon_square, path.vertices)


@given(st.integers(min_value=0, max_value=400))
@settings(max_examples=60, deadline=None)
def test_convex_chord_on_random_hulls(seed):
    import random

    from lattice_pick.polygon import AllCollinearError, convex_hull

    rng = random.Random(seed)
    pts = [L(rng.randint(0, 20), rng.randint(0, 20)) for _ in range(rng.randint(5, 14))]
    try:
        hull = convex_hull(pts)
    except AllCollinearError:
        return
    if len(hull) < 4:
        return
    p = Polygon(tuple(hull))
    path = find_good_linepath_convex(p)
    assert is_good_path(p, path.vertices)


# -- pockets ------------------------------------------------------------------------------------


def test_find_pocket_pentagon(pentagon):
    pd = find_pocket(pentagon)
    assert pd.rotation == 2
    assert pd.pocket_path == vertex_list([(4, 3), (2, 1), (0, 3)])
    assert pd.pocket.vertices == vertex_list([(4, 3), (2, 1), (0, 3)])
    # Same closed chain as the rectangle, listed from the pocket mouth.
    assert pd.filled.vertices == vertex_list([(4, 3), (0, 3), (0, 0), (4, 0)])
    assert area2(pentagon) == area2(pd.filled) - area2(pd.pocket)


def test_find_pocket_rejects_convex(square2):
    with pytest.raises(PolygonConvexError):
        find_pocket(square2)


def test_comb_has_three_pockets_and_picks_first(comb13):
    paths = all_pocket_paths(comb13)
    assert len(paths) == 3
    assert paths[0] == vertex_list([(10, 6), (9, 3), (8, 6)])
    pd = find_pocket(comb13)
    assert pd.pocket_path == paths[0]
    assert len(pd.filled.vertices) == 12
    assert area2(comb13) == area2(pd.filled) - area2(pd.pocket)


def test_pocket_filling_chord_meets_polygon_only_at_ends(pentagon, comb13):
    from lattice_pick.exact import RationalPoint, Segment, segment_intersection

    for p in (pentagon, comb13):
        pd = find_pocket(p)
        a, b = pd.pocket_path[0], pd.pocket_path[-1]
        chord = Segment(RationalPoint(b.x, b.y), RationalPoint(a.x, a.y))
        allowed = {(a.x, a.y), (b.x, b.y)}
        for u, v in p.edges():
            hit = segment_intersection(chord, Segment(RationalPoint(u.x, u.y), RationalPoint(v.x, v.y)))
            if hit is None:
                continue
            assert isinstance(hit, RationalPoint)
            assert (hit.x, hit.y) in allowed


# -- pick_union_counts -----------------------------------------------------------------------------


def test_pick_union_split_square_diagonal(square2):
    # Oracle-pinned S convention: the diagonal (0,0)-(2,2) carries one
    # lattice point besides its endpoints.
    t1 = poly([(0, 0), (2, 2), (0, 2)])
    t2 = poly([(0, 0), (2, 0), (2, 2)])
    c1, c2 = brute_counts(t1), brute_counts(t2)
    assert c1 == PickCounts(0, 6, 4)
    assert c2 == PickCounts(0, 6, 4)
    s = path_interior_lattice_count(vertex_list([(0, 0), (2, 2)]))
    assert s == 1
    parent = pick_union_counts("split", c1, c2, s)
    assert parent == brute_counts(square2) == PickCounts(1, 8, 8)


def test_pick_union_pocket_pentagon(pentagon, rectangle):
    pocket = poly([(4, 3), (2, 1), (0, 3)])
    filled_counts = brute_counts(rectangle)
    pocket_counts = brute_counts(pocket)
    assert filled_counts == PickCounts(6, 14, 24)
    assert pocket_counts == PickCounts(1, 8, 8)
    s = path_interior_lattice_count(vertex_list([(4, 3), (2, 1), (0, 3)]))
    assert s == 3
    parent = pick_union_counts("pocket", filled_counts, pocket_counts, s)
    assert parent == brute_counts(pentagon) == PickCounts(2, 14, 16)


def test_pick_union_preserves_zero_residual():
    c1 = PickCounts(0, 5, 3)
    c2 = PickCounts(2, 7, 9)
    assert pick_area2(c1.interior, c1.boundary) == c1.area2
    assert pick_area2(c2.interior, c2.boundary) == c2.area2
    for s in range(4):
        u = pick_union_counts("split", c1, c2, s)
        assert pick_area2(u.interior, u.boundary) == u.area2


def test_pick_union_negative_counts():
    with pytest.raises(NegativeCountError):
        pick_union_counts("pocket", PickCounts(0, 3, 1), PickCounts(5, 3, 9), 0)


# -- decompose -------------------------------------------------------------------------------------


def test_decompose_unit_triangle(unit_triangle):
    tree = decompose(unit_triangle)
    assert isinstance(tree, Leaf)
    assert leaf_count(tree) == 1
    assert tree_depth(tree) == 0


def test_decompose_square_leaf_count(square2):
    tree = decompose(square2)
    assert isinstance(tree, Split)
    assert leaf_count(tree) == area2(square2) == 8


def test_decompose_pentagon(pentagon):
    tree = decompose(pentagon)
    assert isinstance(tree, PocketSplit)


def walk_check(tree, seen_leaves):
    """Re-verify the structural invariants of every node."""
    for node in iter_tree(tree):
        if isinstance(node, Leaf):
            assert is_elementary(node.triangle)
            assert abs(node.witness.determinant) == 1
            assert node.witness.unit_triangle_image() == node.triangle.vertices
            seen_leaves.append(node.triangle)
        elif isinstance(node, Split):
            parent = node.parent
            assert is_good_path(parent, node.path.vertices)
            s1, s2 = split_sides(parent.vertices, node.path.vertices)
            validate_polygon(s1)
            validate_polygon(s2)
            assert area2(parent) == area2(Polygon(s1)) + area2(Polygon(s2))
        else:
            pd = node.pocket
            assert area2(node.parent) == area2(pd.filled) - area2(pd.pocket)
            validate_polygon(pd.filled.vertices)
            validate_polygon(pd.pocket.vertices)


def test_decompose_invariants_on_fixtures(pentagon, comb13, formal_pentagon_square, hexagon):
    for p in (pentagon, comb13, formal_pentagon_square, hexagon):
        leaves = []
        walk_check(decompose(p), leaves)
        assert all(area2(t) == 1 for t in leaves)


@given(st.integers(min_value=0, max_value=400))
@settings(max_examples=25, deadline=None)
def test_decompose_invariants_on_generated(seed):
    p = generate_polygon(GeneratorConfig(3 + seed % 10, 12, seed))
    tree = decompose(p)
    leaves = []
    walk_check(tree, leaves)
    # Pocket-free trees tile the polygon: one leaf per half unit of area.
    if not any(isinstance(n, PocketSplit) for n in iter_tree(tree)):
        assert leaf_count(tree) == area2(p)


def refinement_triangles(node):
    """The triangles a 3-way refinement produces (direct or through the
    intermediate quad)."""
    out = []
    for child in (node.left, node.right):
        p = node_polygon(child)
        if len(p.vertices) == 3:
            out.append(p)
        elif isinstance(child, Split) and len(child.parent.vertices) == 4:
            out.append(node_polygon(child.left))
            out.append(node_polygon(child.right))
    return out


def test_termination_measures(pentagon, comb13):
    for p in (pentagon, comb13):
        for node in iter_tree(decompose(p)):
            if isinstance(node, PocketSplit):
                assert len(node.pocket.filled.vertices) < len(node.parent.vertices)
                assert len(node.pocket.pocket.vertices) < len(node.parent.vertices)
            elif isinstance(node, Split) and len(node.parent.vertices) > 4:
                for child in (node.left, node.right):
                    assert len(node_polygon(child).vertices) < len(node.parent.vertices)
            elif isinstance(node, Split) and len(node.parent.vertices) == 3:
                pc = brute_counts(node.parent)
                for t in refinement_triangles(node):
                    tc = brute_counts(t)
                    assert tc.interior + tc.boundary < pc.interior + pc.boundary


def test_decompose_deterministic(pentagon, comb13):
    for p in (pentagon, comb13):
        assert decompose(p) == decompose(p)
