import pytest

from lattice_pick.polygon import Polygon, vertex_list


def poly(points) -> Polygon:
    return Polygon(vertex_list(points))


@pytest.fixture
def unit_triangle():
    return poly([(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def unit_square():
    return poly([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def square2():
    return poly([(0, 0), (2, 0), (2, 2), (0, 2)])


@pytest.fixture
def rectangle():
    return poly([(0, 0), (4, 0), (4, 3), (0, 3)])


@pytest.fixture
def pentagon():
    # Non-convex: (2, 1) dents the top edge inward.
    return poly([(0, 0), (4, 0), (4, 3), (2, 1), (0, 3)])


@pytest.fixture
def fig_triangle_quad():
    # Geometrically a triangle, formally a quadrilateral: (2, 2) sits on
    # the hull edge (4,0)-(0,4).
    return poly([(0, 0), (4, 0), (2, 2), (0, 4)])


@pytest.fixture
def formal_pentagon_square():
    # A square listed with a collinear bottom-edge vertex.
    return poly([(0, 0), (2, 0), (4, 0), (4, 4), (0, 4)])


@pytest.fixture
def hexagon():
    return poly([(0, 1), (1, 0), (2, 0), (3, 1), (2, 2), (1, 2)])


@pytest.fixture
def comb13():
    # Three dents along the top edge: three pockets, 13 vertices, one
    # collinear bottom vertex.
    return poly(
        [
            (0, 0),
            (6, 0),
            (12, 0),
            (12, 6),
            (10, 6),
            (9, 3),
            (8, 6),
            (6, 6),
            (5, 2),
            (4, 6),
            (2, 6),
            (1, 3),
            (0, 6),
        ]
    )


@pytest.fixture
def staircase():
    # Horizontal edge on an interior lattice row (scanline stress).
    return poly([(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)])
