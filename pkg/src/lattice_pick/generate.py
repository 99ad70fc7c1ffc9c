"""Deterministic random lattice polygons for property campaigns.

Rejection sampling: draw distinct lattice points, order them by exact
angle around their centroid (star-shaped layout), accept iff the chain is
simple.  The comparator works on integer cross products, so identical
configurations always produce identical polygons.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import cmp_to_key

from .exact import LatticePoint
from .polygon import Polygon, PolygonError

DEFAULT_MAX_RETRIES = 1000
MAX_RETRIES_ENV = "LATTICE_PICK_MAX_RETRIES"


class GenerationExhaustedError(Exception):
    """No simple polygon found within the retry budget."""


@dataclass(frozen=True)
class GeneratorConfig:
    vertex_count: int
    coord_bound: int
    seed: int
    max_retries: int = DEFAULT_MAX_RETRIES

    def __post_init__(self):
        if self.vertex_count < 3:
            raise ValueError("vertex_count must be at least 3")
        if self.coord_bound < 0:
            raise ValueError("coord_bound must be nonnegative")


def max_retries_from_env(default: int = DEFAULT_MAX_RETRIES) -> int:
    raw = os.environ.get(MAX_RETRIES_ENV)
    if raw is None:
        return default
    try:
        value = int(raw, 10)
    except ValueError:
        raise ValueError(f"{MAX_RETRIES_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{MAX_RETRIES_ENV} must be positive")
    return value


def generate_polygon(config: GeneratorConfig) -> Polygon:
    """A simple lattice polygon with exactly vertex_count vertices.

    Deterministic in the config; raises GenerationExhaustedError after
    max_retries failed draws (tiny coordinate ranges can make success
    impossible outright).
    """
    rng = random.Random(config.seed)
    n = config.vertex_count
    side = config.coord_bound + 1
    for _ in range(config.max_retries):
        if side * side < n:
            continue
        points = _draw_distinct(rng, n, config.coord_bound)
        if points is None:
            continue
        ordered = _angular_sort(points)
        if ordered is None:
            continue
        try:
            return Polygon(tuple(ordered))
        except PolygonError:
            continue
    raise GenerationExhaustedError(
        f"no simple polygon with {n} vertices in [0, {config.coord_bound}]^2 "
        f"after {config.max_retries} attempts"
    )


def _draw_distinct(rng, n, bound):
    points: list[LatticePoint] = []
    seen = set()
    for _ in range(50 * n):
        p = (rng.randint(0, bound), rng.randint(0, bound))
        if p not in seen:
            seen.add(p)
            points.append(LatticePoint(*p))
            if len(points) == n:
                return points
    return None


def _angular_sort(points):
    """Order points by exact angle around their centroid, nearest first on
    ties; None when some point sits exactly on the centroid."""
    n = len(points)
    sx = sum(p.x for p in points)
    sy = sum(p.y for p in points)
    # Work with n*p - centroid-sum so everything stays integral.
    vecs = []
    for p in points:
        dx = n * p.x - sx
        dy = n * p.y - sy
        if dx == 0 and dy == 0:
            return None
        vecs.append((p, dx, dy))

    def half(dx, dy):
        # Angle 0 (east) inclusive up to, not including, west: half 0.
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def compare(a, b):
        _, ax, ay = a
        _, bx, by = b
        ha, hb = half(ax, ay), half(bx, by)
        if ha != hb:
            return ha - hb
        cross = ax * by - ay * bx
        if cross != 0:
            return -1 if cross > 0 else 1
        # Same ray from the centroid: nearest first.
        ra = ax * ax + ay * ay
        rb = bx * bx + by * by
        return -1 if ra < rb else (1 if ra > rb else 0)

    return [p for p, _, _ in sorted(vecs, key=cmp_to_key(compare))]
