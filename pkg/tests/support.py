"""Shared fixtures: named polytopes and a seeded random polytope generator."""

from __future__ import annotations

import random
import warnings
from fractions import Fraction

from polyadjoint.polytope import GeometryError, Polytope


def octahedron() -> Polytope:
    return Polytope.from_vertices(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    )


def cube() -> Polytope:
    return Polytope.from_inequalities(
        [(1, 1, 0, 0), (1, -1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0), (1, 0, 0, 1), (1, 0, 0, -1)], 3
    )


def unit_square() -> Polytope:
    return Polytope.from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)])


def segment() -> Polytope:
    return Polytope.from_vertices([(0,), (1,)])


def standard_simplex(n: int) -> Polytope:
    pts = [tuple(0 for _ in range(n))]
    pts += [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return Polytope.from_vertices(pts)


TRUNCATED_SIMPLEX_INEQUALITIES = [
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1),
    (4, -1, -1, -1, -1),
    (6, -2, 0, -1, 0),
    (6, 0, -2, 0, 1),
]


def truncated_simplex() -> Polytope:
    return Polytope.from_inequalities(TRUNCATED_SIMPLEX_INEQUALITIES, 4)


def _coordinate(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2, 3)))


def random_polytope(rng: random.Random, n: int, max_facets: int = 10, lattice: bool = False) -> Polytope:
    """Hull of a few random rational points with at most ``max_facets`` facets.

    ``lattice`` draws from {-1, 0, 1}^n plus one extra generic point, which
    produces parallel facets and non-simple arrangements.
    """
    while True:
        k = rng.randint(n + 1, 8 if n == 2 else n + 3)
        if lattice:
            pts = [tuple(Fraction(rng.randint(-1, 1)) for _ in range(n)) for _ in range(k + 1)]
        else:
            pts = [tuple(_coordinate(rng) for _ in range(n)) for _ in range(k)]
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                p = Polytope.from_vertices(pts)
        except GeometryError:
            continue
        if n + 2 <= p.num_facets <= max_facets:
            return p


def random_polygon(rng: random.Random, max_edges: int = 7) -> Polytope:
    while True:
        k = rng.randint(4, 8)
        pts = [(_coordinate(rng), _coordinate(rng)) for _ in range(k)]
        try:
            p = Polytope.from_vertices(pts)
        except GeometryError:
            continue
        if 3 <= p.num_facets <= max_edges:
            return p
