"""Rational convex polytopes with both representations.

A facet is stored as a linear form ``(a_0, a_1, ..., a_n)`` in homogeneous
coordinates, read on the chart ``X_0 = 1`` as ``a_0 + sum a_i x_i >= 0``.
Forms are kept in primitive integer form, rescaled only by positive factors
so that the orientation (nonnegative on the polytope) survives.

Representation conversions enumerate subsets by brute force.  That is
exponential in the dimension, but exact and simple, and fine for the sizes
this package targets (n <= 5, a few dozen vertices).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactlin import (
    Vector,
    affine_rank,
    as_fraction,
    dot,
    inverse,
    kernel_basis,
    matvec,
    primitive_integer,
    rank,
    solve,
    NoSolution,
    vector,
)


class GeometryError(ValueError):
    """A geometric precondition failed (not full-dimensional, not interior, ...)."""


class UnboundedError(GeometryError):
    """The inequality system describes an unbounded or empty region."""


def normalize_form(form: Sequence) -> Vector:
    """Primitive integer form with the orientation kept."""
    return primitive_integer(form, positive_leading=False)


def evaluate_form(form: Sequence, point: Sequence) -> Fraction:
    """Value of a linear form at an affine point (homogenized with X_0 = 1)."""
    return form[0] + dot(form[1:], point)


def restrict_form(form: Sequence, hyperplane: Sequence, pivot: int) -> Vector:
    """Substitute ``X_pivot = -(sum_{i != pivot} h_i X_i) / h_pivot`` into a form.

    The result is a form in the remaining variables, in their original order.
    """
    hp = hyperplane[pivot]
    if hp == 0:
        raise GeometryError(f"pivot X{pivot} has zero coefficient in the hyperplane")
    g = form[pivot]
    return tuple(
        form[i] - g * hyperplane[i] / hp for i in range(len(form)) if i != pivot
    )


def default_pivot(form: Sequence) -> int:
    """Highest-index variable with a nonzero coefficient."""
    for i in range(len(form) - 1, -1, -1):
        if form[i] != 0:
            return i
    raise GeometryError("zero linear form")


@dataclass(frozen=True)
class LinearSubspace:
    """A projective linear space given by equations and by spanning points.

    ``defining_forms`` are linearly independent (codim many) and
    ``spanning_points`` are a primitive integer basis of their common kernel.
    """

    defining_forms: tuple[Vector, ...]
    spanning_points: tuple[Vector, ...]

    @classmethod
    def from_forms(cls, forms: Sequence[Sequence], nvars: int) -> LinearSubspace:
        chosen: list[Vector] = []
        for f in forms:
            f = vector(f)
            if rank(chosen + [f]) > len(chosen):
                chosen.append(f)
        points = kernel_basis(chosen, ncols=nvars)
        return cls(tuple(chosen), tuple(points))

    @property
    def nvars(self) -> int:
        return len(self.spanning_points[0]) if self.spanning_points else len(self.defining_forms[0])

    @property
    def dim(self) -> int:
        """Projective dimension (-1 for the empty space)."""
        return len(self.spanning_points) - 1

    @property
    def codim(self) -> int:
        return len(self.defining_forms)


@dataclass(frozen=True)
class Polytope:
    """A full-dimensional polytope in R^n with vertices, facets and incidence.

    Use :meth:`from_vertices` or :meth:`from_inequalities`; the raw
    constructor only validates the data it is given.
    """

    dim: int
    vertices: tuple[Vector, ...]
    facets: tuple[Vector, ...]
    incidence: tuple[tuple[bool, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(vector(v) for v in self.vertices)
        forms = tuple(vector(f) for f in self.facets)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "facets", forms)
        inc = tuple(
            tuple(evaluate_form(f, v) == 0 for f in forms) for v in verts
        )
        object.__setattr__(self, "incidence", inc)
        self._validate()

    def _validate(self) -> None:
        n = self.dim
        if n < 0:
            raise GeometryError("negative dimension")
        if any(len(v) != n for v in self.vertices):
            raise GeometryError("vertex of the wrong length")
        if any(len(f) != n + 1 for f in self.facets):
            raise GeometryError("facet form of the wrong length")
        if n == 0:
            if self.vertices != ((),):
                raise GeometryError("a 0-dimensional polytope is a single point")
            if any(f[0] <= 0 for f in self.facets):
                raise GeometryError("0-dimensional facet forms must be positive constants")
            return
        if affine_rank(self.vertices) != n + 1:
            raise GeometryError("vertices do not affinely span R^n")
        for j, f in enumerate(self.facets):
            if any(evaluate_form(f, v) < 0 for v in self.vertices):
                raise GeometryError(f"facet {j} is negative at some vertex")
            if affine_rank(self.facet_vertices(j)) != n:
                raise GeometryError(f"form {j} does not define a facet")
        normalized = {primitive_integer(f) for f in self.facets}
        if len(normalized) != len(self.facets):
            raise GeometryError("repeated facet hyperplane")
        for i in range(len(self.vertices)):
            if rank([self.facets[j][1:] for j in self.vertex_facets(i)]) != n:
                raise GeometryError(f"point {i} is not a vertex")

    @classmethod
    def from_vertices(cls, points: Sequence[Sequence]) -> Polytope:
        """Convex hull of points; non-vertex points are discarded."""
        pts: list[Vector] = []
        for p in points:
            p = vector(p)
            if p not in pts:
                pts.append(p)
        if not pts:
            raise GeometryError("no points")
        n = len(pts[0])
        if n == 0:
            return cls(0, ((),), ((Fraction(1),),))
        forms = hull_facets(pts)
        verts = [
            p for p in pts
            if rank([f[1:] for f in forms if evaluate_form(f, p) == 0]) == n
        ]
        return cls(n, tuple(verts), tuple(forms))

    @classmethod
    def from_inequalities(cls, forms: Sequence[Sequence], dim: int) -> Polytope:
        """Polytope ``{x : a_0 + a.x >= 0}``; redundant inequalities are dropped."""
        normalized: list[Vector] = []
        for f in forms:
            f = vector(f)
            if len(f) != dim + 1:
                raise GeometryError("inequality of the wrong length")
            if not any(f[1:]):
                if f[0] < 0:
                    raise UnboundedError("infeasible constant inequality")
                continue
            f = normalize_form(f)
            if f not in normalized:
                normalized.append(f)
        verts = vertex_enumeration(normalized, dim)
        kept = []
        for i, f in enumerate(normalized):
            on = [v for v in verts if evaluate_form(f, v) == 0]
            if affine_rank(on) == dim:
                kept.append(f)
            else:
                warnings.warn(f"inequality {i} is redundant and was dropped", stacklevel=2)
        return cls(dim, tuple(verts), tuple(kept))

    @property
    def num_facets(self) -> int:
        return len(self.facets)

    def facet_vertices(self, j: int) -> list[Vector]:
        return [v for v, row in zip(self.vertices, self.incidence) if row[j]]

    def facet_vertex_indices(self, j: int) -> list[int]:
        return [i for i, row in enumerate(self.incidence) if row[j]]

    def vertex_facets(self, i: int) -> list[int]:
        return [j for j, b in enumerate(self.incidence[i]) if b]

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    def facet_index(self, form: Sequence) -> int | None:
        """Index of the facet projectively equal to ``form``, if any."""
        target = primitive_integer(form)
        for j, f in enumerate(self.facets):
            if primitive_integer(f) == target:
                return j
        return None

    def is_incident(self, g: int, h: int) -> bool:
        """Whether facets g and h meet in a codimension-2 face."""
        if g == h:
            return False
        common = [v for v, row in zip(self.vertices, self.incidence) if row[g] and row[h]]
        return affine_rank(common) == self.dim - 1


def hull_facets(points: Sequence[Sequence]) -> list[Vector]:
    """Facet forms of the convex hull of affinely spanning points.

    Every n-subset spanning a hyperplane is tested; the hyperplane is kept if
    all points lie weakly on one side.
    """
    pts = [vector(p) for p in points]
    if not pts:
        raise GeometryError("no points")
    n = len(pts[0])
    if affine_rank(pts) != n + 1:
        raise GeometryError("points are not full-dimensional")
    homog = [(Fraction(1),) + p for p in pts]
    found: list[Vector] = []
    seen: set[Vector] = set()
    for subset in combinations(range(len(pts)), n):
        ker = kernel_basis([homog[i] for i in subset])
        if len(ker) != 1:
            continue
        form = ker[0]
        key = primitive_integer(form)
        if key in seen:
            continue
        vals = [dot(form, h) for h in homog]
        if all(v >= 0 for v in vals):
            oriented = form
        elif all(v <= 0 for v in vals):
            oriented = tuple(-a for a in form)
        else:
            continue
        seen.add(key)
        found.append(normalize_form(oriented))
    return found


def vertex_enumeration(forms: Sequence[Sequence], dim: int) -> list[Vector]:
    """Vertices of ``{x in R^dim : a_0 + a.x >= 0 for all forms}``.

    Raises:
        UnboundedError: the region is unbounded or empty.
        GeometryError: the region is not full-dimensional.
    """
    forms = [vector(f) for f in forms]
    n = dim
    linear = [f[1:] for f in forms]
    if rank(linear) < n:
        raise UnboundedError("inequalities leave a lineality direction")
    for subset in combinations(range(len(forms)), n - 1):
        rows = [linear[i] for i in subset]
        ker = kernel_basis(rows, ncols=n)
        if len(ker) != 1:
            continue
        r = ker[0]
        vals = [dot(a, r) for a in linear]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            raise UnboundedError("inequalities admit a recession direction")
    verts: list[Vector] = []
    for subset in combinations(range(len(forms)), n):
        a = [linear[i] for i in subset]
        if rank(a) != n:
            continue
        try:
            x = solve(a, [-forms[i][0] for i in subset])
        except NoSolution:
            continue
        if all(evaluate_form(f, x) >= 0 for f in forms) and x not in verts:
            verts.append(x)
    if not verts:
        raise UnboundedError("inequalities are infeasible")
    verts.sort()
    if affine_rank(verts) != n + 1:
        raise GeometryError("feasible region is not full-dimensional")
    return verts


def interior_point(p: Polytope) -> Vector:
    """Vertex centroid, which is strictly inside every facet."""
    k = len(p.vertices)
    return tuple(sum(coords, Fraction(0)) / k for coords in zip(*p.vertices)) if p.dim else ()


def is_interior(p: Polytope, z: Sequence) -> bool:
    return all(evaluate_form(f, z) > 0 for f in p.facets)


def polar_dual(p: Polytope, z: Sequence | None = None) -> Polytope:
    """Polar dual of ``p - z``.

    Facet j of ``p`` becomes vertex j of the dual and vertex i of ``p``
    becomes facet i, so the incidence matrix is transposed.
    """
    z = vector(z) if z is not None else tuple(Fraction(0) for _ in range(p.dim))
    if not is_interior(p, z):
        raise GeometryError("translation point is not interior")
    dual_vertices = []
    for f in p.facets:
        c = evaluate_form(f, z)
        dual_vertices.append(tuple(a / c for a in f[1:]))
    dual_facets = []
    for v in p.vertices:
        w = tuple(a - b for a, b in zip(v, z))
        dual_facets.append(normalize_form((Fraction(1),) + w))
    return Polytope(p.dim, tuple(dual_vertices), tuple(dual_facets))


def translate(p: Polytope, z: Sequence) -> Polytope:
    """The polytope ``p - z``."""
    z = vector(z)
    verts = tuple(tuple(a - b for a, b in zip(v, z)) for v in p.vertices)
    forms = tuple(
        normalize_form((evaluate_form(f, z),) + tuple(f[1:])) for f in p.facets
    )
    return Polytope(p.dim, verts, forms)


def facet_polytope(p: Polytope, h: int, pivot: int | None = None) -> tuple[Polytope, list[int]]:
    """The facet ``P cap H`` as a polytope one dimension down.

    Coordinates on H are the homogeneous coordinates with ``X_pivot``
    removed.  Returns the polytope and the indices of the facets G with G|H,
    in increasing order; facet k of the result is the restriction of facet
    ``incident[k]`` of ``p``.
    """
    if not 0 <= h < p.num_facets:
        raise GeometryError(f"facet index {h} out of range")
    form = p.facets[h]
    if pivot is None:
        pivot = default_pivot(form)
    if pivot < 1 or pivot > p.dim:
        raise GeometryError("pivot must be an affine variable X1..Xn")
    if form[pivot] == 0:
        raise GeometryError(f"pivot X{pivot} has zero coefficient in facet {h}")
    k = pivot - 1
    verts = tuple(v[:k] + v[k + 1:] for v in p.facet_vertices(h))
    incident = [g for g in range(p.num_facets) if p.is_incident(g, h)]
    forms = tuple(normalize_form(restrict_form(p.facets[g], form, pivot)) for g in incident)
    return Polytope(p.dim - 1, verts, forms), incident


def face_of_subspace(p: Polytope, sub: LinearSubspace) -> tuple[list[int], int]:
    """Vertices of ``p`` on a subspace cut out by facet forms, and the face dimension.

    The empty face has dimension -1.
    """
    for f in sub.defining_forms:
        if p.facet_index(f) is None:
            raise GeometryError("subspace is not cut out by facet forms")
    idx = [
        i for i, v in enumerate(p.vertices)
        if all(evaluate_form(f, v) == 0 for f in sub.defining_forms)
    ]
    return idx, affine_rank([p.vertices[i] for i in idx]) - 1


def apply_projective_map(p: Polytope, m: Sequence[Sequence]) -> Polytope:
    """Image of ``p`` under ``X -> m X`` on homogeneous coordinates.

    The hyperplane sent to infinity must miss ``p``.  Facet forms transform
    contragrediently, ``a -> a m^{-1}``, with the sign fixed so they stay
    nonnegative on the image.
    """
    m = [vector(r) for r in m]
    n = p.dim
    if len(m) != n + 1 or any(len(r) != n + 1 for r in m):
        raise GeometryError("projective map has the wrong size")
    try:
        minv = inverse(m)
    except ValueError:
        raise GeometryError("projective map is not invertible") from None
    images = [matvec(m, (Fraction(1),) + v) for v in p.vertices]
    signs = {(x[0] > 0) - (x[0] < 0) for x in images}
    if 0 in signs or len(signs) != 1:
        raise GeometryError("projective map sends part of the polytope to infinity")
    sign = signs.pop()
    verts = tuple(tuple(c / x[0] for c in x[1:]) for x in images)
    forms = []
    for f in p.facets:
        g = tuple(dot(f, col) for col in zip(*minv))
        forms.append(normalize_form(tuple(sign * c for c in g)))
    return Polytope(n, verts, tuple(forms))


def as_homogeneous(point: Sequence) -> Vector:
    return (Fraction(1),) + vector(point)


__all__ = [
    "GeometryError",
    "LinearSubspace",
    "Polytope",
    "UnboundedError",
    "apply_projective_map",
    "as_fraction",
    "as_homogeneous",
    "default_pivot",
    "evaluate_form",
    "face_of_subspace",
    "facet_polytope",
    "hull_facets",
    "interior_point",
    "is_interior",
    "normalize_form",
    "polar_dual",
    "restrict_form",
    "translate",
    "vertex_enumeration",
]
