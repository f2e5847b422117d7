"""Adjoint polynomials: triangulation formula, interpolation, order checks.

The triangulation route works on the polar dual of the polytope translated
to an interior point, sums ``vol(sigma) * prod l_v`` over a pulling
triangulation (the product running over dual vertices not in the simplex)
and pulls the result back through the translation.  Volumes are absolute
determinants of edge matrices, i.e. n! times the Euclidean volume; the
global factor is irrelevant because adjoints are compared up to scaling.

The interpolation route solves for the degree ``d - n - 1`` polynomial whose
partial derivatives of order below ``ord_P(x)`` vanish at every point x of
the point residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Sequence

from .arrangement import Arrangement, FlatData
from .exactlin import Vector, affine_rank, determinant, kernel_basis, primitive_integer
from .poly import HomoPoly, _mul_terms, monomials, vanishing_order_along
from .polytope import GeometryError, Polytope, interior_point, polar_dual


class KernelDimensionError(RuntimeError):
    """The interpolation system did not have a one-dimensional solution space."""

    def __init__(self, dimension: int):
        super().__init__(f"interpolation kernel has dimension {dimension}, expected 1")
        self.dimension = dimension


@dataclass(frozen=True)
class Triangulation:
    simplices: tuple[tuple[int, ...], ...]
    base: Polytope

    def volume(self, simplex: Sequence[int]) -> Fraction:
        return simplex_volume(self.base, simplex)

    def total_volume(self) -> Fraction:
        return sum((self.volume(s) for s in self.simplices), Fraction(0))


def simplex_volume(q: Polytope, simplex: Sequence[int]) -> Fraction:
    """Absolute determinant of the edge matrix of a full-dimensional simplex."""
    pts = [q.vertices[i] for i in simplex]
    base = pts[0]
    edges = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    return abs(determinant(edges)) if edges else Fraction(1)


def _face_facets_factory(q: Polytope):
    facet_sets = [frozenset(q.facet_vertex_indices(j)) for j in range(q.num_facets)]

    @lru_cache(maxsize=None)
    def face_facets(face: frozenset[int]) -> tuple[frozenset[int], ...]:
        """Facets of a face, as vertex index sets, in a deterministic order."""
        k = affine_rank([q.vertices[i] for i in face])
        found = []
        for fs in facet_sets:
            sub = face & fs
            if sub and sub not in found and affine_rank([q.vertices[i] for i in sub]) == k - 1:
                found.append(sub)
        return tuple(found)

    return face_facets


def is_face(q: Polytope, vertex_set) -> bool:
    """Whether a set of vertex indices is the vertex set of a nonempty face."""
    c = frozenset(vertex_set)
    if not c or not c <= set(range(len(q.vertices))):
        return False
    closure = set(range(len(q.vertices)))
    for j in range(q.num_facets):
        fs = set(q.facet_vertex_indices(j))
        if c <= fs:
            closure &= fs
    return closure == c


def default_order(q: Polytope) -> list[int]:
    """Vertex indices sorted lexicographically by coordinates."""
    return sorted(range(len(q.vertices)), key=lambda i: q.vertices[i])


def pulling_triangulation(q: Polytope, order: Sequence[int] | None = None) -> Triangulation:
    """Pulling triangulation of ``q`` with respect to a vertex order.

    If the polytope is a simplex it is returned as is.  Otherwise the
    smallest vertex is coned over the recursively pulled triangulations of
    the facets that do not contain it.
    """
    if order is None:
        order = default_order(q)
    order = list(order)
    if sorted(order) != list(range(len(q.vertices))):
        raise ValueError("order must be a permutation of the vertex indices")
    pos = {v: i for i, v in enumerate(order)}
    face_facets = _face_facets_factory(q)

    def pull(face: frozenset[int], k: int) -> list[tuple[int, ...]]:
        if len(face) == k + 1:
            return [tuple(sorted(face))]
        apex = min(face, key=pos.__getitem__)
        out = []
        for sub in face_facets(face):
            if apex in sub:
                continue
            for s in pull(sub, k - 1):
                out.append(tuple(sorted(s + (apex,))))
        return out

    simplices = pull(frozenset(range(len(q.vertices))), q.dim)
    return Triangulation(tuple(simplices), q)


def face_constrained_order(q: Polytope, face, vertex: int) -> list[int]:
    """Vertex order starting at ``vertex``; the rest keep their input order.

    Raises:
        ValueError: if ``face`` is not a face of ``q`` or does not contain ``vertex``.
    """
    if not is_face(q, face):
        raise ValueError("vertex set is not a face")
    if vertex not in face:
        raise ValueError("distinguished vertex is not in the face")
    return [vertex] + [i for i in range(len(q.vertices)) if i != vertex]


def satisfies_face_property(tri: Triangulation, face, vertex: int) -> bool:
    """Every simplex meets ``face`` minus ``vertex`` inside some facet of the face."""
    face = frozenset(face)
    facets_of_face = _face_facets_factory(tri.base)(face)
    for s in tri.simplices:
        rest = (set(s) & face) - {vertex}
        if rest and not any(rest <= f for f in facets_of_face):
            return False
    return True


def _dual_setup(p: Polytope, z: Sequence | None):
    if z is None:
        z = interior_point(p)
    dual = polar_dual(p, z)
    return tuple(Fraction(c) for c in z), dual


def _integer_dual_forms(dual: Polytope) -> tuple[list[dict], list[int]]:
    """Linear forms ``l_v = X0 + v.X`` scaled to integers, plus their scale factors."""
    forms, scales = [], []
    n1 = dual.dim + 1
    for v in dual.vertices:
        coeffs = (Fraction(1),) + tuple(v)
        s = lcm(*(c.denominator for c in coeffs))
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[tuple(int(i == j) for j in range(n1))] = int(c * s)
        forms.append(terms)
        scales.append(s)
    return forms, scales


def warren_sum(dual: Polytope, tri: Triangulation) -> HomoPoly:
    """``sum_sigma vol(sigma) prod_{v not in sigma} l_v`` up to a positive constant.

    Each ``l_v`` is replaced by an integer multiple ``s_v l_v``; the term of
    sigma is then reweighted by ``prod_{v in sigma} s_v`` so that all terms
    carry the same overall factor ``prod_v s_v``.
    """
    n1 = dual.dim + 1
    forms, scales = _integer_dual_forms(dual)
    d = len(dual.vertices)
    vol_den = lcm(*(tri.volume(s).denominator for s in tri.simplices))
    total: dict = {}
    for s in tri.simplices:
        weight = tri.volume(s) * vol_den
        for v in s:
            weight *= scales[v]
        acc = {(0,) * n1: int(weight)}
        sset = set(s)
        for v in range(d):
            if v not in sset:
                acc = _mul_terms(acc, forms[v])
        for e, c in acc.items():
            total[e] = total.get(e, 0) + c
    return HomoPoly._raw(n1, d - n1, {e: c for e, c in total.items() if c})


def pull_back_translation(f: HomoPoly, z: Sequence) -> HomoPoly:
    """``f(X_0, X_1 - z_1 X_0, ..., X_n - z_n X_0)``."""
    n1 = f.nvars
    m = []
    for i in range(n1):
        row = [Fraction(int(i == j)) for j in range(n1)]
        if i > 0:
            row[0] = -Fraction(z[i - 1])
        m.append(row)
    return f.substitute(m)


def warren_adjoint(p: Polytope, z: Sequence | None = None,
                   order: Sequence[int] | None = None) -> HomoPoly:
    """Adjoint via the triangulation formula on the polar dual, normalized.

    ``z`` is the translation point (default: vertex centroid) and ``order``
    a vertex order of the dual for the pulling triangulation (default:
    lexicographic on dual vertex coordinates).
    """
    n1 = p.dim + 1
    if p.dim == 0:
        return HomoPoly.constant(1)
    z, dual = _dual_setup(p, z)
    tri = pulling_triangulation(dual, order)
    g = warren_sum(dual, tri)
    f = pull_back_translation(g, z).normalized()
    if f.is_zero() or f.degree != p.num_facets - n1:
        raise RuntimeError("triangulation formula produced a polynomial of the wrong degree")
    return f


def derivative_row(e_list: Sequence[tuple], alpha: tuple, x: Sequence[int]) -> list[int]:
    """Row of ``d^alpha (sum c_e X^e)`` evaluated at integer point x, per coefficient."""
    row = []
    for e in e_list:
        if any(a > b for a, b in zip(alpha, e)):
            row.append(0)
            continue
        v = 1
        for k, a, xi in zip(e, alpha, x):
            v *= factorial(k) // factorial(k - a)
            if k - a:
                v *= xi ** (k - a)
        row.append(v)
    return row


def interpolation_system(p: Polytope, residual=None) -> tuple[list[list[int]], list[tuple]]:
    """Constraint matrix of the point-residual interpolation problem.

    Rows follow the point residual order, and within a point the derivative
    multi-indices in lexicographically descending order by total order.
    """
    n1 = p.dim + 1
    degree = p.num_facets - n1
    monos = monomials(n1, degree)
    if residual is None:
        residual = Arrangement(p).point_residual()
    rows = []
    for x, k in residual:
        xi = [int(c) for c in x]
        for j in range(min(k, degree + 1)):
            for alpha in monomials(n1, j):
                rows.append(derivative_row(monos, alpha, xi))
    return rows, monos


def interpolation_kernel(p: Polytope) -> tuple[list[Vector], list[tuple]]:
    rows, monos = interpolation_system(p)
    if not rows:
        return kernel_basis([], ncols=len(monos)), monos
    return kernel_basis(rows), monos


def interpolation_adjoint(p: Polytope) -> HomoPoly:
    """Adjoint as the unique solution of the vanishing conditions on the point residual.

    Raises:
        KernelDimensionError: if the solution space is not one-dimensional.
    """
    n1 = p.dim + 1
    d = p.num_facets
    if d == n1:
        return HomoPoly.constant(n1)
    basis, monos = interpolation_kernel(p)
    if len(basis) != 1:
        raise KernelDimensionError(len(basis))
    f = HomoPoly(n1, d - n1, dict(zip(monos, basis[0])))
    return f.normalized()


@dataclass(frozen=True)
class OrderRow:
    flat: FlatData
    required: int
    actual: int

    @property
    def satisfied(self) -> bool:
        return self.actual >= self.required

    @property
    def strict(self) -> bool:
        return self.actual > self.required


@dataclass(frozen=True)
class OrderReport:
    rows: tuple[OrderRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.satisfied for r in self.rows)

    def violations(self) -> list[OrderRow]:
        return [r for r in self.rows if not r.satisfied]

    def strict_rows(self) -> list[OrderRow]:
        return [r for r in self.rows if r.strict]


def verify_orders(p: Polytope, f: HomoPoly, arrangement: Arrangement | None = None) -> OrderReport:
    """Compare ``mu_L(f)`` with ``ord_P(L)`` on every proper flat."""
    arr = arrangement or Arrangement(p)
    rows = tuple(
        OrderRow(fl, fl.order, vanishing_order_along(f, fl.subspace)) for fl in arr.flats()
    )
    return OrderReport(rows)


def summand_orders(p: Polytope, x: Sequence, z: Sequence | None = None) -> tuple[int, list[int]]:
    """Per-summand vanishing orders at x of the triangulation formula.

    For a point whose flat does not meet P in a face of the right dimension,
    the dual is triangulated by pulling from the vertex of a facet that
    contains ``L_x cap P`` but not ``L_x``, with the dual face of
    ``L_x cap P`` as the constrained face; otherwise the default order is
    used.  Returns ``ord_P(L_x)`` and, for each simplex, the number of
    factors ``l_v`` of its summand vanishing at x (which is the summand's
    vanishing order there).
    """
    arr = Arrangement(p)
    x = primitive_integer(x)
    fl = arr.flat_through(x)
    _, dual = _dual_setup(p, z)
    if fl.face_dim == fl.dim:
        tri = pulling_triangulation(dual)
    else:
        # Dual vertices are P's facets; the dual face of L_x cap P is the set
        # of facets containing it (all facets when the face is empty).
        face = [
            j for j in range(p.num_facets)
            if all(p.incidence[i][j] for i in fl.face_vertices)
        ]
        apex = next(j for j in face if j not in fl.members)
        tri = pulling_triangulation(dual, face_constrained_order(dual, face, apex))
        if not satisfies_face_property(tri, face, apex):
            raise AssertionError("pulling triangulation violates the face property")
    counts = [
        sum(1 for v in fl.members if v not in s) for s in tri.simplices
    ]
    return fl.order, counts


__all__ = [
    "GeometryError",
    "KernelDimensionError",
    "OrderReport",
    "OrderRow",
    "Triangulation",
    "default_order",
    "face_constrained_order",
    "interpolation_adjoint",
    "interpolation_kernel",
    "interpolation_system",
    "is_face",
    "pulling_triangulation",
    "satisfies_face_property",
    "simplex_volume",
    "summand_orders",
    "verify_orders",
    "warren_adjoint",
]
