"""Canonical forms of polytopes and their linear residues.

A form ``f / prod(l_G) * omega`` is kept as a numerator polynomial plus the
list of denominator linear forms (not rescaled, so residue values are
exact).  ``omega`` is implicit.

Residue along a facet H with pivot variable ``X_p`` (coefficient ``a_p`` in
``l_H``) in projective dimension n::

    Res_H = (-1)^(n-p) / a_p * (f / prod_{G != H} l_G)|_H

The sign moves ``dX_p`` behind the remaining differentials; with ``p = n``
and ``a_n = 1`` this is the usual coordinate residue.  Forms are only
compared up to a nonzero scalar; no global orientation is fixed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .adjoint import warren_adjoint
from .exactlin import Vector, primitive_integer
from .poly import HomoPoly, NotDivisibleError, exact_divide
from .polytope import GeometryError, Polytope, default_pivot, facet_polytope, restrict_form


class ResidueError(ValueError):
    """The numerator vanishes on the facet or the expected division fails."""


@dataclass(frozen=True)
class PolytopeForm:
    numerator: HomoPoly
    denominator: tuple[Vector, ...]
    polytope: Polytope = field(compare=False)

    def __post_init__(self):
        nvars = self.polytope.dim + 1
        if self.numerator.nvars != nvars or any(len(l) != nvars for l in self.denominator):
            raise ValueError("form components live in different rings")
        if len(self.denominator) != self.polytope.num_facets:
            raise ValueError("denominator must list one form per facet")
        if self.numerator.degree + nvars != len(self.denominator):
            raise ValueError("form is not homogeneous of degree -n-1")

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @property
    def dim(self) -> int:
        return self.nvars - 1

    def value(self) -> Fraction:
        """The constant a 0-dimensional form reduces to."""
        if self.dim != 0:
            raise ValueError("only 0-dimensional forms have a value")
        v = self.numerator.terms.get((self.numerator.degree,), Fraction(0))
        for l in self.denominator:
            v /= l[0]
        return v

    def ratio_to(self, other: PolytopeForm) -> Fraction | None:
        """The scalar c with ``self == c * other`` as rational forms, or None."""
        if self.nvars != other.nvars or len(self.denominator) != len(other.denominator):
            return None
        # self_den[i] = s_i * other_den[match(i)]
        scale = Fraction(1)
        remaining = list(other.denominator)
        for l in self.denominator:
            key = primitive_integer(l)
            idx = next((k for k, m in enumerate(remaining) if primitive_integer(m) == key), None)
            if idx is None:
                return None
            m = remaining.pop(idx)
            j = next(i for i, c in enumerate(m) if c)
            scale *= l[j] / m[j]
        c = self.numerator.ratio_to(other.numerator)
        if c is None:
            return None
        return c / scale


def canonical_form(p: Polytope, numerator: HomoPoly | None = None) -> PolytopeForm:
    """``adj_P / prod l_H`` over the facet forms of ``p`` (or ``Omega_f`` for a given f)."""
    if numerator is None:
        numerator = warren_adjoint(p)
    return PolytopeForm(numerator, tuple(p.facets), p)


def residue_along(form: PolytopeForm, h: int, pivot: int | None = None) -> PolytopeForm:
    """Residue of the form along its h-th denominator hyperplane.

    Raises:
        ResidueError: the numerator vanishes identically on the hyperplane, or
            the non-incident denominator forms do not divide its restriction.
    """
    p = form.polytope
    n = p.dim
    if n == 0:
        raise GeometryError("a 0-dimensional form has no residues")
    lh = form.denominator[h]
    if pivot is None:
        pivot = default_pivot(lh)
    facet, incident = facet_polytope(p, h, pivot)
    restricted = form.numerator.restrict(lh, pivot)
    if restricted.is_zero():
        raise ResidueError(f"numerator vanishes identically on facet {h}")
    nonincident = [g for g in range(len(form.denominator)) if g != h and g not in incident]
    divisor = HomoPoly.constant(n)
    for g in nonincident:
        divisor = divisor * HomoPoly.linear(restrict_form(form.denominator[g], lh, pivot))
    try:
        quotient = exact_divide(restricted, divisor)
    except NotDivisibleError as exc:
        raise ResidueError(f"restriction to facet {h} is not divisible: {exc}") from None
    sign = -1 if (n - pivot) % 2 else 1
    numerator = quotient * (Fraction(sign) / lh[pivot])
    dens = tuple(restrict_form(form.denominator[g], lh, pivot) for g in incident)
    return PolytopeForm(numerator, dens, facet)


@dataclass
class ResidueCheck:
    path: tuple[int, ...]
    dim: int
    ratio: Fraction | None

    @property
    def ok(self) -> bool:
        return self.ratio is not None and self.ratio != 0


@dataclass
class RecursionReport:
    checks: list[ResidueCheck]
    terminal: dict[tuple[int, ...], Fraction]
    segment_pairs: list[tuple[tuple[int, ...], Fraction, Fraction]]

    @property
    def proportional(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def segments_opposite(self) -> bool:
        return all(a == -b and a != 0 for _, a, b in self.segment_pairs)

    @property
    def coherent(self) -> bool:
        return len({abs(v) for v in self.terminal.values()}) <= 1

    @property
    def ok(self) -> bool:
        return self.proportional and self.segments_opposite and self.coherent


def recursion_check(p: Polytope, depth: int | None = None) -> RecursionReport:
    """Iterate residues of the canonical form down the face lattice.

    At each level the residue along facet H must be proportional to the
    canonical form of ``P cap H``, computed independently.  The iterated
    residues at vertices (reached through segments) must come in pairs of
    opposite sign and all share one magnitude.  ``depth`` limits the number
    of levels; ``depth=1`` only checks the facets of ``p``.
    """
    checks: list[ResidueCheck] = []
    terminal: dict[tuple[int, ...], Fraction] = {}
    pairs = []

    def walk(form: PolytopeForm, path: tuple[int, ...], left: int | None) -> None:
        q = form.polytope
        vals = []
        for h in range(q.num_facets):
            res = residue_along(form, h)
            key = path + (h,)
            reference = canonical_form(res.polytope)
            checks.append(ResidueCheck(key, res.dim, res.ratio_to(reference)))
            if res.dim == 0:
                terminal[key] = res.value()
                vals.append(terminal[key])
            elif left is None or left > 1:
                walk(res, key, None if left is None else left - 1)
        if q.dim == 1:
            pairs.append((path, vals[0], vals[1]))

    walk(canonical_form(p), (), depth)
    return RecursionReport(checks, terminal, pairs)


def _choose_pivots(lg: Sequence, lh: Sequence) -> tuple[int, int]:
    """Pivots (for G, for H) so both elimination orders remove the same two variables."""
    n1 = len(lg)
    best = None
    for i in range(1, n1):
        for j in range(i + 1, n1):
            if lh[i] * lg[j] - lh[j] * lg[i] != 0:
                best = (i, j)
    if best is None:
        raise GeometryError("facet hyperplanes are parallel")
    i, j = best
    if lh[i] != 0 and lg[j] != 0:
        return j, i
    return i, j


def double_residue_antisymmetry(p: Polytope, g: int, h: int) -> Fraction:
    """Ratio of ``Res_G Res_H Omega`` to ``Res_H Res_G Omega``.

    Both orders eliminate the same pair of variables, so the two results
    live in the same coordinates.  The expected ratio is -1.

    Raises:
        GeometryError: if G and H are not incident.
    """
    if not p.is_incident(g, h):
        raise GeometryError(f"facets {g} and {h} are not incident")
    omega = canonical_form(p)
    pg, ph = _choose_pivots(p.facets[g], p.facets[h])

    def reduced(pivot_removed: int, other_pivot: int) -> int:
        return other_pivot - 1 if other_pivot > pivot_removed else other_pivot

    first_h = residue_along(omega, h, ph)
    g_in_h = facet_polytope(p, h, ph)[1].index(g)
    gh = residue_along(first_h, g_in_h, reduced(ph, pg))
    first_g = residue_along(omega, g, pg)
    h_in_g = facet_polytope(p, g, pg)[1].index(h)
    hg = residue_along(first_g, h_in_g, reduced(pg, ph))
    ratio = gh.ratio_to(hg)
    if ratio is None:
        raise AssertionError("double residues are not proportional")
    return ratio
