"""Homogeneous polynomials with exact rational coefficients.

Polynomials live in ``Q[X_0, ..., X_n]`` and are stored as a dict from
exponent tuples to nonzero Fractions.  Terms are ordered graded
lexicographically, descending; since every term has the same degree this is
plain lexicographic order on the exponent tuples.

Vanishing orders are computed by a change of coordinates: after moving the
point (or the linear space) to a coordinate subspace, the order is read off
from the exponents of the remaining variables.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Mapping, Sequence

from .exactlin import as_fraction, complete_basis, primitive_integer, vector
from .polytope import LinearSubspace


class NotDivisibleError(ArithmeticError):
    """Exact division left a nonzero remainder."""


class ZeroPolynomialError(ValueError):
    """The zero polynomial has no finite vanishing order."""


Exponent = tuple  # tuple[int, ...]


class HomoPoly:
    """A homogeneous polynomial in ``nvars`` variables of fixed degree.

    The zero polynomial keeps a nominal degree so that ``f - f`` is still
    well typed.
    """

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping[Exponent, object] = ()):
        clean: dict[Exponent, Fraction] = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"monomial {e} has the wrong number of variables")
            if sum(e) != degree:
                raise ValueError(f"monomial {e} is not of degree {degree}")
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.nvars = nvars
        self.degree = degree
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, nvars: int, degree: int, terms: dict) -> HomoPoly:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.degree = degree
        obj.terms = {e: (c if isinstance(c, Fraction) else Fraction(c)) for e, c in terms.items() if c}
        return obj

    @classmethod
    def constant(cls, nvars: int, c=1) -> HomoPoly:
        return cls(nvars, 0, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int, degree: int = 0) -> HomoPoly:
        return cls(nvars, degree, {})

    @classmethod
    def variable(cls, nvars: int, i: int) -> HomoPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, 1, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> HomoPoly:
        """The linear form ``sum c_i X_i``."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, 1, terms)

    # -- basic protocol ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomoPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.terms == other.terms
                and (self.degree == other.degree or not self.terms))

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"HomoPoly({self.nvars}, {self.degree}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    # -- ring operations --------------------------------------------------

    def _check_compatible(self, other: HomoPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: HomoPoly) -> HomoPoly:
        if not isinstance(other, HomoPoly):
            return NotImplemented
        self._check_compatible(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"cannot add degrees {self.degree} and {other.degree}")
        degree = self.degree if self.terms else other.degree
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return HomoPoly._raw(self.nvars, degree, out)

    def __neg__(self) -> HomoPoly:
        return HomoPoly._raw(self.nvars, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: HomoPoly) -> HomoPoly:
        return self + (-other)

    def __mul__(self, other) -> HomoPoly:
        if isinstance(other, HomoPoly):
            self._check_compatible(other)
            return HomoPoly._raw(self.nvars, self.degree + other.degree,
                                 _mul_terms(self.terms, other.terms))
        c = as_fraction(other)
        return HomoPoly._raw(self.nvars, self.degree, {e: c * v for e, v in self.terms.items()})

    def __rmul__(self, other) -> HomoPoly:
        return self * other

    def __pow__(self, k: int) -> HomoPoly:
        out = HomoPoly.constant(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    # -- evaluation and calculus -----------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        pt = vector(point)
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def partial(self, var: int) -> HomoPoly:
        """Formal partial derivative with respect to ``X_var``."""
        if not 0 <= var < self.nvars:
            raise ValueError(f"variable index {var} out of range")
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                e2 = list(e)
                e2[var] = k - 1
                out[tuple(e2)] = c * k
        return HomoPoly._raw(self.nvars, max(self.degree - 1, 0), out)

    def substitute(self, m: Sequence[Sequence]) -> HomoPoly:
        """Linear change of variables ``X_i -> sum_j m[i][j] Y_j``."""
        if len(m) != self.nvars:
            raise ValueError("substitution matrix has the wrong number of rows")
        ncols = len(m[0]) if m else 0
        images = [
            {tuple(int(j == k) for k in range(ncols)): as_fraction(a)
             for j, a in enumerate(row) if a}
            for row in m
        ]
        return HomoPoly._raw(ncols, self.degree, _substitute_terms(self.terms, images, ncols))

    def restrict(self, form: Sequence, pivot: int) -> HomoPoly:
        """Restriction to the hyperplane ``form = 0`` by eliminating ``X_pivot``.

        The result is exact (denominators are not cleared) so that residue
        scalars stay meaningful.  Variables keep their relative order.
        """
        form = vector(form)
        if len(form) != self.nvars:
            raise ValueError("hyperplane lives in a different ring")
        a = form[pivot]
        if a == 0:
            raise ValueError(f"pivot X{pivot} has zero coefficient")
        rows = []
        for i in range(self.nvars):
            if i == pivot:
                rows.append([-form[j] / a for j in range(self.nvars) if j != pivot])
            else:
                rows.append([Fraction(int(i == j)) for j in range(self.nvars) if j != pivot])
        return self.substitute(rows)

    # -- normalization ----------------------------------------------------

    def normalized(self) -> HomoPoly:
        """Primitive integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        items = self.sorted_terms()
        prim = primitive_integer([c for _, c in items])
        return HomoPoly._raw(self.nvars, self.degree, {e: c for (e, _), c in zip(items, prim)})

    def ratio_to(self, other: HomoPoly) -> Fraction | None:
        """The scalar c with ``self == c * other``, or None if not proportional."""
        self._check_compatible(other)
        if not self.terms or not other.terms:
            return None
        if self.terms.keys() != other.terms.keys():
            return None
        e = next(iter(self.terms))
        c = self.terms[e] / other.terms[e]
        if all(self.terms[k] == c * other.terms[k] for k in self.terms):
            return c
        return None

    def is_proportional(self, other: HomoPoly) -> bool:
        return self.ratio_to(other) is not None

    def integer_terms(self) -> dict[Exponent, int]:
        """Integer coefficients proportional (by a positive factor) to these."""
        den = lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1
        out = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for v in out.values():
            g = gcd(g, v)
        if g > 1:
            out = {e: v // g for e, v in out.items()}
        return out


def _mul_terms(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _substitute_terms(terms: Mapping, images: list[dict], ncols: int) -> dict:
    """Expand ``sum c X^e`` with ``X_i`` replaced by the polynomial ``images[i]``.

    Coefficient arithmetic is whatever numeric type the inputs use; passing
    ints avoids Fraction overhead.
    """
    one = {(0,) * ncols: 1}
    cache: dict[tuple[int, int], dict] = {}

    def power(i: int, k: int) -> dict:
        if k == 0:
            return one
        key = (i, k)
        if key not in cache:
            cache[key] = _mul_terms(power(i, k - 1), images[i])
        return cache[key]

    out: dict = {}
    for e, c in terms.items():
        acc = {(0,) * ncols: c}
        for i, k in enumerate(e):
            if k:
                acc = _mul_terms(acc, power(i, k))
        for m, v in acc.items():
            out[m] = out.get(m, 0) + v
    return {e: c for e, c in out.items() if c}


# -- module-level operations ------------------------------------------------


def add(f: HomoPoly, g: HomoPoly) -> HomoPoly:
    return f + g


def multiply(f: HomoPoly, g: HomoPoly) -> HomoPoly:
    return f * g


def scale(f: HomoPoly, c) -> HomoPoly:
    return f * as_fraction(c)


def exact_divide(f: HomoPoly, g: HomoPoly) -> HomoPoly:
    """Quotient q with ``q * g == f``.

    Raises:
        ZeroDivisionError: if ``g`` is zero.
        NotDivisibleError: if ``g`` does not divide ``f``.
    """
    f._check_compatible(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    qdeg = f.degree - g.degree
    if f.is_zero():
        return HomoPoly.zero(f.nvars, max(qdeg, 0))
    if qdeg < 0:
        raise NotDivisibleError("divisor has larger degree")
    ge, gc = g.leading_term()
    rem = dict(f.terms)
    quotient: dict = {}
    while rem:
        re_, rc = max(rem.items())
        diff = tuple(a - b for a, b in zip(re_, ge))
        if any(x < 0 for x in diff):
            raise NotDivisibleError(f"{format_poly(g)} does not divide {format_poly(f)}")
        q = rc / gc
        quotient[diff] = q
        for e, c in g.terms.items():
            m = tuple(a + b for a, b in zip(diff, e))
            v = rem.get(m, 0) - q * c
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return HomoPoly._raw(f.nvars, qdeg, quotient)


def partial_derivative(f: HomoPoly, var: int) -> HomoPoly:
    return f.partial(var)


def linear_substitute(f: HomoPoly, m: Sequence[Sequence]) -> HomoPoly:
    if len(m) != f.nvars:
        raise ValueError("dimension mismatch in substitution")
    return f.substitute(m)


def restrict_to_hyperplane(f: HomoPoly, form: Sequence, pivot: int) -> HomoPoly:
    return f.restrict(form, pivot)


def _adapted_order(f: HomoPoly, leading: Sequence[Sequence]) -> int:
    """Minimal total degree in the trailing variables after adapting coordinates.

    ``leading`` spans the linear space; it is completed by standard basis
    vectors, and the substitution ``X = M Y`` with the basis as columns of M
    moves the space onto the first ``len(leading)`` coordinates.
    """
    if f.is_zero():
        raise ZeroPolynomialError("vanishing order of the zero polynomial")
    n1 = f.nvars
    basis = complete_basis([primitive_integer(p) for p in leading], n1)
    k = len(leading)
    images = []
    for i in range(n1):
        img = {}
        for j, col in enumerate(basis):
            a = int(col[i])
            if a:
                img[tuple(int(j == t) for t in range(n1))] = a
        images.append(img)
    subst = _substitute_terms(f.integer_terms(), images, n1)
    return min(sum(e[k:]) for e in subst)


def vanishing_order_at_point(f: HomoPoly, x: Sequence) -> int:
    """Order of vanishing ``mu_x(f)`` at a projective point."""
    return _adapted_order(f, [vector(x)])


def vanishing_order_along(f: HomoPoly, sub: LinearSubspace) -> int:
    """Order of vanishing ``mu_L(f)`` along a projective linear space."""
    if not sub.spanning_points:
        raise ValueError("empty linear space")
    return _adapted_order(f, sub.spanning_points)


def monomials(nvars: int, degree: int) -> list[Exponent]:
    """All exponent tuples of the given degree, lexicographically descending."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return out


def num_monomials(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree)


# -- text format ------------------------------------------------------------


def _format_monomial(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"X{i}")
        elif k > 1:
            parts.append(f"X{i}^{k}")
    return "*".join(parts)


def format_poly(f: HomoPoly) -> str:
    """Render as e.g. ``-X0^4+2*X0^2*X1^2-X1^4``; zero renders as ``0``."""
    if f.is_zero():
        return "0"
    out = []
    for e, c in f.sorted_terms():
        mono = _format_monomial(e)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        elif c == -1:
            body = "-" + mono
        else:
            body = f"{c}*{mono}"
        if out and not body.startswith("-"):
            body = "+" + body
        out.append(body)
    return "".join(out)


_TERM = re.compile(r"[+-]?[^+-]+")
_FACTOR_VAR = re.compile(r"[Xx](\d+)(?:\^(\d+))?$")
_FACTOR_NUM = re.compile(r"\d+(?:/\d+)?$")


def parse_poly(text: str, nvars: int | None = None) -> HomoPoly:
    """Parse the text format produced by :func:`format_poly`.

    Whitespace and ``**`` for powers are tolerated; lower-case ``x`` is
    accepted for variables.  Raises ValueError on malformed or
    inhomogeneous input.
    """
    s = re.sub(r"\s+", "", text).replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        if nvars is None:
            raise ValueError("cannot infer the ring of the zero polynomial")
        return HomoPoly.zero(nvars)
    if "".join(_TERM.findall(s)) != s:
        raise ValueError(f"malformed polynomial: {text!r}")
    parsed: list[tuple[Fraction, dict[int, int]]] = []
    top = -1
    for term in _TERM.findall(s):
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        coeff = Fraction(sign)
        powers: dict[int, int] = {}
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"malformed term {term!r}")
            mv = _FACTOR_VAR.match(factor)
            if mv:
                i = int(mv.group(1))
                powers[i] = powers.get(i, 0) + int(mv.group(2) or 1)
                top = max(top, i)
            elif _FACTOR_NUM.match(factor):
                coeff *= Fraction(factor)
            else:
                raise ValueError(f"malformed factor {factor!r}")
        parsed.append((coeff, powers))
    if nvars is None:
        nvars = top + 1
    if top >= nvars:
        raise ValueError(f"variable X{top} outside a ring of {nvars} variables")
    degrees = {sum(p.values()) for _, p in parsed}
    if len(degrees) != 1:
        raise ValueError("polynomial is not homogeneous")
    degree = degrees.pop()
    terms: dict[Exponent, Fraction] = {}
    for c, p in parsed:
        e = tuple(p.get(i, 0) for i in range(nvars))
        terms[e] = terms.get(e, Fraction(0)) + c
    return HomoPoly(nvars, degree, terms)


def linear_form_poly(form: Iterable) -> HomoPoly:
    return HomoPoly.linear(list(form))
