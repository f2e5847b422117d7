"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of row tuples.  Elimination runs fraction-free on integer
rows (each row scaled to primitive integer form), which keeps entries small
and is considerably faster than Fraction arithmetic for the matrix sizes that
show up here.  Pivots are chosen as the first nonzero entry in column order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]


def as_fraction(value) -> Fraction:
    """Convert ints, fractions and strings like ``"3/4"`` to a Fraction.

    Floats are rejected: every quantity in this package must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    )


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in a)


def primitive_integer(values: Sequence, positive_leading: bool = True) -> Vector:
    """Scale a nonzero rational vector to coprime integer entries.

    With ``positive_leading`` the first nonzero entry is made positive, so
    that projectively equal vectors become equal.  Otherwise the vector is
    only rescaled by a positive factor and its orientation is kept.
    """
    fr = [as_fraction(v) for v in values]
    den = lcm(*(f.denominator for f in fr)) if fr else 1
    ints = [int(f * den) for f in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    if positive_leading:
        lead = next(x for x in ints if x)
        if lead < 0:
            g = -g
    return tuple(Fraction(x // g) for x in ints)


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = lcm(*(f.denominator for f in row)) if row else 1
    ints = [int(f * den) for f in row]
    return _reduce_content(ints)


def _reduce_content(ints: list[int]) -> list[int]:
    g = 0
    for x in ints:
        g = gcd(g, x)
        if g == 1:
            return ints
    if g > 1:
        return [x // g for x in ints]
    return ints


def echelon(m: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Row echelon form with integer rows.

    Returns the nonzero echelon rows (each with coprime integer entries) and
    the list of pivot columns.  The row space equals that of ``m``.
    """
    rows = [_integer_row([as_fraction(x) for x in r]) for r in m]
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    out: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(rows) if r[col] != 0), None)
        if idx is None:
            continue
        piv = rows.pop(idx)
        p = piv[col]
        remaining = []
        for r in rows:
            c = r[col]
            if c:
                g = gcd(p, c)
                a, b = p // g, c // g
                r = _reduce_content([a * x - b * y for x, y in zip(r, piv)])
                if not any(r):
                    continue
            remaining.append(r)
        rows = remaining
        out.append(piv)
        pivots.append(col)
        if not rows:
            break
    return out, pivots


def rank(m: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    return len(echelon(m)[1])


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of the right null space, each vector in primitive integer form.

    ``ncols`` is needed only when ``m`` has no rows.
    """
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    ncols = len(m[0])
    rows, pivots = echelon(m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, pc in zip(reversed(rows), reversed(pivots)):
            s = sum(r[c] * x[c] for c in range(pc + 1, ncols) if r[c])
            x[pc] = Fraction(-s, r[pc])
        basis.append(primitive_integer(x))
    return basis


class NoSolution(Exception):
    """Raised by :func:`solve` for an inconsistent system."""


def solve(m: Sequence[Sequence], rhs: Sequence) -> Vector:
    """A particular solution of ``m x = rhs`` (free variables set to zero).

    Raises:
        ValueError: if ``rhs`` has the wrong length.
        NoSolution: if the system is inconsistent.
    """
    if len(rhs) != len(m):
        raise ValueError(f"rhs has length {len(rhs)}, matrix has {len(m)} rows")
    if not m:
        return ()
    ncols = len(m[0])
    aug = [list(map(as_fraction, r)) + [as_fraction(b)] for r, b in zip(m, rhs)]
    rows, pivots = echelon(aug)
    if pivots and pivots[-1] == ncols:
        raise NoSolution("inconsistent linear system")
    x = [Fraction(0)] * ncols
    for r, pc in zip(reversed(rows), reversed(pivots)):
        s = sum(r[c] * x[c] for c in range(pc + 1, ncols) if r[c])
        x[pc] = Fraction(r[ncols] - s, r[pc])
    return tuple(x)


def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    a = [[as_fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for i in range(col + 1, n):
            c = a[i][col]
            if c:
                f = c / p
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def inverse(m: Sequence[Sequence]) -> Matrix:
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("inverse of a non-square matrix")
    a = [[as_fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(tuple(r[n:]) for r in a)


def complete_basis(vectors: Sequence[Sequence], dim: int) -> list[Vector]:
    """Extend independent vectors to a basis of Q^dim with standard vectors.

    The given vectors come first; standard basis vectors are appended
    greedily in index order whenever they raise the rank.
    """
    basis = [vector(v) for v in vectors]
    if rank(basis) != len(basis):
        raise ValueError("vectors to complete are linearly dependent")
    for i in range(dim):
        if len(basis) == dim:
            break
        e = tuple(Fraction(int(i == j)) for j in range(dim))
        if rank(basis + [e]) > len(basis):
            basis.append(e)
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    """Affine dimension of a point set plus one; 0 for the empty set."""
    if not points:
        return 0
    return rank([(Fraction(1),) + tuple(p) for p in points])


def projectively_equal(u: Sequence, v: Sequence) -> bool:
    return primitive_integer(u) == primitive_integer(v)
