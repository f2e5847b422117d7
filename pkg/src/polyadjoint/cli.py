"""Command-line interface.

Input is a JSON document::

    {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"]],
     "inequalities": [["0", "1", "0"], ...]}

Rationals may be given as strings ``"p"`` / ``"p/q"`` or as JSON integers.
Each inequality row ``(a_0, ..., a_n)`` means ``a_0 + sum a_i x_i >= 0``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 geometric
precondition failure, 4 internal disagreement, 5 residue precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from typing import Sequence, TextIO

from .adjoint import (
    KernelDimensionError,
    interpolation_adjoint,
    verify_orders,
    warren_adjoint,
)
from .arrangement import Arrangement
from .poly import format_poly, parse_poly
from .polytope import GeometryError, Polytope, apply_projective_map
from .residue import ResidueError, canonical_form, recursion_check, residue_along

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_GEOMETRY = 3
EXIT_DISAGREE = 4
EXIT_RESIDUE = 5


class InputError(ValueError):
    pass


def _rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"not an exact rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational: {x!r}") from None
    raise InputError(f"not a rational: {x!r}")


def _rows(data, width: int, what: str) -> list[tuple[Fraction, ...]]:
    if not isinstance(data, list):
        raise InputError(f"{what} must be a list")
    out = []
    for row in data:
        if not isinstance(row, list) or len(row) != width:
            raise InputError(f"each {what} row needs {width} entries")
        out.append(tuple(_rational(c) for c in row))
    return out


def format_rational(q: Fraction) -> str:
    return str(q)


def load_document(text: str) -> Polytope:
    """Parse a polytope document; raises InputError or GeometryError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed document: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("document must be an object")
    n = doc.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("dim must be a positive integer")
    verts = doc.get("vertices")
    ineqs = doc.get("inequalities")
    if verts is None and ineqs is None:
        raise InputError("document needs vertices or inequalities")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        p_v = Polytope.from_vertices(_rows(verts, n, "vertex")) if verts is not None else None
        p_h = Polytope.from_inequalities(_rows(ineqs, n + 1, "inequality"), n) if ineqs is not None else None
    if p_v is not None and p_h is not None:
        if set(p_v.vertices) != set(p_h.vertices):
            raise InputError("vertices and inequalities describe different polytopes")
        return p_v
    return p_v or p_h


def load_matrix(text: str) -> list[tuple[Fraction, ...]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed matrix: {exc}") from None
    if not isinstance(data, list) or not data:
        raise InputError("matrix must be a nonempty list of rows")
    return _rows(data, len(data), "matrix")


def dump_document(p: Polytope) -> str:
    doc = {
        "dim": p.dim,
        "vertices": [[format_rational(c) for c in v] for v in sorted(p.vertices)],
        "inequalities": [[format_rational(c) for c in f] for f in p.facets],
    }
    return json.dumps(doc, indent=2)


def _row_text(row: Sequence[Fraction]) -> str:
    return " ".join(format_rational(c) for c in row)


def _point_text(x: Sequence) -> str:
    return "(" + ":".join(str(c) for c in x) + ")"


# -- commands -------------------------------------------------------------


def cmd_facets(p: Polytope, fmt: str = "text") -> str:
    if fmt == "doc":
        return dump_document(p)
    # Storage order, so row k is the facet index used by the residue command.
    return "\n".join(_row_text(f) for f in p.facets)


def cmd_vertices(p: Polytope, fmt: str = "text") -> str:
    if fmt == "doc":
        return dump_document(p)
    return "\n".join(_row_text(v) for v in sorted(p.vertices))


def cmd_residual(p: Polytope) -> str:
    return "\n".join(f"{_point_text(x)} {k}" for x, k in Arrangement(p).point_residual())


class Disagreement(RuntimeError):
    pass


def cmd_adjoint(p: Polytope, method: str = "both") -> str:
    if method == "warren":
        f = warren_adjoint(p)
    elif method == "interpolate":
        f = interpolation_adjoint(p)
    else:
        f = warren_adjoint(p)
        g = interpolation_adjoint(p)
        if f != g:
            raise Disagreement(f"routes disagree:\n  warren:      {f}\n  interpolate: {g}")
    return format_poly(f)


def cmd_verify(p: Polytope, poly_text: str) -> tuple[str, bool]:
    n1 = p.dim + 1
    try:
        f = parse_poly(poly_text, n1)
    except ValueError as exc:
        raise InputError(f"cannot parse polynomial: {exc}") from None
    expected = p.num_facets - n1
    if f.is_zero() or f.degree != expected:
        raise InputError(f"polynomial must be nonzero of degree {expected}")
    report = verify_orders(p, f)
    lines = ["flat\trank\tnullity\tface_dim\tord\tmu\tstatus"]
    for r in report.rows:
        fl = r.flat
        status = "FAIL" if not r.satisfied else ("strict" if r.strict else "ok")
        members = "{" + ",".join(str(i) for i in sorted(fl.members)) + "}"
        lines.append(f"{members}\t{fl.rank}\t{fl.nullity}\t{fl.face_dim}\t{r.required}\t{r.actual}\t{status}")
    lines.append("verdict: " + ("ok" if report.ok else f"{len(report.violations())} violation(s)"))
    return "\n".join(lines), report.ok


def cmd_residue(p: Polytope, facet: int, recurse: bool = False,
                numerator_text: str | None = None) -> tuple[str, bool]:
    if not 0 <= facet < p.num_facets:
        raise InputError(f"facet index {facet} out of range 0..{p.num_facets - 1}")
    if numerator_text is not None:
        try:
            f = parse_poly(numerator_text, p.dim + 1)
        except ValueError as exc:
            raise InputError(f"cannot parse polynomial: {exc}") from None
        if f.degree != p.num_facets - p.dim - 1:
            raise InputError("numerator has the wrong degree")
        form = canonical_form(p, f)
    else:
        form = canonical_form(p)
    res = residue_along(form, facet)
    lines = [
        f"numerator: {format_poly(res.numerator)}",
        "denominator:",
        *(f"  {_row_text(l)}" for l in res.denominator),
    ]
    if res.dim == 0:
        lines.append(f"value: {format_rational(res.value())}")
    ok = True
    if recurse:
        report = recursion_check(p)
        for c in report.checks:
            path = ".".join(str(i) for i in c.path)
            lines.append(f"{path}\tdim {c.dim}\t{'ok' if c.ok else 'FAIL'}")
        for path, a, b in report.segment_pairs:
            label = ".".join(str(i) for i in path) or "-"
            lines.append(f"segment {label}\t{format_rational(a)}\t{format_rational(b)}")
        lines.append("verdict: " + ("ok" if report.ok else "FAIL"))
        ok = report.ok
    return "\n".join(lines), ok


# -- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyadjoint", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("document", help="polytope document ('-' for stdin)")
        sp.add_argument("--chart", metavar="FILE", help="projective change of coordinates to apply first")
        return sp

    for name in ("facets", "vertices"):
        sp = add(name, f"print the {name} of the polytope")
        sp.add_argument("--format", choices=("text", "doc"), default="text")
    add("residual", "print the point residual with orders")
    sp = add("adjoint", "print the normalized adjoint polynomial")
    sp.add_argument("--method", choices=("warren", "interpolate", "both"), default="both")
    sp = add("verify", "check the vanishing orders of a polynomial on all flats")
    sp.add_argument("polynomial", help="file holding the polynomial")
    sp = add("residue", "residue of the canonical form along a facet")
    sp.add_argument("facet", type=int)
    sp.add_argument("--recurse", action="store_true", help="run the full residue recursion check")
    sp.add_argument("--numerator", metavar="FILE", help="use this numerator instead of the adjoint")
    return parser


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def run(argv: Sequence[str] | None = None, stdin: TextIO = sys.stdin,
        stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        p = load_document(_read(args.document, stdin))
        if args.chart:
            p = apply_projective_map(p, load_matrix(_read(args.chart, stdin)))
        if args.command == "facets":
            out = cmd_facets(p, args.format)
        elif args.command == "vertices":
            out = cmd_vertices(p, args.format)
        elif args.command == "residual":
            out = cmd_residual(p)
        elif args.command == "adjoint":
            out = cmd_adjoint(p, args.method)
        elif args.command == "verify":
            out, ok = cmd_verify(p, _read(args.polynomial, stdin))
            code = EXIT_OK if ok else EXIT_VERIFY
        else:
            numerator = _read(args.numerator, stdin) if args.numerator else None
            out, ok = cmd_residue(p, args.facet, args.recurse, numerator)
            code = EXIT_OK if ok else EXIT_DISAGREE
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except ResidueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_RESIDUE
    except GeometryError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_GEOMETRY
    except (Disagreement, KernelDimensionError, AssertionError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DISAGREE
    print(out, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
