import io
import json
import subprocess
import sys
from collections import Counter

import pytest

from polyadjoint.cli import load_document, run
from polyadjoint.exactlin import primitive_integer
from polyadjoint.poly import parse_poly

from test_arrangement import OCTAHEDRON_ORDERS, OCTAHEDRON_R0_COLUMNS

OCTAHEDRON = {"dim": 3, "vertices": [["1", "0", "0"], ["-1", "0", "0"], ["0", "1", "0"],
                                     ["0", "-1", "0"], ["0", "0", "1"], ["0", "0", "-1"]]}
CUBE = {"dim": 3, "inequalities": [[1, 1, 0, 0], [1, -1, 0, 0], [1, 0, 1, 0],
                                   [1, 0, -1, 0], [1, 0, 0, 1], [1, 0, 0, -1]]}
SQUARE = {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]}
SEGMENT = {"dim": 1, "vertices": [["0"], ["1"]]}
TRUNCATED = {"dim": 4, "inequalities": [
    ["0", "1", "0", "0", "0"], ["0", "0", "1", "0", "0"], ["0", "0", "0", "1", "0"],
    ["0", "0", "0", "0", "1"], ["4", "-1", "-1", "-1", "-1"], ["6", "-2", "0", "-1", "0"],
    ["6", "0", "-2", "0", "1"]]}
ALPHA = "72*X0^2-18*X0*X1-18*X0*X2+4*X1*X2-12*X0*X3+3*X2*X3+12*X0*X4-3*X1*X4-2*X3*X4"
OCT_ADJ = "3*X0^4-2*X0^2*X1^2-2*X0^2*X2^2-2*X0^2*X3^2-X1^4+2*X1^2*X2^2+2*X1^2*X3^2-X2^4+2*X2^2*X3^2-X3^4"


def cli(tmp_path, args, doc=None, files=None):
    if doc is not None:
        path = tmp_path / "doc.json"
        path.write_text(json.dumps(doc))
        args = [args[0], str(path)] + list(args[1:])
    for name, text in (files or {}).items():
        (tmp_path / name).write_text(text)
    out, err = io.StringIO(), io.StringIO()
    code = run([a.replace("@", str(tmp_path) + "/") for a in args], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_octahedron_facets(tmp_path):
    code, out, _ = cli(tmp_path, ["facets"], OCTAHEDRON)
    assert code == 0
    rows = [tuple(int(c) for c in line.split()) for line in out.splitlines()]
    assert len(rows) == 8
    expected = {primitive_integer((1, a, b, c)) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)}
    assert {primitive_integer(r) for r in rows} == expected


def test_cube_vertices_and_doc_format(tmp_path):
    code, out, _ = cli(tmp_path, ["vertices"], CUBE)
    assert code == 0 and len(out.splitlines()) == 8
    code, out, _ = cli(tmp_path, ["vertices", "--format", "doc"], CUBE)
    doc = json.loads(out)
    assert len(doc["vertices"]) == 8 and len(doc["inequalities"]) == 6
    again = load_document(out)
    assert len(again.vertices) == 8


def test_single_point_is_rejected(tmp_path):
    code, _, err = cli(tmp_path, ["facets"], {"dim": 2, "vertices": [["0", "0"]]})
    assert code == 3 and "error" in err


def test_unbounded_is_rejected(tmp_path):
    code, _, _ = cli(tmp_path, ["vertices"], {"dim": 2, "inequalities": [[0, 1, 0], [0, 0, 1]]})
    assert code == 3


@pytest.mark.parametrize("doc", [
    {"dim": 2},
    {"dim": 0, "vertices": [[]]},
    {"dim": 2, "vertices": [[0.5, 1], [0, 0], [1, 0]]},
    {"dim": 2, "vertices": [["0"], ["1"]]},
    {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"]],
     "inequalities": [[0, 1, 0], [0, 0, 1], [2, -1, -1]]},
])
def test_invalid_documents(tmp_path, doc):
    code, _, _ = cli(tmp_path, ["facets"], doc)
    assert code == 2


def test_consistent_double_representation(tmp_path):
    doc = {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"]],
           "inequalities": [["0", "1", "0"], ["0", "0", "1"], ["1", "-1", "-1"]]}
    assert cli(tmp_path, ["facets"], doc)[0] == 0


def test_octahedron_residual(tmp_path):
    code, out, _ = cli(tmp_path, ["residual"], OCTAHEDRON)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 20
    points, orders = [], []
    for line in lines:
        coords, k = line.split()
        points.append(tuple(int(c) for c in coords.strip("()").split(":")))
        orders.append(int(k))
    assert points == sorted(points)
    assert {primitive_integer(p) for p in points} == {primitive_integer(c) for c in OCTAHEDRON_R0_COLUMNS}
    assert Counter(orders) == Counter(OCTAHEDRON_ORDERS)


def test_square_and_simplex_residual(tmp_path):
    _, out, _ = cli(tmp_path, ["residual"], SQUARE)
    assert out.splitlines() == ["(0:0:1) 1", "(0:1:0) 1", "(1:0:0) 0", "(1:0:1) 0", "(1:1:0) 0", "(1:1:1) 0"]
    simplex = {"dim": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]}
    _, out, _ = cli(tmp_path, ["residual"], simplex)
    assert len(out.splitlines()) == 4
    assert all(line.endswith(" 0") for line in out.splitlines())


@pytest.mark.parametrize("method", ["warren", "interpolate", "both"])
def test_adjoint_command(tmp_path, method):
    assert cli(tmp_path, ["adjoint", "--method", method], OCTAHEDRON)[1].strip() == OCT_ADJ
    assert cli(tmp_path, ["adjoint", "--method", method], CUBE)[1].strip() == "X0^2"
    out = cli(tmp_path, ["adjoint", "--method", method], TRUNCATED)[1].strip()
    assert parse_poly(out, 5) == parse_poly(ALPHA, 5)


def test_verify_command(tmp_path):
    code, out, _ = cli(tmp_path, ["verify", "@p.txt"], OCTAHEDRON, {"p.txt": OCT_ADJ})
    assert code == 0 and out.strip().endswith("verdict: ok")
    code, out, _ = cli(tmp_path, ["verify", "@p.txt"], OCTAHEDRON, {"p.txt": "X0^4"})
    assert code == 1 and "FAIL" in out
    code, out, _ = cli(tmp_path, ["verify", "@p.txt"], CUBE, {"p.txt": "X0^2\n"})
    assert code == 0
    assert sum(1 for line in out.splitlines() if line.endswith("strict")) == 3
    assert cli(tmp_path, ["verify", "@p.txt"], CUBE, {"p.txt": "X0^2+"})[0] == 2
    assert cli(tmp_path, ["verify", "@p.txt"], CUBE, {"p.txt": "X0^3"})[0] == 2


def test_residue_command(tmp_path):
    code, out, _ = cli(tmp_path, ["residue", "0", "--recurse"], SEGMENT)
    assert code == 0
    seg = [line for line in out.splitlines() if line.startswith("segment")]
    assert len(seg) == 1
    a, b = seg[0].split("\t")[1:]
    assert int(a) == -int(b) != 0
    code, out, _ = cli(tmp_path, ["residue", "0"], CUBE)
    assert code == 0
    assert out.startswith("numerator: ") and "X0" in out.splitlines()[0]
    assert len([line for line in out.splitlines() if line.startswith("  ")]) == 4
    code, out, _ = cli(tmp_path, ["residue", "3", "--recurse"], OCTAHEDRON)
    assert code == 0 and out.strip().endswith("verdict: ok")
    assert "FAIL" not in out


def test_residue_errors(tmp_path):
    code, _, err = cli(tmp_path, ["residue", "0", "--numerator", "@n.txt"], CUBE, {"n.txt": "X0^2-X1^2"})
    assert code == 5 and "vanishes" in err
    assert cli(tmp_path, ["residue", "9"], CUBE)[0] == 2


def test_chart_option(tmp_path):
    code, out, _ = cli(tmp_path, ["vertices", "--chart", "@m.json"], SQUARE,
                       {"m.json": "[[1, 1, 1], [0, 1, 0], [0, 0, 1]]"})
    assert code == 0
    assert set(out.splitlines()) == {"0 0", "0 1/2", "1/2 0", "1/3 1/3"}
    code, _, _ = cli(tmp_path, ["vertices", "--chart", "@m.json"], SQUARE,
                     {"m.json": "[[0, 1, 0], [1, 0, 0], [0, 0, 1]]"})
    assert code == 3


def test_output_is_deterministic(tmp_path):
    first = cli(tmp_path, ["verify", "@p.txt"], OCTAHEDRON, {"p.txt": OCT_ADJ})[1]
    second = cli(tmp_path, ["verify", "@p.txt"], OCTAHEDRON, {"p.txt": OCT_ADJ})[1]
    assert first == second


def test_module_entry_point(tmp_path):
    path = tmp_path / "cube.json"
    path.write_text(json.dumps(CUBE))
    proc = subprocess.run([sys.executable, "-m", "polyadjoint", "adjoint", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "X0^2"
