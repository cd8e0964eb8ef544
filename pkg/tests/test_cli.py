from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from tropcycle import io
from tropcycle.cli import run
from tropcycle.graphcurve import Divisor, GraphPoint, MetricGraph
from tropcycle.troppoly import TropPoly
from tropcycle.tvhs import Affine, DivisorFamily, circle_family

CIRCLE = MetricGraph((0,), ((0, 0, 3),))
LINE = TropPoly(2, (((0, 0), 0), ((1, 0), 0), ((0, 1), 0)))


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(io.dumps(doc), encoding="utf-8")
    return str(p)


def section_doc():
    fam = circle_family([Affine(0, (0,)), Affine(0, (Fraction(1, 2),))])
    Z = DivisorFamily(((("mark", 1), 1), (("mark", 0), -1)))
    return io.envelope("section", {"family": io.family_body_to_json(fam), "divisor": io.family_divisor_to_json(Z)})


def inputs(tmp_path):
    """One valid (argv, input document) pair per subcommand."""
    q = GraphPoint(edge=0, offset=Fraction(1))
    D = Divisor({q: 1, GraphPoint(vertex=0): -1})
    div_q = io.envelope("divisor_query", {
        "graph": io.graph_to_json(CIRCLE), "divisor": io.divisor_terms_to_json(D),
        "other": io.divisor_terms_to_json(D), "base": {"vertex": 0},
    })
    aj_q = io.envelope("aj_query", {"graph": io.graph_to_json(CIRCLE), "divisor": io.divisor_terms_to_json(D)})
    puiseux = io.envelope("newton_polygon", {"valuations": [{"deg": 0, "val": "2"}, {"deg": 1, "val": "0"}, {"deg": 2, "val": "0"}]})
    kq = io.envelope("kunneth_query", {"genera": [1, 2]})
    sec = write(tmp_path, "section.json", section_doc())
    return {
        "hypersurface": ["--input", write(tmp_path, "line.json", io.to_json(LINE))],
        "balance-check": ["--input", write(tmp_path, "line2.json", io.to_json(LINE))],
        "divisor": ["--input", write(tmp_path, "dq.json", div_q)],
        "jacobian": ["--input", write(tmp_path, "circle.json", io.to_json(CIRCLE))],
        "abel-jacobi": ["--input", write(tmp_path, "aj.json", aj_q)],
        "normal-function": ["--input", sec],
        "gm-derivative": ["--input", sec],
        "bb-level": ["--input", sec],
        "kunneth": ["--input", write(tmp_path, "kq.json", kq)],
        "fz-series": ["--n", "1", "--r", "0"],
        "tropicalize": ["--input", write(tmp_path, "np.json", puiseux)],
        "enumerate-graphs": ["--g", "2", "--n", "0"],
    }


def invoke(tmp_path, command, extra, name="out"):
    out = tmp_path / name
    code = run([command, *extra, "--output", str(out)])
    return code, (out.read_text(encoding="utf-8") if out.exists() else None)


@pytest.mark.parametrize("command", sorted([
    "hypersurface", "balance-check", "divisor", "jacobian", "abel-jacobi", "normal-function",
    "gm-derivative", "bb-level", "kunneth", "fz-series", "tropicalize", "enumerate-graphs"]))
def test_every_command_succeeds_deterministically(tmp_path, command):
    argv = inputs(tmp_path)[command]
    c1, t1 = invoke(tmp_path, command, argv, "a")
    c2, t2 = invoke(tmp_path, command, argv, "b")
    assert c1 == c2 == 0
    assert t1 == t2 and t1.endswith("\n")
    json.loads(t1)


def test_line_is_balanced(tmp_path):
    _, text = invoke(tmp_path, "balance-check", inputs(tmp_path)["balance-check"])
    assert json.loads(text)["status"] == "balanced"


def test_abel_jacobi_on_circle(tmp_path):
    _, text = invoke(tmp_path, "abel-jacobi", inputs(tmp_path)["abel-jacobi"])
    doc = json.loads(text)
    assert doc["kind"] == "jacpoint" and doc["coords"] == ["1"]


def test_fz_series_emits_expression(tmp_path, capsys):
    _, text = invoke(tmp_path, "fz-series", ["--n", "1", "--r", "0"])
    doc = json.loads(text)
    assert doc["kind"] == "fz_relation" and doc["text"] == "-1"
    assert capsys.readouterr().out.strip() == "-1"


def test_divisor_report(tmp_path):
    _, text = invoke(tmp_path, "divisor", inputs(tmp_path)["divisor"])
    doc = json.loads(text)
    assert doc["degree"] == 0 and doc["equivalent"] is True


def test_normal_function_csv(tmp_path):
    argv = inputs(tmp_path)["normal-function"] + ["--format", "csv", "--grid", "3"]
    code, text = invoke(tmp_path, "normal-function", argv)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "s_1,c_1,delta_1_1"
    for row in lines[1:]:
        s, c, d = (Fraction(x) for x in row.split(","))
        assert c == s / 2 and d == Fraction(1, 2)


def test_hypersurface_svg(tmp_path):
    argv = inputs(tmp_path)["hypersurface"] + ["--format", "svg"]
    code, text = invoke(tmp_path, "hypersurface", argv)
    assert code == 0 and text.startswith("<svg") and text.count("<line") == 3


def test_unsupported_format_is_usage_error(tmp_path):
    assert run(["jacobian", *inputs(tmp_path)["jacobian"], "--format", "csv"]) == 2


def test_schema_error_exit_code(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"schema": "tropcycle/1", "kind": "polynomial", "vars": 2,
                                       "terms": [{"coeff": 0.5, "exp": [0, 0]}]})
    assert run(["hypersurface", "--input", bad]) == 2
    assert "$.terms[0].coeff" in capsys.readouterr().err


def test_wrong_kind_and_missing_input(tmp_path):
    assert run(["jacobian", *inputs(tmp_path)["kunneth"]]) == 2
    assert run(["jacobian"]) == 2
    assert run(["jacobian", "--input", str(tmp_path / "missing.json")]) == 2
    assert run(["no-such-command"]) == 2


def test_domain_error_exit_code(tmp_path):
    assert run(["enumerate-graphs", "--g", "1", "--n", "0"]) == 1
    kq = write(tmp_path, "k4.json", io.envelope("kunneth_query", {"genera": [1, 1, 1, 1]}))
    assert run(["kunneth", "--input", kq]) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "tropcycle", "fz-series", "--n", "1", "--r", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "fz_relation"
