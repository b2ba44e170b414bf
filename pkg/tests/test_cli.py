from __future__ import annotations

import io
import json

import pytest

from ssharp.cli import run
from ssharp.invariants import node_smoothing_system


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_torus_closed_form_table():
    code, out = call("invariant", "torus", "--m", "2", "--n", "3", "--d", "2")
    assert code == 0
    assert json.loads(out)["s_I"] == {"++": 10, "+-": 7, "-+": 7, "--": 4}


def test_torus_single_index_and_pipeline():
    code, out = call("invariant", "torus", "--m", "2", "--n", "5", "--d", "2", "--index", "+-",
                     "--pipeline")
    assert code == 0 and json.loads(out)["s_I"] == {"+-": 13}


def test_curve_analyze_node():
    code, out = call("curve", "analyze", "--poly", "x^2-y^3-x*y")
    data = json.loads(out)
    assert code == 0 and data["count"] == 1 and data["nodes"] == 1
    assert (data["singular_points"][0]["x"], data["singular_points"][0]["y"]) == ("0", "0")


def test_curve_analyze_with_field():
    code, out = call("curve", "analyze", "--poly", "x^2 - w*y^3 - x*y", "--field", "zeta:3")
    assert code == 0 and json.loads(out)["field"] == "Q(zeta_3)"


def test_curve_family():
    code, out = call("curve", "family", "--m", "2", "--n", "3", "--d", "2", "--a", "0,1",
                     "--eps", "1,1")
    data = json.loads(out)
    assert code == 0 and data["total_nodes"] == 8 and data["pairs"][0]["count"] == 6


def test_presentation_file(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"source_components": 1,
                             "moves": [{"kind": "Curve", "components": [0], "genus": [0],
                                        "double_points": 1, "m_plus": [0], "m_minus": [1]}]}))
    code, out = call("invariant", "pres", str(f))
    data = json.loads(out)
    assert code == 0 and (data["s_plus"], data["s_minus"]) == (1, 0)


def test_deduce_file(tmp_path):
    f = tmp_path / "sys.json"
    f.write_text(json.dumps(node_smoothing_system().to_json()))
    code, out = call("deduce", str(f))
    assert code == 0
    assert json.loads(out)["assignment"] == {"mp1": 0, "mm1": 1, "mp2": 0, "mm2": 1}


def test_deduce_inconsistent(tmp_path):
    f = tmp_path / "sys.json"
    f.write_text(json.dumps({"unknowns": ["a"], "bound": 2,
                             "constraints": [{"lhs": {"a": 1}, "op": "==", "rhs": 9}]}))
    code, out = call("deduce", str(f))
    assert code == 1 and json.loads(out)["status"] == "inconsistent"


@pytest.mark.parametrize("argv", [
    ("curve", "analyze", "--poly", "x^"),
    ("curve", "analyze", "--poly", "w*x"),
    ("curve", "analyze", "--poly", "(x-y)^2"),
    ("invariant", "torus", "--m", "2", "--n", "4", "--d", "2"),
    ("invariant", "pres", "/nonexistent/file.json"),
    ("verify", "paper", "--filter", "no-such-check"),
    ("curve", "family", "--m", "2", "--n", "3", "--d", "2", "--a", "0,0", "--eps", "1,1"),
])
def test_input_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as err:
        run(["invariant", "torus", "--m", "two"])
    assert err.value.code == 2


def test_precision_exhausted_exit_3(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"source_components": 1, "moves": [{"kind": "AddGenus", "c": 0}]}))
    assert call("--precision", "2", "invariant", "pres", str(f))[0] == 3


def test_verify_filter_and_seed():
    code, out = call("verify", "paper", "--filter", "crossing")
    data = json.loads(out)
    assert code == 0 and [c["name"] for c in data["checks"]] == ["12-crossing-switch"]
    _, out = call("--seed", "9", "verify", "paper", "--filter", "ring")
    assert json.loads(out)["seed"] == 9


def test_json_output_is_deterministic():
    argv = ("curve", "analyze", "--poly", "(y - x^2 + 2)*(y + x^2 - 2)")
    assert call(*argv) == call(*argv)


def test_table_format():
    code, out = call("verify", "paper", "--filter", "ring", "--format", "table")
    assert code == 0 and out.strip() == "PASS  01-ring-sanity"
