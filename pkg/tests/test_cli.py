import io
import json
import subprocess
import sys

import pytest

from maasslift.cli import run_command
from maasslift.qseries import PuiseuxSeries, parse_dump


def run(*argv, environ=None):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), stdout=out, stderr=err, environ=environ or {})
    return code, out.getvalue(), err.getvalue()


def test_named_short_expansion():
    code, out, _ = run("named", "--form", "j3", "--terms", "3")
    assert code == 0
    assert out.splitlines() == ["-1\t1", "0\t-12", "1\t54", "O(q^{2})"]


def test_eta_expand_text_and_json_agree():
    code, text, _ = run("eta-expand", "--spec", "3^8", "--terms", "20")
    assert code == 0
    code, doc, _ = run("eta-expand", "--spec", "3^8", "--terms", "20", "--format", "json")
    assert code == 0
    from_json = PuiseuxSeries.from_json(json.loads(doc)["series"])
    assert parse_dump(text).compare(from_json) == (True, from_json.precision)
    assert from_json.coeff(4) == -8


def test_deterministic_output():
    assert run("tensor", "--m", "2/3", "--terms", "8") == run("tensor", "--m", "2/3", "--terms", "8")


def test_env_default_and_flag_override():
    _, env_out, _ = run("named", "--form", "w", environ={"MAASSLIFT_TERMS": "10"})
    assert env_out.splitlines()[-1] == "O(q^{9})"
    _, flag_out, _ = run("named", "--form", "w", "--terms", "12", environ={"MAASSLIFT_TERMS": "10"})
    assert flag_out.splitlines()[-1] == "O(q^{11})"


def test_basis_prints_polynomial():
    code, out, _ = run("basis", "--m", "5/3", "--terms", "4")
    assert code == 0
    assert out.splitlines()[0] == "P\tX^2 - 1480*X + 153860"


def test_theta_default_lattice():
    code, out, _ = run("theta", "--coset", "1", "--terms", "3")
    assert code == 0
    assert out.splitlines()[0].startswith("1/3\t")


def test_lift_json():
    code, out, _ = run("lift", "--m", "2/3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["value_at_z_U"] == "-61"
    assert sorted(map(tuple, doc["poles"])) == [(-11, 1, 3), (-8, 2, 3)]
    assert doc["A"][-1] == "-64"


def test_cm_eval():
    code, out, _ = run("cm-eval", "--form", "[3,1,1]")
    assert code == 0
    assert "polynomial\tX^2 - 10*X + 729" in out.splitlines()


@pytest.mark.parametrize("argv", [["named", "--form", "nope"], ["theta", "--k"], ["frobnicate"], []])
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_bad_environment_exits_two():
    code, _, err = run("named", "--form", "j", environ={"MAASSLIFT_FLOAT_BITS": "12"})
    assert code == 2
    assert "configuration" in err


@pytest.mark.parametrize("argv, stage", [
    (["basis", "--m", "1/2"], "basis"),
    (["eta-expand", "--spec", "0^3"], "eta-expand"),
    (["cm-eval", "--form", "[1,3,1]"], "cm-eval"),
    (["lift", "--m", "2/3", "--terms", "5"], "lift"),
    (["named", "--form", "j", "--terms", "0"], "named"),
])
def test_computation_errors_exit_one(argv, stage):
    code, out, err = run(*argv)
    assert code == 1
    assert f"maasslift: {stage} failed" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "maasslift", "named", "--form", "eta8", "--terms", "8"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "1\t1"


@pytest.mark.slow
def test_verify_paper_exit_status():
    code, out, _ = run("verify-paper")
    assert code == 0
    assert out.splitlines()[-1] == "# overall\tPASS"
