import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from pbq.algebra import ParaBoseAlgebra
from pbq.cli import UsageError, parse_p_grid, run
from pbq.exactnum import ExactQ, scalar_from_json
from pbq.fockrep import ModuleSpec, evaluate_element, module_matrices


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_p_grid_syntax():
    assert parse_p_grid("1/2,1, 3/2") == [Fraction(1, 2), Fraction(1), Fraction(3, 2)]
    assert parse_p_grid("0:1/2:2") == [Fraction(j, 2) for j in range(5)]
    assert parse_p_grid("1,1,0:1:1") == [Fraction(0), Fraction(1)]
    for bad in ("", "x", "0:0:1", "1:2"):
        with pytest.raises(UsageError):
            parse_p_grid(bad)


def test_unitary_lists_two_irreps_for_m3_k10(capsys):
    code, out, _ = invoke(capsys, "unitary", "--m", "3", "--k", "10", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert [(r["p"], r["dim"]) for r in rows] == [("27", 4), ("29", 2)]


def test_unitary_pretty_table(capsys):
    code, out, _ = invoke(capsys, "unitary", "--m", "5", "--k", "7")
    assert code == 0
    assert "W(|6;0>, |6;1>)" in out


def test_eval_anticommutator(capsys):
    code, out, _ = invoke(
        capsys, "eval", "--m", "1", "--k", "2", "--p", "1", "--L", "1", "--expr", "a+ a- + a- a+", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    alg = ParaBoseAlgebra(ExactQ(1, 2))
    rep = module_matrices(ModuleSpec(1, 2, 1, 0, 1))
    expected = evaluate_element(alg.bracket_K(), rep)
    got = [[scalar_from_json(x) for x in row] for row in data["matrix"]]
    assert got == expected.tolist()
    # on this module [K] = diag([1], [3]) happens to be the identity
    assert data["scalar"] and data["diagonal"] and not data["zero"]
    assert scalar_from_json(data["scalar_value"]) == 1


def test_eval_pretty_reports_classification(capsys):
    code, out, _ = invoke(capsys, "eval", "--m", "1", "--k", "3", "--p", "1", "--L", "2", "--expr", "K - K^-1")
    assert code == 0
    assert "classification: non-scalar diagonal" in out
    code, out, _ = invoke(capsys, "eval", "--m", "1", "--k", "2", "--p", "1", "--L", "1", "--expr", "a+^8")
    assert "classification: zero" in out


def test_eval_parse_error_is_usage_error(capsys):
    code, _, err = invoke(capsys, "eval", "--m", "1", "--k", "2", "--p", "1", "--L", "1", "--expr", "a+ + * K")
    assert code == 2
    assert "position" in err or "5" in err


def test_canon_composed_map(capsys):
    code, out, _ = invoke(capsys, "canon", "--m", "7", "--k", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["canonical"]["m"] == 1 and data["canonical"]["k"] == 4
    assert data["generator_map"]["map"]["a+"] == "a-"
    assert data["raw_relations_hold"]


def test_canon_excluded_parameter_exits_2(capsys):
    code, _, err = invoke(capsys, "canon", "--m", "2", "--k", "2")
    assert code == 2 and "error" in err


def test_classify_formats_are_byte_stable(capsys):
    outs = []
    for fmt in ("json", "csv", "json", "csv"):
        code, out, _ = invoke(capsys, "classify", "--m", "1", "--k", "3", "--format", fmt)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[2] and outs[1] == outs[3]
    header = outs[1].splitlines()[0]
    assert header == "m,k,case,p,L,dim,casimir_re,casimir_im,unitarizable"


def test_classify_rows_sorted_by_weight(capsys):
    _, out, _ = invoke(capsys, "classify", "--m", "1", "--k", "2", "--p-grid", "1/2,5/2", "--format", "json")
    ps = [Fraction(r["p"]) for r in json.loads(out)]
    assert ps == sorted(ps)
    assert Fraction(1, 2) in ps and Fraction(5, 2) in ps


def test_classify_rejects_non_admissible(capsys):
    code, _, err = invoke(capsys, "classify", "--m", "2", "--k", "4")
    assert code == 2 and "canon" in err


def test_matrices_json(capsys, tmp_path):
    target = tmp_path / "m.json"
    code, out, _ = invoke(
        capsys, "matrices", "--m", "1", "--k", "2", "--p", "1", "--L", "1", "--orthonormal", "--out", str(target)
    )
    assert code == 0 and out == ""
    code, out, _ = invoke(capsys, "matrices", "--m", "1", "--k", "2", "--p", "1", "--L", "1", "--format", "json")
    data = json.loads(out)
    assert data["basis_kind"] == "verma" and len(data["Kmat"]) == 2
    assert "A_plus" in target.read_text()


def test_matrices_decimal_weight_uses_approx(capsys):
    code, out, _ = invoke(capsys, "matrices", "--m", "1", "--k", "2", "--p", "0.37", "--L", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["exact"] is False


def test_usage_errors_exit_2(capsys):
    assert run(["nosuch"]) == 2
    assert run(["classify", "--m", "1"]) == 2
    assert run(["classify", "--m", "1", "--k", "2", "--precision", "8"]) == 2
    assert run(["classify", "--m", "1", "--k", "2", "--format", "xml"]) == 2
    assert run(["verify", "--m", "1"]) == 2
    capsys.readouterr()


def test_verify_single_algebra(capsys):
    code, out, _ = invoke(capsys, "verify", "--m", "3", "--k", "4", "--format", "json")
    data = json.loads(out)
    failed = {r["check"] for r in data["results"] if not r["passed"]}
    assert failed == {"casimir closed form"}
    assert code == 1


def test_verify_full_suite_under_a_minute():
    """The default run covers every admissible (m, k) with k <= 9.

    Only the two checks that compare against disputed closed-form claims
    fail; everything else must pass.
    """
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pbq", "verify", "--format", "json"], capture_output=True, text=True, timeout=300
    )
    elapsed = time.perf_counter() - start
    assert proc.returncode == 1, proc.stderr
    data = json.loads(proc.stdout)
    failed = {r["check"] for r in data["results"] if not r["passed"]}
    assert failed == {"casimir closed form", "even m has no unitarizable irreps"}
    assert elapsed < 60
