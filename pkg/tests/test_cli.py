import io
import json

import pytest

from cyclohecke.cli import main
from cyclohecke.hecke import HElement


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    return code, (json.loads(out) if out else None), err


def test_reduce_quadratic():
    code, obj, err = run_json("reduce", "G1 G1", "--m", "1", "--n", "2")
    assert code == 0 and "dimension m^n n! = 2" in err
    coeffs = {tuple(map(tuple, t["layers"])): t["coeff"]["num"] for t in obj["terms"]}
    assert coeffs == {((0, 0), (0, 0)): "-q^-1 + q", ((1, 0), (0, 0)): "1"}


def test_tau_commutes_with_g2():
    a = run("reduce", "T G2", "--m", "2", "--n", "3", "--json")
    b = run("reduce", "G2 T", "--m", "2", "--n", "3", "--json")
    assert a == b


def test_bad_word_is_usage_error():
    code, out, err = run("reduce", "G9", "--n", "2")
    assert code == 2 and "position 0" in err and out == ""


def test_round_trip_through_files(tmp_path):
    code, obj, _ = run_json("mul", "T G1", "G1 T^-1", "--m", "2", "--n", "2")
    path = tmp_path / "x.json"
    path.write_text(json.dumps(obj))
    assert HElement.from_json(obj).to_json() == obj
    code2, obj2, _ = run_json("mul", f"@{path}", "1", "--m", "2", "--n", "2")
    assert code2 == 0 and obj2 == obj


def test_trace_generic_D():
    code, out, _ = run("trace", "G1", "--n", "2", "--D", "generic")
    assert code == 0 and out.strip() == "D"


def test_trace_with_values():
    code, obj, _ = run_json("trace", "T", "--m", "2", "--n", "1", "--mu", "1=q^2")
    assert obj["markov_trace"]["num"] == "q^2"


def test_weights_gamma_circ():
    code, obj, _ = run_json("weights", "--m", "1", "--n", "2", "--gamma", "circ")
    rows = {json.dumps(r["lambda"]): r for r in obj["weights"]}
    assert rows["[[2]]"]["w"] == {"num": "1", "den": "1 + q^2"}
    assert rows["[[1, 1]]"]["w"] == {"num": "q^2", "den": "1 + q^2"}
    assert set(rows["[[2]]"]) >= {"lambda", "w", "wtilde", "schur"}


def test_weights_with_bindings_is_deterministic():
    a = run("weights", "--m", "2", "--n", "2", "--gamma", "g0=1,g1=0", "--json")
    b = run("weights", "--m", "2", "--n", "2", "--gamma", "g0=1,g1=0", "--json")
    assert a == b and a[0] == 0


def test_q_special():
    code, obj, _ = run_json("reduce", "G1 G1", "--m", "1", "--n", "2", "--q-special", "1")
    assert [t["layers"] for t in obj["terms"]] == [[[1, 0], [0, 0]]]


def test_fusion_tableau():
    code, obj, _ = run_json("fusion", "--tableau", "[[[1, 2]]]")
    assert code == 0
    E = HElement.from_json(obj["idempotent"])
    assert E.sig.n == 2 and len(E.terms) == 2


def test_fusion_signature_mismatch():
    code, _, err = run("fusion", "--tableau", "[[[1, 2]]]", "--m", "2", "--n", "2")
    assert code == 2 and "tableau" in err


def test_cosets_m3_n2():
    code, obj, _ = run_json("cosets", "--m", "3", "--n", "2")
    assert len(obj["vertices"]) == 6 and set(obj["actions"]) == {"t", "t^-1", "s1"}


def test_normal_form_command():
    code, obj, _ = run_json("normal-form", "s1 t s1", "--m", "2", "--n", "2")
    assert obj["normal_form"] == [[1, 1], [0, 0]]


def test_induce_and_burau():
    code, obj, _ = run_json("induce", "--m", "2", "--n", "2")
    assert code == 0 and obj["dim"] == 8
    code, obj, _ = run_json("burau", "--m", "2", "--n", "3", "--e", "2")
    assert code == 0 and obj["dim"] == 6
    assert run("burau", "--m", "2", "--n", "3", "--e", "3")[0] == 2
    assert run("induce", "--affine", "--n", "2")[0] == 2


def test_verify_all_passes():
    code, obj, _ = run_json("verify", "all", "--m", "2", "--n", "2")
    assert code == 0 and obj["ok"]
    assert [s["suite"] for s in obj["suites"]] == ["relations", "flatness", "group", "induced", "traces", "central", "fusion"]
    assert all(c["anchor"] for s in obj["suites"] for c in s["checks"])


def test_verify_fusion_counts_idempotents():
    code, obj, _ = run_json("verify", "fusion", "--m", "1", "--n", "3")
    assert code == 0 and obj["suites"][0]["idempotents"] == 4


def test_verify_with_fault_fails():
    code, _, _ = run("verify", "relations", "--m", "2", "--n", "2", "--inject-fault")
    assert code == 1
    assert run("verify", "relations", "--m", "2", "--n", "2")[0] == 0


def test_verify_affine():
    code, obj, _ = run_json("verify", "all", "--affine", "--n", "2")
    assert code == 0 and "skipped" in obj["suites"][-1]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "nonsense"],
        ["verify", "all", "--m", "5", "--n", "4"],
        ["reduce", "G1", "--m", "2", "--affine"],
        ["weights", "--m", "2", "--n", "1", "--gamma", "x=1"],
        ["trace", "G1", "--D", "q $"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_guard_can_be_forced():
    code, _, err = run("reduce", "T", "--m", "5", "--n", "4", "--force")
    assert code == 0 and "15000" in err


def test_output_file(tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run("cosets", "--m", "2", "--n", "2", "--json", "--output", str(path))
    assert code == 0 and out == "" and json.loads(path.read_text())["n"] == 2
