import json

import pytest

import cli
from controllers import verification_controller
from controllers.verification_controller import VerificationController
from models.errors import VerificationError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------
# member / complete
# ---------------------------------------------------------
def test_member_n1(capsys):
    code, out, _ = run(capsys, "member", "0,1;1,0", "--n", "1")
    assert code == 0
    assert out.strip() == "member"


def test_non_member_names_the_constraint(capsys):
    code, out, _ = run(capsys, "member", "1,0,0;0,1,0;0,0,1")
    assert code == 1
    assert out.strip() == "non-member: trace is 3, not 0"


def test_ragged_matrix_is_a_usage_error(capsys):
    code, _, err = run(capsys, "member", "1,0;0")
    assert code == 2
    assert "error" in err


def test_one_by_one_matrix_is_a_non_member(capsys):
    code, out, _ = run(capsys, "member", "5")
    assert code == 1
    assert out.strip() == "non-member: shape 1x1, expected 2x2"


def test_member_from_file(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("0,0,1;-1,1,1;2,0,-1\n", encoding="utf-8")
    code, out, _ = run(capsys, "member", f"@{path}")
    assert code == 0
    assert out.strip() == "member"


def test_member_with_omega_needs_qw(capsys):
    code, out, _ = run(capsys, "member", "w,0,1-w;1-2w,0,2w;w,1,-w")
    assert code == 1
    assert "Q(w)" in out
    code, out, _ = run(capsys, "member", "w,0,1-w;1-2w,0,2w;w,1,-w", "--field", "qw")
    assert code == 0


def test_complete(capsys):
    code, out, _ = run(capsys, "complete", "0,1,0", "--n", "2")
    assert code == 0
    assert out.strip() == "0,1,0;0,0,1;1,0,0"
    code, out, _ = run(capsys, "complete", "--n", "1")
    assert code == 0
    assert out.strip() == "0,1;1,0"


@pytest.mark.parametrize("argv", [
    ("complete", "1,2", "--n", "2"),
    ("complete", "1,x,0", "--n", "2"),
    ("complete", "w,0,0", "--n", "2"),
    ("frobnicate",),
    ("member",),
    ("axioms", "--suite", "zeta", "--mutate"),
    ("table", "--n", "3"),
    ("chevalley", "--n", "1"),
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


# ---------------------------------------------------------
# bracket / table / reduce / chevalley
# ---------------------------------------------------------
def test_bracket_of_generators(capsys):
    code, out, _ = run(capsys, "bracket", "A00_0", "A01_0")
    assert code == 0
    assert out.splitlines() == ["0,1,0;0,0,1;1,0,0", "coefficients: 0,1,0,0"]
    code, out, _ = run(capsys, "bracket", "A00_1", "A10_0")
    assert out.splitlines()[1] == "coefficients: -3,1,1,2"


def test_bracket_of_equal_inputs(capsys):
    code, out, _ = run(capsys, "bracket", "0,0,1;-1,1,1;2,0,-1", "0,0,1;-1,1,1;2,0,-1")
    assert code == 0
    assert out.splitlines()[0] == "0,0,1;-1,1,1;2,0,-1"


def test_bracket_of_non_member(capsys):
    code, _, err = run(capsys, "bracket", "1,0,0;0,1,0;0,0,1", "A00_0")
    assert code == 1
    assert "trace" in err


def test_table(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0
    assert out.splitlines() == [
        "[A01_0,A00_1] = A01_0 + 2*A00_1 - 2*A10_0",
        "[A00_0,A00_1] = -A01_0 + 2*A10_0",
        "[A00_0,A10_0] = A01_0 - 2*A00_1 + 2*A10_0",
        "[A01_0,A10_0] = -A01_0 + 2*A00_1",
        "[A00_0,A01_0] = A01_0",
        "[A00_1,A10_0] = -3*A00_0 + A01_0 + A00_1 + 2*A10_0",
    ]


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "A01_0", "A00_0", "A00_1")
    assert code == 0
    assert out.splitlines()[-1] == "intertwines: yes"


def test_chevalley(capsys):
    code, out, _ = run(capsys, "chevalley")
    assert code == 0
    assert out.count(": verified") == 3
    assert out.splitlines()[0] == "basepoint: A01_0"


# ---------------------------------------------------------
# line-iso / axioms
# ---------------------------------------------------------
def test_line_iso(capsys):
    code, out, _ = run(capsys, "line-iso", "1", "2", "0", "1")
    assert code == 1
    assert out.strip() == "not preserved"
    code, out, _ = run(capsys, "line-iso", "1/2", "1/2", "0", "1")
    assert code == 0
    assert out.strip() == "preserved"
    code, out, _ = run(capsys, "line-iso", "w", "1", "2", "2")
    assert code == 0


def test_axioms_pass_and_print_the_seed(capsys):
    code, out, _ = run(capsys, "axioms", "--samples", "6", "--seed", "3", "--suite", "bracket")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "seed: 3"
    assert lines[-1].startswith("bracket: pass")


def test_axioms_mutated_prints_counterexample(capsys):
    code, out, _ = run(capsys, "axioms", "--samples", "6", "--suite", "heap", "--mutate")
    assert code == 1
    assert "FAIL para-associativity" in out
    payload = json.loads(out[out.index("{"):])
    assert payload["passed"] is False
    assert set(payload["inputs"]) == {"a", "b", "c", "d", "e"}


@pytest.mark.parametrize("suite", ["heap", "action", "bracket", "bi-affine", "reduced"])
def test_every_mutable_suite_fails_when_mutated(capsys, suite):
    code, out, _ = run(capsys, "axioms", "--samples", "5", "--suite", suite, "--mutate", "--json")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_axioms_over_eisenstein(capsys):
    code, out, _ = run(capsys, "axioms", "--samples", "4", "--field", "qw", "--suite", "action", "--json")
    assert code == 0
    assert json.loads(out)["field"] == "qw"


def test_json_is_stable_under_flag_order(capsys):
    _, first, _ = run(capsys, "--json", "--n", "1", "member", "0,1;1,0")
    _, second, _ = run(capsys, "member", "0,1;1,0", "--json", "--n", "1")
    assert first == second
    assert json.loads(first) == {"member": True, "n": 1, "violated": None}


@pytest.mark.parametrize("argv, code, text", [
    (("line-iso", "1", "-w", "0", "1"), 1, "not preserved"),
    (("line-iso", "-1/2", "-1/2", "0", "1"), 0, "preserved"),
    (("line-iso", "-w", "-w", "-1/2", "2", "--json"), 0, None),
])
def test_negative_literals_stay_positional(capsys, argv, code, text):
    result, out, _ = run(capsys, *argv)
    assert result == code
    if text is not None:
        assert out.strip() == text
    else:
        assert json.loads(out)["zeta1"] == "-w"


def test_negative_pattern_for_complete(capsys):
    code, out, _ = run(capsys, "complete", "-1/2,0,0", "--n", "2")
    assert code == 0
    assert out.strip().split(";")[0] == "-1/2,0,3/2"


def test_shield_leaves_flags_alone():
    argv = ["--n", "2", "line-iso", "-w", "1", "-1/2", "3", "--json", "-h"]
    assert cli.shield_negative_literals(argv) == ["--n", "2", "line-iso", " -w", "1", " -1/2", "3", "--json", "-h"]


def test_line_iso_disagreement_is_an_internal_error(monkeypatch):
    monkeypatch.setattr(verification_controller, "line_map_preserves", lambda *args, **kwargs: True)
    with pytest.raises(VerificationError):
        VerificationController().line_iso(1, 2, 0, 1)
