import json
import subprocess
import sys

from localbrauer import cli


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hilbert_text(capsys):
    code, out, err = run_cli(capsys, "hilbert", "2", "-1", "-1")
    assert (code, out, err) == (0, "-1\n", "")
    code, out, _ = run_cli(capsys, "hilbert", "2", "2", "7")
    assert (code, out) == (0, "+1\n")
    code, out, _ = run_cli(capsys, "hilbert", "5", "3", "5")
    assert (code, out) == (0, "-1\n")


def test_hilbert_json(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "2", "-1", "-1",
                           "--format", "json")
    assert code == 0
    assert json.loads(out) == -1


def test_hilbert_negative_fraction_needs_separator(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "2", "--", "-1/2", "7")
    assert (code, out) == (0, "-1\n")
    code, _, _ = run_cli(capsys, "hilbert", "2", "-1/2", "7")
    assert code == 2  # looks like an option without the -- separator


def test_hilbert_zero_rejected(capsys):
    code, _, err = run_cli(capsys, "hilbert", "2", "0", "3")
    assert code == 2
    assert err.startswith("error:")


def test_square_classes(capsys):
    code, out, _ = run_cli(capsys, "square-classes", "2")
    assert (code, out) == (0, "1 -1 2 -2 5 -5 10 -10\n")
    code, out, _ = run_cli(capsys, "square-classes", "7", "--format", "json")
    assert code == 0
    assert json.loads(out) == [1, 3, 7, 21]


def test_norm(capsys):
    code, out, _ = run_cli(capsys, "norm", "--a", "10", "--v", "10+1r")
    assert (code, out) == (0, "90\n")
    code, out, _ = run_cli(capsys, "norm", "--a", "2", "--v", "2+1r",
                           "--format", "json")
    assert code == 0
    assert json.loads(out) == "2"
    code, out, _ = run_cli(capsys, "norm", "--a", "2", "--v", "1/2+-3/4r",
                           "--p", "2")
    assert (code, out) == (0, "-7/8\n")


def test_norm_bad_input(capsys):
    code, _, err = run_cli(capsys, "norm", "--a", "2", "--v", "bogus")
    assert code == 2
    assert err.startswith("error:")
    code, _, err = run_cli(capsys, "norm", "--a", "4", "--v", "1+1r")
    assert code == 2  # square radicand


def test_certify_noncyclic_deg4(capsys):
    code, out, err = run_cli(capsys, "certify-noncyclic", "--degree", "4")
    assert code == 0
    assert err == ""
    assert out.startswith("kind: NoncyclicDeg4")
    assert "verdict: pass" in out
    assert "conclusion: NONCYCLIC" in out


def test_certify_noncyclic_deg4_json(capsys):
    code, out, _ = run_cli(capsys, "certify-noncyclic", "--degree", "4",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "NoncyclicDeg4"
    assert payload["verdict"] == "pass"
    assert len(payload["steps"]) == 30
    assert all(step["pass"] for step in payload["steps"])


def test_certify_noncyclic_deterministic(capsys):
    _, first, _ = run_cli(capsys, "certify-noncyclic", "--degree", "4",
                          "--format", "json")
    _, second, _ = run_cli(capsys, "certify-noncyclic", "--degree", "4",
                           "--format", "json")
    assert first == second


def test_certify_noncyclic_deg8(capsys):
    code, out, _ = run_cli(capsys, "certify-noncyclic", "--degree", "8")
    assert code == 0
    assert "verdict: pass" in out
    code, _, _ = run_cli(capsys, "certify-noncyclic", "--degree", "6")
    assert code == 2


def test_certify_noncyclic_low_precision(capsys):
    code, out, _ = run_cli(capsys, "certify-noncyclic", "--degree", "4",
                           "--precision", "12")
    assert code == 0
    assert "verdict: pass" in out


def test_construct_cyclic(capsys):
    code, out, _ = run_cli(capsys, "construct-cyclic", "--p", "7", "--l", "3",
                           "--n", "9")
    assert code == 0
    assert "conclusion: CYCLIC" in out
    code, _, err = run_cli(capsys, "construct-cyclic", "--p", "7", "--l", "7",
                           "--n", "49")
    assert code == 2
    assert err.startswith("error:")


def test_construct_cyclic_2adic(capsys):
    code, out, _ = run_cli(capsys, "construct-cyclic-2adic", "--p", "3",
                           "--r", "2")
    assert code == 0
    assert "verdict: pass" in out
    code, _, err = run_cli(capsys, "construct-cyclic-2adic", "--p", "5",
                           "--r", "2")
    assert code == 2
    assert err.startswith("error:")


def test_eta(capsys):
    code, out, _ = run_cli(capsys, "eta", "--max-j", "12")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 12
    assert lines[0] == "1 -2"
    assert all(line == f"{j} 2" for j, line in enumerate(lines[1:], start=2))
    code, out, _ = run_cli(capsys, "eta", "--max-j", "3", "--format", "json")
    assert code == 0
    assert json.loads(out) == [[1, -2], [2, 2], [3, 2]]


def test_eta_bounds(capsys):
    for bad in ("0", "17"):
        code, _, err = run_cli(capsys, "eta", "--max-j", bad)
        assert code == 2
        assert err.startswith("error:")


def test_length_table(capsys):
    code, out, _ = run_cli(capsys, "length-table", "--p", "2", "--n", "8")
    assert (code, out) == (0, "2\n")
    code, out, _ = run_cli(capsys, "length-table", "--p", "5", "--n", "8",
                           "--format", "json")
    assert code == 0
    assert json.loads(out) == 1
    code, _, _ = run_cli(capsys, "length-table", "--p", "2", "--n", "1")
    assert code == 2


def test_mu_check(capsys):
    code, out, _ = run_cli(capsys, "mu-check", "--p", "5", "--n", "4")
    assert code == 0
    assert "conclusion: CYCLIC" in out
    code, out, _ = run_cli(capsys, "mu-check", "--p", "2", "--n", "4")
    assert code == 0  # the criterion not applying is still a verified outcome
    assert "conclusion: NOT APPLICABLE" in out
    code, _, _ = run_cli(capsys, "mu-check", "--p", "6", "--n", "2")
    assert code == 2


def test_usage_errors(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 2
    assert run_cli(capsys)[0] == 2
    assert run_cli(capsys, "hilbert", "2", "3")[0] == 2  # missing operand


def test_help_exits_zero(capsys):
    code, out, _ = run_cli(capsys, "--help")
    assert code == 0
    assert "usage" in out


def test_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "localbrauer.cli", "hilbert", "2", "-1", "-1"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "-1\n"
