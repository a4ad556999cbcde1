import json
import subprocess
import sys

import pytest

from vhess.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_family_build_perazzo(capsys):
    code, out, _ = run(["family", "build", "perazzo"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["id"] == "perazzo" and obj["degree"] == 3


def test_family_build_pencil(capsys, tmp_path):
    path = tmp_path / "p7.json"
    code, out, _ = run(["family", "build", "pencil", "--g", "z1^2+z2^2+z3^2", "-o", str(path)],
                       capsys)
    assert code == 0
    obj = json.loads(path.read_text())
    assert obj["n_vars"] == 8 and obj["degree"] == 4


def test_family_build_scroll(capsys):
    code, out, _ = run(["family", "build", "scroll-dual", "--a", "1", "--b", "2"], capsys)
    assert code == 0 and json.loads(out)["degree"] == 3


def test_family_list(capsys):
    code, out, _ = run(["family", "list"], capsys)
    assert code == 0
    assert "p7-fermat" in {m["id"] for m in json.loads(out)}


@pytest.mark.parametrize("argv", [
    ["family", "build", "nope"],
    ["family", "build", "generic-det"],
    ["family", "build"],
    ["family", "build", "pencil", "--g", "z1^2+z2^2+0*z3"],
])
def test_family_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_profile_family(capsys):
    code, out, _ = run(["profile", "perazzo"], capsys)
    assert code == 0 and json.loads(out)["hess_is_zero"] is True


def test_profile_expect_pass_and_fail(capsys):
    assert run(["profile", "p7-fermat", "--expect", "codim=2"], capsys)[0] == 0
    code, out, _ = run(["profile", "p7-fermat", "--expect", "codim=3"], capsys)
    assert code == 1
    assert json.loads(out)["expect"]["mismatches"]["codim_dual_in_polar"]["measured"] == 2


def test_profile_inline_and_file(capsys, tmp_path):
    code, out, _ = run(["profile", "x0*x3^2 + x1*x3*x4 + x2*x4^2"], capsys)
    assert code == 0 and json.loads(out)["generic_rank"] == 4
    f = tmp_path / "f.txt"
    f.write_text("x^2 + y^2 + z^2\n")
    code, out, _ = run(["profile", str(f), "--rank-mod", "exact"], capsys)
    assert code == 0 and json.loads(out)["hess_is_zero"] is False
    g = tmp_path / "inst.json"
    run(["family", "build", "sym-slice", "--n", "2", "-o", str(g)], capsys)
    code, out, _ = run(["profile", str(g), "--expect", "codim=1"], capsys)
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["profile", "x^2 + ("],
    ["profile", "x^2 + y"],
    ["profile", "perazzo", "--expect", "codim"],
    ["profile", "perazzo", "--expect", "bogus=1"],
    ["profile", "x^5+y^5+z^5", "--rank-mod", "exact"],
    ["--prime", "15", "profile", "perazzo"],
])
def test_profile_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_verify_examples(capsys):
    code, out, _ = run(["verify", "segre-alpha", "--n", "2"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "PASS" and rep["constant"] == "-2"
    assert run(["verify", "lagrange", "--n", "2"], capsys)[0] == 0
    assert run(["verify", "pf-square", "--m", "2"], capsys)[0] == 0


def test_verify_unknown_and_bad_params(capsys):
    assert run(["verify", "nope"], capsys)[0] == 2
    assert run(["verify", "lagrange", "--b", "2"], capsys)[0] == 2
    assert run(["verify", "gradient-relations", "--family", "perazzo"], capsys)[0] == 2


def test_verify_failure_exit_code(capsys):
    assert run(["verify", "hess-zero"], capsys)[0] == 0
    code, out, _ = run(["verify", "hess-zero", "--poly", "x^3 + y^3 + z^3"], capsys)
    assert code == 1 and json.loads(out)["verdict"] == "FAIL"
    assert run(["verify", "hess-zero", "--poly", "x^3 + y"], capsys)[0] == 2


def test_global_flags_position(capsys, tmp_path):
    out1 = tmp_path / "a.json"
    code, out, _ = run(["--seed", "3", "verify", "segre-gamma", "--json", str(out1)], capsys)
    rep = json.loads(out1.read_text())
    assert code == 0 and rep["cfg"]["seed"] == 3
    code, out, _ = run(["verify", "segre-gamma", "--seed", "3"], capsys)
    assert json.loads(out) == rep


def test_acceptance_subset_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["acceptance", "--only", "C01,C05,C08", "--json", str(a)], capsys)[0] == 0
    assert run(["acceptance", "--only", "C01,C05,C08", "--json", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    obj = json.loads(a.read_text())
    assert [r["id"] for r in obj["records"]] == ["C01", "C05", "C08"]


def test_argparse_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "vhess.cli", "bogus"], capture_output=True)
    assert proc.returncode == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vhess.cli", "verify", "euler-pencil"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "PASS"
