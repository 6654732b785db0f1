import json
import subprocess
import sys

import pytest

from crosm.cli import main


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_verify_cpn_ai(capsys):
    code, out = run(["verify", "--space", "cpn", "--n", "2", "--type", "AI", "--kappa", "1",
                     "--qeps", "1", "--qhalf", "1", "--alpha", "0"], capsys)
    assert code == 0
    doc = json.loads(out.out)
    assert doc["schema"] == 1
    assert doc["result"] == "pass"
    assert doc["classification"] == ["contact", "kcontact", "sasakian"]


def test_einstein_sphere_n4(capsys):
    code, out = run(["einstein", "--space", "sphere", "--n", "4", "--a0", "1"], capsys)
    assert code == 0
    doc = json.loads(out.out)
    assert doc["a_eps"] == doc["b_eps"] == {"num": 2, "den": 3}
    assert doc["lambda"] == {"num": 27, "den": 8}


def test_failed_requirement_exits_2(capsys):
    code, out = run(["verify", "--space", "sphere", "--n", "3", "--a0", "1", "--aeps", "1",
                     "--beps", "1", "--xi", "X=1", "--format", "text"], capsys)
    assert code == 2
    assert "contact: fail" in out.out


def test_require_flag(capsys):
    argv = ["verify", "--space", "sphere", "--n", "3", "--type", "gc", "--kappa", "1", "--qeps", "2"]
    assert run(argv, capsys)[0] == 0
    assert run(argv + ["--require", "sasakian"], capsys)[0] == 2


@pytest.mark.parametrize("argv", [
    ["verify", "--space", "sphere", "--n", "3", "--bogus", "1"],
    ["verify", "--space", "torus", "--n", "3"],
    ["verify", "--space", "sphere", "--n", "3", "--a0", "-1", "--aeps", "1", "--beps", "1", "--xi", "X=1"],
    ["verify", "--space", "cpn", "--n", "2", "--type", "C", "--kappa", "1/100", "--qeps", "5",
     "--alpha", "3", "--theta", "3/5,4/5", "--phi", "4/5,3/5"],
    ["verify", "--space", "sphere", "--n", "3", "--type", "gc", "--mode", "float", "--tol", "-1"],
])
def test_input_errors_exit_1(argv, capsys):
    code, out = run(argv, capsys)
    assert code == 1
    assert out.err


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('[space]\nfamily = "sphere"\nn = 3\n\n[family]\ntype = "gc"\nkappa = "1"\n'
                   'q_eps = "2"\n\n[run]\nformat = "json"\n')
    code, out = run(["verify", "--config", str(cfg)], capsys)
    assert code == 0
    assert "sasakian" not in json.loads(out.out)["classification"]
    code, out = run(["verify", "--config", str(cfg), "--qeps", "1"], capsys)
    assert "sasakian" in json.loads(out.out)["classification"]


def test_config_unknown_key_is_named(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text('[space]\nfamily = "sphere"\nn = 3\n\n[family]\nkapa = "1"\n')
    code, out = run(["verify", "--config", str(cfg)], capsys)
    assert code == 1
    assert "family.kapa" in out.err


def test_catalog_csv(capsys):
    code, out = run(["catalog", "--space", "cpn", "--n", "1", "--format", "csv"], capsys)
    assert code == 0
    lines = out.out.strip().splitlines()
    assert lines[0].startswith("type,xi,a0,a_eps,b_eps,a_half,b_half,kcontact")
    assert len(lines) > 20


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "r.json"
    code, out = run(["cone", "--space", "sphere", "--n", "2", "--type", "sasaki", "--r", "1/2",
                     "--out", str(dest)], capsys)
    assert code == 0
    assert json.loads(dest.read_text())["result"] == "pass"


def test_float_mode_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("CROSM_MODE", "float")
    code, out = run(["verify", "--space", "sphere", "--n", "3", "--type", "gc", "--kappa", "1/3"], capsys)
    assert code == 0
    assert json.loads(out.out)["mode"] == "float"


def test_full_suite_cp1_is_deterministic():
    cmd = [sys.executable, "-m", "crosm", "full-suite", "--space", "cpn", "--n", "1"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["result"] == "pass"
