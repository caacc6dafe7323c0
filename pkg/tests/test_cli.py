import json
import subprocess
import sys

import pytest

from covlie.cli import main
from covlie.report import REPORT_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_default_lists_suites(capsys):
    code, out, _ = run(capsys)
    assert code == 0
    assert len(out.strip().splitlines()) >= 15
    assert "cov.psiA" in out


def test_list_json(capsys):
    code, out, _ = run(capsys, "list", "--json")
    entries = json.loads(out)
    assert code == 0 and len(entries) >= 15
    assert all(e["description"] for e in entries)


def test_verify_jacobi_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "trig.jacobi", "--group", "Z:5", "--window-m", "2")
    assert code == 0 and out.strip().endswith("checks passed")


def test_verify_tau_cd_ranks(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--suite", "mat.tau-cd", "--l", "4", "--report", str(path))
    rep = json.loads(path.read_text())
    ranks = {c["name"]: c["params"]["rank"] for c in rep["checks"] if "rank" in c["params"]}
    assert code == 0 and ranks["rank{c_rm}"] == 10 and ranks["rank{d_rm}"] == 6


def test_report_validates(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    code, out, _ = run(capsys, "verify", "--suite", "mat.pi", "--suite", "mat.pq", "--json")
    assert code == 0
    jsonschema.validate(json.loads(out), REPORT_SCHEMA)


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "bogus"],
    ["verify", "--group", "Q:3"],
    ["verify", "--suite", "mat.pi", "--group", "Zfree"],
    ["verify", "--window-m", "0"],
    ["verify", "--suite", "mat.tau-cd", "--l", "0"],
])
def test_configuration_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_bad_env_workers(capsys, monkeypatch):
    monkeypatch.setenv("COVLIE_WORKERS", "many")
    code, _, _ = run(capsys, "verify", "--suite", "mat.pq")
    assert code == 2


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text('group = "Z:3"\nsuites = ["mat.pi"]\n')
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--json")
    assert code == 0 and json.loads(out)["checks"][0]["params"]["group"] == "Z:3"
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--group", "Z:4", "--json")
    assert code == 0 and json.loads(out)["checks"][0]["params"]["group"] == "Z:4"
    cfg.write_text('colour = "red"\n')
    assert run(capsys, "verify", "--config", str(cfg))[0] == 2


def test_failure_exit_code(capsys, monkeypatch):
    from covlie import suites
    from covlie.report import CheckRecord

    fake = suites.Suite("fake.fail", "always fails", lambda cfg: [CheckRecord("x", {}, "fail", {})])
    monkeypatch.setitem(suites.REGISTRY, "fake.fail", fake)
    code, out, _ = run(capsys, "verify", "--suite", "fake.fail")
    assert code == 1 and "FAIL" in out


def test_deterministic_across_workers(tmp_path):
    args = ["verify", "--suite", "mat.pi", "--suite", "trig.aut", "--suite", "mat.pq", "--group", "Z:4"]
    outs = []
    for w in ("1", "3", "3"):
        path = tmp_path / f"r{len(outs)}.json"
        assert main(args + ["--workers", w, "--report", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "covlie", "verify", "--suite", "bogus"],
                         capture_output=True, text=True)
    assert res.returncode == 2 and "unknown suite" in res.stderr
