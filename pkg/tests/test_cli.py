import json
import subprocess
import sys

from cafcc.cli import main


def run(*argv):
    return main(list(argv))


def test_eval_prints_canonical_zero(capsys):
    assert run("eval", "--eq", "D1", "--corners", "1,2,3,4") == 0
    assert capsys.readouterr().out.strip() == "0"


def test_eval_golden(capsys):
    code = run("eval", "--eq", "A3:d=1", "--x", "1", "--corners", "2,3,4,5",
               "--alpha", "1,2", "--beta", "3,5")
    assert code == 0
    assert capsys.readouterr().out.strip() == "491/150"


def test_solve(capsys):
    assert run("solve", "--eq", "D1", "--slot", "d", "--corners", "1,2,3") == 0
    assert capsys.readouterr().out.strip() == "4"


def test_usage_errors():
    assert run("eval", "--eq", "A9", "--corners", "1,2,3,4") == 2
    assert run("eval", "--eq", "D1", "--corners", "1,2") == 2
    assert run("suite", "--name", "nonsense") == 2
    assert run("lax", "--prop", "P9.9") == 2
    # domain violation counts as bad input
    assert run("eval", "--eq", "B3:1,0,0", "--x", "0",
               "--corners", "1,2,3,4") == 2


def test_cafcc_verb(capsys):
    assert run("cafcc", "--config", "A3:d=0", "--trials", "5", "--seed", "1") == 0
    out = capsys.readouterr().out
    assert "pass" in out and "seed=1" in out


def test_lax_verb(capsys):
    code = run("lax", "--prop", "P4.2", "--variant", "1", "--branch", "plus",
               "--trials", "4", "--seed", "3")
    assert code == 0
    out = capsys.readouterr().out
    assert "lax_compat: pass" in out
    assert "proof_oracle: pass" in out


def test_crosscheck_verb(capsys):
    code = run("crosscheck", "--what", "builder-vs-catalogue",
               "--family", "B3", "--deltas", "1/2,0,1/2", "--trials", "4")
    assert code == 2  # B3 has no catalogued block of its own; scope is empty

    code = run("crosscheck", "--what", "builder-vs-catalogue",
               "--family", "C3", "--deltas", "1/2,0,1/2", "--trials", "4")
    assert code == 0
    assert "builder_vs_catalogue: pass" in capsys.readouterr().out


def test_suite_json_byte_stable(tmp_path, capsys):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    for p in (p1, p2):
        assert run("suite", "--name", "leg_unit", "--seed", "5",
                   "--trials", "3", "--json", str(p)) == 0
    capsys.readouterr()
    assert p1.read_bytes() == p2.read_bytes()
    payload = json.loads(p1.read_text())
    assert payload["schema"] == "1"
    assert payload["seed"] == 5
    assert payload["pass"] is True
    assert "wall_time" not in payload["reports"][0]


def test_inject_fault_exits_nonzero(tmp_path, capsys):
    out = tmp_path / "fail.json"
    code = run("suite", "--name", "cafcc", "--trials", "2", "--seed", "3",
               "--inject-fault", "14", "--json", str(out))
    assert code == 1
    capsys.readouterr()
    payload = json.loads(out.read_text())
    assert payload["pass"] is False
    assert payload["reports"][0]["failures"]


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("CAFCC_SEED", "17")
    assert run("cafcc", "--config", "A2:0,0", "--trials", "2") == 0
    assert "seed=17" in capsys.readouterr().out


def test_console_script_entrypoint():
    proc = subprocess.run([sys.executable, "-m", "cafcc.cli", "list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "compatibility cases" in proc.stdout
