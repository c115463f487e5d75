import json
import subprocess
import sys
from pathlib import Path

import pytest

from psipos import fixtures
from psipos.symfun import power_to_schur, psum
from psipos.cli import EXIT_CAPACITY, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

TABLES = Path(__file__).parent / "fixtures" / "tables"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--n", "4")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == 'lambda,"[1,1,1,1]","[2,1,1]","[2,2]","[3,1]",[4]'
    assert len(lines) == 6 and all(len(line.split('",')) >= 1 for line in lines)


def test_table_json_n2(capsys):
    code, out, _ = run(capsys, "table", "--n", "2", "--emit", "json")
    rows = {r["lambda"]: r["values"] for r in json.loads(out)["rows"]}
    assert rows == {"[1,1]": [1, -1], "[2]": [1, 1]}


def test_table_sign_row(capsys):
    code, out, _ = run(capsys, "table", "--n", "8", "--row", "[1^8]", "--emit", "json")
    obj = json.loads(out)
    assert obj["values"] == [1, -1, 1, -1, 1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1, 1, -1, 1, -1, 1, 1, -1]
    assert obj["partial_sums"][-1] == 2


def test_psi_matches_fixture_line(capsys):
    blocks = fixtures.parse_psi_blocks((TABLES / "psi_small.txt").read_text())
    code, out, _ = run(capsys, "psi", "--mu", "[2,1,1]", "--n", "4")
    assert code == EXIT_OK and out == blocks[(2, 1, 1)].to_text()
    six = fixtures.parse_psi_blocks((TABLES / "psi_six.txt").read_text())
    code, out, _ = run(capsys, "psi", "--mu", "[3,2,1]", "--n", "6")
    assert out == six[(3, 2, 1)].to_text()


def test_psi_hooks(capsys):
    code, out, _ = run(capsys, "psi", "--hk", "5")
    assert code == EXIT_OK and out.splitlines()[0] == "5\t[5]"


def test_psi_epsilon_and_subset(capsys, tmp_path):
    code, out, _ = run(capsys, "psi", "--epsilon", "[3,1,1]", "--emit", "json")
    assert code == EXIT_OK and json.loads(out)["n"] == 5
    f = tmp_path / "subset.txt"
    f.write_text("# comment\n[1^4]\n[2,2]\n")
    code, out, _ = run(capsys, "psi", "--subset", str(f))
    assert code == EXIT_OK and out == power_to_schur(psum([(1, 1, 1, 1), (2, 2)])).to_text()


@pytest.mark.parametrize(
    "argv",
    [
        ["psi", "--mu", "[2,1"],
        ["psi", "--epsilon", "[2,1]"],
        ["psi", "--mu", "[2,1,1]", "--n", "5"],
        ["table", "--n", "4", "--row", "[2,1]"],
        ["verify", "--claim", "bogus"],
        ["verify", "--claim", "upper-intervals", "--max-n", "3"],
        ["census", "--n", "6", "--rows", "[3,2]"],
        ["table", "--n", "4", "--unknown-flag"],
        ["fixtures"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("PSIPOS_THREADS", "zero")
    assert run(capsys, "table", "--n", "3")[0] == EXIT_USAGE


def test_capacity(capsys):
    code, _, err = run(capsys, "table", "--n", "40")
    assert code == EXIT_CAPACITY and "capacity" in err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "interval-positivity", "--max-n", "12", "--no-timings")
    verdicts = json.loads(out)
    assert code == EXIT_OK and len(verdicts) == 12
    assert {v["status"] for v in verdicts} == {"pass"}


def test_verify_theorem_failure_exits_one(capsys):
    # the dominance control is a theorem-style claim; at n = 12 it fails
    code, out, _ = run(capsys, "verify", "--claim", "dominance-ideals", "--max-n", "12", "--emit", "text")
    assert code == EXIT_FAIL and "FAILED" in out


def test_verify_outputs_are_deterministic(capsys):
    args = ["verify", "--claim", "odd-intervals", "--max-n", "12", "--no-timings"]
    _, a, _ = run(capsys, *args, "--threads", "1")
    _, b, _ = run(capsys, *args, "--threads", "2")
    assert a == b


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--n", "7", "--emit", "json", "--no-timings")
    obj = json.loads(out)
    assert code == EXIT_OK and obj["f"] == 3674 and "timings" not in obj
    _, a, _ = run(capsys, "census", "--n", "7", "--emit", "csv", "--threads", "1")
    _, b, _ = run(capsys, "census", "--n", "7", "--emit", "csv", "--threads", "2")
    assert a == b


def test_census_checkpoint_and_g_only(capsys, tmp_path):
    code, out, _ = run(capsys, "census", "--n", "8", "--strategy", "mitm", "--checkpoint", str(tmp_path), "--no-timings")
    assert code == EXIT_OK and "f = 488259" in out
    code, out, _ = run(capsys, "census", "--n", "6", "--max-n", "8", "--g-only", "--emit", "csv")
    assert out == "n,g\n6,3\n7,2\n8,2\n"


def test_fixtures_check_and_write(capsys, tmp_path):
    code, out, _ = run(capsys, "fixtures", "--check", str(TABLES))
    assert code == EXIT_OK and "no differences" in out
    code, _, _ = run(capsys, "fixtures", "--fixtures-dir", str(tmp_path))
    assert code == EXIT_OK
    (tmp_path / "hooks.txt").write_text("1\t1\n")
    code, out, _ = run(capsys, "fixtures", "--check", str(tmp_path))
    assert code == EXIT_FAIL and "hooks.txt" in out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "psipos.cli", "table", "--n", "3", "--emit", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["classes"] == ["[1,1,1]", "[2,1]", "[3]"]
