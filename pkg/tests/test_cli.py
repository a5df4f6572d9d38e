import csv
import io
import subprocess
import sys
from pathlib import Path

import pytest

from setforge.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_check_stdin_tip(capsys, monkeypatch):
    code, out, _ = run(["check", "--kind=wb"], capsys, "tip\n", monkeypatch)
    assert code == 0 and out.strip() == "ok"


def test_check_wrong_size(capsys, monkeypatch):
    code, out, _ = run(["check", "--kind", "wb", "-"], capsys, "(bin 3 5 (bin 1 1 tip tip) tip)", monkeypatch)
    assert code == 1
    assert "wb.size at <root>: stored 3, computed 2" in out.splitlines()


def test_check_parse_error(capsys, monkeypatch):
    code, _, err = run(["check", "--kind", "pt"], capsys, "(tip 0 zz)", monkeypatch)
    assert code == 2
    assert "line 1, column 8" in err


def test_check_missing_file(capsys, tmp_path):
    code, _, err = run(["check", "--kind", "pt", str(tmp_path / "nope.txt")], capsys)
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("kind", ["wb", "pt"])
def test_fixture_corpus(kind, capsys):
    files = sorted((FIXTURES / kind).glob("*.txt"))
    valid = [f for f in files if f.name.startswith("valid")]
    corrupt = [f for f in files if f.name.startswith("corrupt")]
    assert len(valid) == 10 and len(corrupt) == 10
    for f in valid:
        code, out, _ = run(["check", "--kind", kind, str(f)], capsys)
        assert code == 0, f.name
    for f in corrupt:
        rule = f.stem.split("-", 2)[2]
        code, out, _ = run(["check", "--kind", kind, str(f)], capsys)
        assert code == 1, f.name
        assert any(line.startswith(rule + " at ") for line in out.splitlines()), (f.name, out)


def test_quiet_check_prints_nothing_on_success(capsys):
    code, out, _ = run(["--quiet", "check", "--kind", "wb", str(FIXTURES / "wb" / "valid-03.txt")], capsys)
    assert code == 0 and out == ""
    code, out, _ = run(["check", "--kind", "wb", "--quiet", str(FIXTURES / "wb" / "valid-03.txt")], capsys)
    assert code == 0 and out == ""


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["check", "--kind", "xx"]) == 2
    assert main(["fuzz", "--cases", "-3"]) == 2
    assert main(["--seed", "nothex", "fuzz"]) == 2
    assert main(["exhaustive", "--bits", "9"]) == 2
    assert main(["bench", "--op", "nope"]) == 2
    assert main(["bench", "--op", "pt.member", "--reps", "0"]) == 2
    assert main(["props", "--filter", "("]) == 2
    assert main(["props", "--filter", "no-such-property"]) == 2
    capsys.readouterr()


def test_fuzz_echoes_seed(capsys):
    code, out, _ = run(["--seed", "abc", "fuzz", "--cases", "5", "--ops", "30"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "seed=0x0000000000000abc"
    assert "wb" in out and "pt" in out


def test_fuzz_without_seed_still_echoes_one(capsys):
    code, out, _ = run(["fuzz", "--kind", "pt", "--cases", "2", "--ops", "10"], capsys)
    assert code == 0 and out.startswith("seed=0x")


def test_exhaustive_small(capsys):
    code, out, _ = run(["exhaustive", "--bits", "6"], capsys)
    assert code == 0 and "pass" in out


def test_props_filter_runs_only_matching(capsys):
    code, out, _ = run(["--seed", "1", "props", "--filter", "union", "--cases", "10"], capsys)
    assert code == 0
    rows = [line.split()[0] for line in out.splitlines() if line.startswith(("wb.", "pt."))]
    assert rows and all("union" in r for r in rows)


def test_props_with_fault_fails_and_prints_script(capsys):
    code, out, _ = run(
        ["--seed", "5", "props", "--filter", "^pt.union-assoc$", "--cases", "200", "--fault", "pt-union-nomatch"],
        capsys,
    )
    assert code == 1
    assert "FAIL pt.union-assoc" in out
    assert "minimal script" in out and "seed=0x" in out


def test_props_list(capsys):
    code, out, _ = run(["props", "--list", "--filter", "^wb.ord"], capsys)
    assert code == 0 and "wb.ord-trans" in out and "pt." not in out


def test_bench_csv(capsys):
    code, out, err = run(["bench", "--op", "wb.union.singleton", "--size", "500", "--reps", "3"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["op"] for r in rows] == ["wb.union.singleton.fast", "wb.union.singleton.generic"]
    assert rows[0]["checksum"] == rows[1]["checksum"]
    assert "ratio" in err


def test_bench_empty_size(capsys):
    code, out, _ = run(["bench", "--op", "pt.member", "--size", "0", "--reps", "2"], capsys)
    assert code == 0
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert row["size"] == "0"


def test_console_script_and_module_entry_points(tmp_path):
    dump = tmp_path / "t.txt"
    dump.write_text("(bin 1 4 tip tip)")
    res = subprocess.run([sys.executable, "-m", "setforge", "check", "--kind", "wb", str(dump)], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "ok"
    res = subprocess.run(["setforge", "check", "--kind", "pt", "-"], input="(tip 1 1)", capture_output=True, text=True)
    assert res.returncode == 1 and "pt.tip-align at <root>" in res.stdout
