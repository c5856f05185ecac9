import csv
import io
import json

import pytest

from hsl.cli import CheckRequest, RangeError, main, parse_range, report_all, run


def run_cli(capsys, *args):
    code = main(list(args))
    return code, capsys.readouterr().out


def test_parse_range():
    assert parse_range("5") == [5]
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("4..2") == []


def test_check_json_is_byte_identical(capsys):
    args = ("check", "symmetries", "--m", "5", "--k", "1", "--l", "1..2", "--seed", "3")
    c1, out1 = run_cli(capsys, *args)
    c2, out2 = run_cli(capsys, *args)
    assert c1 == c2 == 0
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["suite"] == "symmetries" and "runtime_ms" not in rep
    assert len(rep["checks"]) == 8
    assert {c["status"] for c in rep["checks"]} == {"pass"}
    assert all(set(c) >= {"name", "paper_ref", "status"} for c in rep["checks"])


def test_timing_is_opt_in(capsys):
    _, out = run_cli(capsys, "check", "degeneration", "--m", "5", "--timing")
    assert "runtime_ms" in json.loads(out)


def test_m4_ellipticity_is_singular_not_failure(capsys):
    code, out = run_cli(capsys, "check", "ellipticity", "--m", "4", "--k", "1")
    statuses = [c["status"] for c in json.loads(out)["checks"]]
    assert code == 0 and "singular-as-expected" in statuses


def test_failure_sets_exit_code(capsys):
    code, out = run_cli(capsys, "check", "decomposition", "--m", "5", "--k", "1", "--l", "1")
    assert code == 1
    assert any(c["status"] == "fail" for c in json.loads(out)["checks"])


def test_out_of_range(capsys, monkeypatch):
    monkeypatch.delenv("HSL_MAX_DIM", raising=False)
    assert main(["check", "kernel", "--m", "9"]) == 3
    monkeypatch.setenv("HSL_MAX_DIM", "5")
    assert main(["check", "kernel", "--m", "6", "--allow-large"]) == 3
    with pytest.raises(RangeError):
        run(CheckRequest("kernel", [5], [4], [1]))


def test_unknown_suite(capsys):
    assert main(["check", "nope"]) == 2


def test_skipped_outside_suite_range(capsys):
    code, out = run_cli(capsys, "check", "rs", "--m", "5", "--k", "1", "--l", "1")
    assert code == 0 and json.loads(out)["checks"][0]["status"] == "skipped"


def test_csv_and_text_formats(capsys):
    _, out = run_cli(capsys, "check", "kernel", "--m", "5", "--k", "0..1", "--l", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["suite", "m", "k", "l", "check", "status", "witness"]
    assert len(rows) == 5
    _, out = run_cli(capsys, "check", "kernel", "--m", "5", "--k", "1", "--l", "2", "--format", "text")
    assert out.startswith("[pass] kernel m=5 k=1 l=2")


def test_dump_basis(capsys):
    code, out = run_cli(capsys, "dump", "basis", "--space", "Hkl", "--m", "5", "--k", "1", "--l", "1")
    assert code == 0 and len(out.strip().splitlines()) == 10


def test_dump_operator_and_identity(capsys):
    _, out = run_cli(capsys, "dump", "operator", "--name", "D", "--m", "5", "--k", "1")
    assert out.strip()
    _, out = run_cli(capsys, "dump", "identity", "--name", "a2k_k1")
    assert json.loads(out)["status"] == "pass"


def test_list(capsys):
    _, out = run_cli(capsys, "list")
    for word in ("suites:", "identities:", "operators:", "spaces:", "decomposition", "Hkl"):
        assert word in out


def test_report_all_empty_grid():
    code, rep = report_all(4, 1, -1)
    assert code == 0 and rep["checks"] == []
    assert rep["summary"] == {"pass": 0, "fail": 0, "singular-as-expected": 0, "skipped": 0}


def test_report_all_truly_empty(capsys):
    code, out = run_cli(capsys, "report-all", "--mmax", "3", "--kmax", "-1", "--lmax", "-1")
    rep = json.loads(out)
    assert code == 0 and rep["checks"] == []


def test_report_all_k0_and_order(capsys):
    code, rep = report_all(5, 0, 1)
    names = [c["suite"] for c in rep["checks"]]
    assert names == sorted(names)
    assert all(c["params"].get("k", 0) == 0 for c in rep["checks"])
    # the symbolic suite still reports the printed sl(2) relation as failing
    assert code == 1


def test_tables(tmp_path, capsys):
    code, out = run_cli(capsys, "tables", "--out", str(tmp_path), "--mmax", "5", "--kmax", "1", "--lmax", "2")
    assert code == 0
    with open(tmp_path / "kernel_dimensions.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert all(r["nullity"] == r["formula"] for r in rows)
    assert {"space_dimensions.csv", "decomposition_blocks.csv", "ellipticity_e1.csv", "constants.csv",
            "reproducing_ratios.csv"} <= {p.name for p in tmp_path.iterdir()}


def test_golden_tables_are_reproduced(tmp_path):
    """tables/ in the repository holds the default grid; a fresh run must match byte for byte."""
    from pathlib import Path
    from hsl.cli import write_tables
    golden = Path(__file__).resolve().parent.parent / "tables"
    if not golden.is_dir():
        pytest.skip("golden tables not generated")
    for path in write_tables(tmp_path):
        assert path.read_text() == (golden / path.name).read_text(), path.name
