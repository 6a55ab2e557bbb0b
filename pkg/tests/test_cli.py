import json

import pytest

from muller2d.cli import COLUMNS, main, parse_range, read_csv
from muller2d.core import format_complex, parse_complex


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_solve_s1(capsys):
    code, out = _run(capsys, "solve", "--system", "S1", "--method", "m1", "--start", "1.689,-0.637", "--p", "3")
    assert code == 0
    (row,) = read_csv(out)
    assert list(row)[: len(COLUMNS)] == list(COLUMNS)
    assert row["matched_root"] == "S1-root-1"
    assert abs(parse_complex(row["x_final"]) - 1.1890465736) < 1e-9
    assert abs(parse_complex(row["y_final"]) + 0.1379439181) < 1e-9


def test_solve_newton_negative_start(capsys):
    code, out = _run(capsys, "solve", "--system", "S2", "--method", "newton", "--start", "-0.5,3")
    assert code == 0
    (row,) = read_csv(out)
    assert row["matched_root"] == "S2-root-1"
    assert row["status"] == "StepBelowTolerance"


def test_solve_cap_fails(capsys):
    code, out = _run(capsys, "solve", "--system", "S1", "--method", "m1", "--start", "0,0", "--max-outer", "1")
    assert code != 0
    assert read_csv(out)[0]["status"] == "OuterCapReached"


def test_malformed_literal_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--system", "S1", "--start", "1+,2"])
    assert exc.value.code == 2


def test_json_output(capsys, tmp_path):
    out = tmp_path / "r.json"
    code = main(["solve", "--system", "S3", "--format", "json", "--out", str(out), "--start", "0.621,-0.228",
                 "--swap", "--p", "4"])
    assert code == 0
    rows = json.loads(out.read_text())
    assert isinstance(rows, list) and set(COLUMNS) <= set(rows[0])
    assert rows[0]["matched_root"] == "S3-root-1"


def test_bench_appendix_csv_roundtrip_and_replay(capsys):
    code, first = _run(capsys, "bench", "--suite", "appendix")
    assert code == 0
    rows = read_csv(first)
    assert len(rows) == 64
    assert {r["system"] for r in rows} == {"S1", "S2", "S3", "S4", "S6", "S7"}
    assert all(r["matched_root"] == r["expected_root"] for r in rows)
    # parsing and re-printing every numeric field reproduces it exactly
    for r in rows:
        for key in ("x_final", "y_final", "x0", "y0"):
            assert format_complex(parse_complex(r[key]), 12) == r[key]
        for key in ("f1_abs", "f2_abs"):
            assert f"{float(r[key]):.12g}" == r[key]
    _, second = _run(capsys, "bench", "--suite", "appendix")

    def strip(text):
        return [{k: v for k, v in r.items() if k != "wall_time_ms"} for r in read_csv(text)]

    assert strip(first) == strip(second)


def test_bench_repeat_reports_mean_time(capsys):
    code, out = _run(capsys, "bench", "--suite", "appendix", "--repeat", "3", "--method", "m1")
    rows = read_csv(out)
    assert len(rows) == 16 and all(float(r["wall_time_ms"]) > 0 for r in rows)


def test_sweep_degenerate_range_equals_solve(capsys):
    _, sweep = _run(capsys, "sweep", "--system", "S2", "--method", "m2", "--start", "3.046,3.484",
                    "--param", "p", "--values", "5:5")
    _, solve = _run(capsys, "solve", "--system", "S2", "--method", "m2", "--start", "3.046,3.484", "--p", "5")
    (a,), (b,) = read_csv(sweep), read_csv(solve)
    for key in ("x_final", "y_final", "outer_iters", "inner_iters", "status", "matched_root"):
        assert a[key] == b[key]


def test_qnm_command(capsys):
    code, out = _run(capsys, "qnm", "--mode", "0")
    assert code == 0
    (row,) = read_csv(out)
    assert float(row["delta_table"]) < 1e-6
    assert float(row["l_gap"]) < 1e-9


def test_list_systems(capsys):
    code, out = _run(capsys, "list-systems")
    assert code == 0
    assert "S4-r5" in out and "KERR" in out


@pytest.mark.parametrize("text, values", [
    ("3:17", list(range(3, 18))),
    ("5:5", [5]),
    ("-0.3:0.3:0.1", [-0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3]),
    ("0..3", [0, 1, 2, 3]),
    ("0,1,9", [0, 1, 9]),
])
def test_parse_range(text, values):
    assert parse_range(text) == values


def test_parse_range_rejects():
    with pytest.raises(ValueError):
        parse_range("5:3")
    with pytest.raises(ValueError):
        parse_range("1:2:0")
