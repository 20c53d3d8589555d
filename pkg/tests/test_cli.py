import csv
import io
import json
from importlib import resources

import pytest

from qpaths.cli import main

TABLE1_CSV = """\
path,f,g,h,j,gamma
"1-,1+","(0.25, 0)","(0.25, 0)","(0.25, 0)","(0.25, 0)","(0, 0)"
"1-,2+","(-0.25, 0)","(-0.25, 0)","(0.25, 0)","(0.25, 0)","(0, 0)"
"2-,1+","(-0.25, 0)","(0.25, 0)","(-0.25, 0)","(0.25, 0)","(0, 0)"
"2-,2+","(0, 0)","(0, 0)","(0, 0)","(0, 0)","(0, 0)"
gamma,"(0, 0)","(0, 0)","(0, 0)","(0, 0)","(0.5, 0)"
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def shipped_path() -> str:
    return str(resources.files("qpaths") / "data" / "hardy.scn")


def test_table1_csv_golden(capsys):
    code, out, err = run_cli(capsys, "table1", "--format", "csv")
    assert code == 0
    assert out == TABLE1_CSV
    assert err == ""


def test_table1_human_format(capsys):
    code, out, _ = run_cli(capsys, "table1")
    assert code == 0
    assert out.startswith("path amplitudes (hardy)\n")
    assert "(-0.25, 0)" in out


def test_table2_rows(capsys):
    code, out, _ = run_cli(capsys, "table2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "observable,final,probability,classes"
    assert len(lines) == 41  # 8 observables x 5 finals + header
    assert "N(1-|2+),f,0.0625,1:0.0625 0:0" in lines
    assert "N(1-|1+),f,0.3125,1:0.0625 0:0.25" in lines
    assert "N(2-|2+),j,0.5625,1:0 0:0.5625" in lines


def test_weak_json_schema(capsys):
    code, out, _ = run_cli(capsys, "weak", "--scenario", "hardy", "--final", "f",
                           "--obs", "N(1-|1+)", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    row = payload[0]["rows"][0]
    assert row["complex_value"] == {"re": -1.0, "im": 0.0}
    assert row["reported"] == -1.0
    assert payload[0]["columns"][-2:] == ["complex_value", "reported"]


def test_network_command(capsys):
    code, out, _ = run_cli(capsys, "network", "--scenario", "three-box",
                           "--final", "f", "--obs", "P2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "eigenvalue,paths,multiplicity,amplitude,probability,conditional"
    assert lines[1].startswith("1,box2,1,")
    assert lines[1].endswith(",1")


def test_scan_epsilon_matches_closed_form(capsys):
    code, out, _ = run_cli(capsys, "scan-epsilon", "--from", "1e-6", "--to", "1",
                           "--steps", "7", "--obs", "N(1+)", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert len(rows) == 7
    for eps_text, _, reported_text in rows:
        eps = float(eps_text)
        reported = float(reported_text)
        target = 1.0 - 1.0 / eps
        assert abs(reported - target) <= 1e-9 * max(1.0, abs(target))


def test_sweep_width_errors_decrease(capsys):
    code, out, _ = run_cli(capsys, "sweep-width", "--final", "f",
                           "--obs", "N(1-|1+)", "--format", "csv")
    assert code == 0
    rows = out.splitlines()[1:]
    errors = [float(row.split(",")[-1]) for row in rows]
    assert errors == sorted(errors, reverse=True)
    assert errors[-1] < 1e-3


def test_verify_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "check,status,max_deviation,tolerance"
    assert len(lines) == 40  # 39 checks + header
    assert all(",pass," in line for line in lines[1:])


def test_run_shipped_scenario(capsys):
    code, out, err = run_cli(capsys, "run", shipped_path(), "--format", "csv")
    assert code == 0
    assert "# path amplitudes (pair-interferometers)" in out
    assert '"1-,1+","(0.25, 0)","(0.25, 0)","(0.25, 0)","(0.25, 0)","(0, 0)"' in out
    assert "post-selected,0.0625,0.0625,0,false" in out
    assert "all-outcomes,0.25,0.25,0.5,true" in out
    assert err == ""


def test_run_reports_notes_on_stderr(tmp_path, capsys):
    target = tmp_path / "warn.scn"
    target.write_text("dimension = 2\nbasis = a b\nstate i = 2 0\nstate f = 1 0\n"
                      "state g = 1 1\nquery probabilities\n", encoding="utf-8")
    code, out, err = run_cli(capsys, "run", str(target), "--format", "csv")
    assert code == 0
    assert "renormalized" in err
    assert "not orthogonal" in err
    assert "final,amplitude,probability" in out


def test_exit_code_unknown_names(capsys):
    code, _, err = run_cli(capsys, "weak", "--scenario", "bogus",
                           "--final", "f", "--obs", "P1")
    assert code == 2
    assert "unknown scenario" in err
    code, _, err = run_cli(capsys, "weak", "--scenario", "hardy",
                           "--final", "f", "--obs", "P9")
    assert code == 2
    assert "unknown observable" in err


def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.scn"
    bad.write_text("dimension = 2\nbasis = a a\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "run", str(bad))
    assert code == 2
    assert "bad.scn: line 2, column 11" in err


def test_exit_code_missing_file(capsys):
    code, _, err = run_cli(capsys, "run", "/nonexistent/peculiar.scn")
    assert code == 2
    assert "peculiar.scn" in err


def test_exit_code_weak_value_undefined(tmp_path, capsys):
    target = tmp_path / "orth.scn"
    target.write_text("dimension = 2\nbasis = a b\nstate i = 1 0\nstate f = 0 1\n"
                      "observable A = 1 0\nquery weak final=f obs=A\n",
                      encoding="utf-8")
    code, _, err = run_cli(capsys, "run", str(target))
    assert code == 3
    assert "amplitude is zero" in err


def test_exit_code_meter_undefined(tmp_path, capsys):
    target = tmp_path / "meter.scn"
    target.write_text("dimension = 2\nbasis = a b\nstate i = 1 0\nstate f = 0 1\n"
                      "observable A = 1 0\nquery mean-reading final=f obs=A width=1\n",
                      encoding="utf-8")
    code, _, err = run_cli(capsys, "run", str(target))
    assert code == 4
    assert "probability zero" in err


def test_network_query_with_impossible_selection_shows_undefined(tmp_path, capsys):
    target = tmp_path / "net.scn"
    target.write_text("dimension = 2\nbasis = a b\nstate i = 1 0\nstate f = 0 1\n"
                      "observable A = 1 0\nquery network final=f obs=A\n",
                      encoding="utf-8")
    code, out, _ = run_cli(capsys, "run", str(target), "--format", "csv")
    assert code == 0
    assert "undefined" in out


def test_determinism(capsys):
    _, first, _ = run_cli(capsys, "table2", "--format", "csv")
    _, second, _ = run_cli(capsys, "table2", "--format", "csv")
    assert first == second


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2
