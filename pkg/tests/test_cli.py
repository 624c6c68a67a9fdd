import csv
import io
import json
import pathlib

import numpy as np
import pytest

from nctk.cli import main
from nctk.models import two_point_triple
from nctk.serialization import save_triple

EXAMPLES = pathlib.Path(__file__).resolve().parent.parent / "examples"
TWO_POINT = str(EXAMPLES / "two_point.json")
CONJ_J = str(EXAMPLES / "m2_on_c2_with_conj_J.json")
SM_MASSES = str(EXAMPLES / "sm_masses.json")


def read_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


# ------------------------------------------------------------------- check


def test_check_passing_document(capsys):
    assert main(["check", TWO_POINT]) == 0
    out = capsys.readouterr().out
    assert "first-order" in out
    assert "FAIL" not in out


def test_check_failing_document(capsys):
    assert main(["check", CONJ_J]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_check_json_mode(capsys):
    assert main(["check", "--json", CONJ_J]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["all_passed"] is False
    failed = {c["name"] for c in doc["checks"] if not c["passed"]}
    assert failed == {"zeroth-order", "first-order"}


def test_check_missing_file(capsys):
    assert main(["check", "/no/such/file.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_check_invalid_json_reports_position(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{\n  ]")
    assert main(["check", str(p)]) == 2
    err = capsys.readouterr().err
    assert f"{p}:2:" in err


# ---------------------------------------------------------------- distance


def test_distance_two_point_unit_mass(capsys):
    assert main(["distance", TWO_POINT, "--state", "0:1", "--state", "1:1"]) == 0
    out = capsys.readouterr().out
    value = float(out.splitlines()[0].split()[-1])
    assert value == pytest.approx(1.0, rel=1e-9)
    assert "converged           true" in out


def test_distance_identical_states(capsys):
    assert main(["distance", TWO_POINT, "--state", "0:1", "--state", "0:1"]) == 0
    assert float(capsys.readouterr().out.splitlines()[0].split()[-1]) == 0.0


def test_distance_infinite_pair(tmp_path, capsys):
    t = two_point_triple([1.0, 1.0], representation="vector")
    p = tmp_path / "misaligned.json"
    save_triple(t, str(p))
    assert main(["distance", str(p), "--state", "0:1,0", "--state", "1:1"]) == 0
    assert capsys.readouterr().out.splitlines()[0].split()[-1] == "inf"


def test_distance_state_count_and_parse_errors(capsys):
    assert main(["distance", TWO_POINT, "--state", "0:1"]) == 2
    assert main(["distance", TWO_POINT, "--state", "0:1", "--state", "oops"]) == 2
    assert main(["distance", TWO_POINT, "--state", "0:1", "--state", "7:1"]) == 2
    err = capsys.readouterr().err
    assert err.count("error:") == 3


def test_distance_json_and_csv(tmp_path, capsys):
    out_csv = tmp_path / "runs.csv"
    args = ["distance", TWO_POINT, "--state", "0:1", "--state", "1:1",
            "--json", "--csv", str(out_csv)]
    assert main(args) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["value"] == pytest.approx(1.0, rel=1e-9)
    assert doc["infinite"] is False

    assert main(args) == 0
    header, rows = read_csv(out_csv.read_text())
    assert header[:4] == ["triple", "state1", "state2", "value"]
    assert len(rows) == 2  # appended, single header
    assert float(rows[1][3]) == pytest.approx(1.0, rel=1e-9)


# ---------------------------------------------------------------- m2-sweep


def test_m2_sweep_stdout_csv(capsys):
    assert main(["m2-sweep", "0", "1", "--grid", "2"]) == 0
    captured = capsys.readouterr()
    header, rows = read_csv(captured.out)
    assert header == ["theta1", "theta2", "closed_form", "solver", "abs_err"]
    assert len(rows) == 4
    by_pair = {(r[0], r[1]): r for r in rows}
    same = by_pair[(rows[0][0], rows[0][0])]
    assert float(same[2]) == 0.0
    antipodal = [r for r in rows if r[0] != r[1]][0]
    assert float(antipodal[2]) == pytest.approx(2.0)
    assert float(antipodal[4]) <= 1e-6
    assert "max abs err" in captured.err


def test_m2_sweep_csv_file_and_json(tmp_path, capsys):
    out_csv = tmp_path / "sweep.csv"
    assert main(["m2-sweep", "0", "1", "--grid", "2",
                 "--csv", str(out_csv), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rows"] == 4
    assert doc["max_abs_err"] <= 1e-6
    header, rows = read_csv(out_csv.read_text())
    assert len(rows) == 4


def test_m2_sweep_rejects_equal_eigenvalues(capsys):
    assert main(["m2-sweep", "1", "1"]) == 2
    assert main(["m2-sweep", "0", "1", "--grid", "0"]) == 2
    capsys.readouterr()


def test_m2_sweep_thread_cap(monkeypatch, capsys):
    monkeypatch.setenv("NCTK_THREADS", "1")
    assert main(["m2-sweep", "0", "1", "--grid", "2"]) == 0
    capsys.readouterr()


# ---------------------------------------------------------------------- sm


def test_sm_vacuum_row(capsys):
    assert main(["sm", "--higgs", "0,0", "--masses", SM_MASSES]) == 0
    captured = capsys.readouterr()
    header, rows = read_csv(captured.out)
    assert header == ["h1", "h2", "g_tt", "predicted", "solver", "rel_err"]
    assert len(rows) == 1
    assert float(rows[0][3]) == pytest.approx(1.0 / 172.76, rel=1e-9)
    assert float(rows[0][5]) <= 5e-3
    assert "max relative deviation" in captured.err


def test_sm_higgs_flag_with_leading_dash(capsys):
    # argparse needs the '=' form for a value starting with '-'
    assert main(["sm", "--higgs=-1,0"]) == 0
    header, rows = read_csv(capsys.readouterr().out)
    assert rows[0][0] == "-1"
    assert rows[0][3] == "inf" and rows[0][4] == "inf"
    assert float(rows[0][5]) == 0.0


def test_sm_rejects_bad_inputs(tmp_path, capsys):
    assert main(["sm", "--higgs", "1"]) == 2
    assert main(["sm", "--masses", "/no/such/masses.json"]) == 2
    bad = tmp_path / "bad_masses.json"
    bad.write_text(json.dumps({"up_masses": [1.0]}))
    assert main(["sm", "--masses", str(bad)]) == 2  # length mismatch vs defaults
    capsys.readouterr()


# --------------------------------------------------------------- neutrinos


def test_neutrinos_admissible_pair(capsys):
    assert main(["neutrinos", "--alpha", "2"]) == 0
    out = capsys.readouterr().out
    assert "admissible            true" in out
    assert "determinant           72" in out


def test_neutrinos_majorana_rejected(capsys):
    assert main(["neutrinos", "--epsilons", "1"]) == 1
    out = capsys.readouterr().out
    assert "grading obstructed    true" in out
    assert "admissible            false" in out


def test_neutrinos_massless_escape(capsys):
    assert main(["neutrinos", "--epsilons", "2,2,2", "--masses", "1,1,0"]) == 0
    out = capsys.readouterr().out
    assert "massless entry" in out
    assert "determinant           0" in out
    assert "determinant (massive) 72" in out


def test_neutrinos_json(capsys):
    assert main(["neutrinos", "--epsilons", "2,2,2", "--json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["determinant"] == 0
    assert doc["poincare_holds"] is False
    assert doc["admissible"] is False
    assert doc["intersection"][0][0] == 12


def test_neutrinos_input_errors(capsys):
    assert main(["neutrinos", "--alpha", "2", "--epsilons", "2"]) == 2
    assert main(["neutrinos", "--epsilons", "x"]) == 2
    assert main(["neutrinos", "--epsilons", "3"]) == 2
    assert main(["neutrinos", "--epsilons", "2", "--masses", "1,2"]) == 2
    capsys.readouterr()


def test_unknown_subcommand_exits_via_argparse():
    with pytest.raises(SystemExit):
        main(["no-such-command"])
