import json
from pathlib import Path

import pytest

from twistcrit.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main

CHI = Path(__file__).resolve().parents[1] / "chi"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_verify_passes(capsys):
    code, out = run(capsys, "verify", "--chi", str(CHI / "lambda_half.json"), "--cutoff", "2")
    assert code == EXIT_OK and "PASS" in out.out


def test_verify_degenerate_cutoff(capsys):
    assert run(capsys, "verify", "--cutoff", "0")[0] == EXIT_OK


def test_missing_file_is_input_error(capsys):
    code, out = run(capsys, "verify", "--chi", "missing.json")
    assert code == EXIT_INPUT and "missing.json" in out.err


def test_malformed_chi_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"chi": {"1/3": "1"}}')
    code, out = run(capsys, "irreducible", "--chi", str(bad))
    assert code == EXIT_INPUT and "1/3" in out.err


def test_bad_cutoff(capsys):
    assert run(capsys, "character", "--cutoff", "1/3")[0] == EXIT_INPUT


@pytest.mark.parametrize("name,irr", [("ell_one_singular", False), ("ell_one_regular", True),
                                      ("zero", False), ("positive_p", True)])
def test_irreducible_json(capsys, name, irr):
    code, out = run(capsys, "irreducible", "--chi", str(CHI / f"{name}.json"), "--json")
    rep = json.loads(out.out)
    assert code == EXIT_OK and rep["irreducible"] is irr and rep["agree"]


def test_pell(capsys):
    code, out = run(capsys, "pell", "--chi", str(CHI / "ell_one_regular.json"), "--json")
    rep = json.loads(out.out)
    assert code == EXIT_OK and rep["ell"] == "1" and rep["Psq"] == "4"


def test_pell_outside_family(capsys):
    assert run(capsys, "pell", "--chi", str(CHI / "lambda_third.json"))[0] == EXIT_INPUT


def test_character_table(capsys):
    code, out = run(capsys, "character", "--cutoff", "5/2", "--json")
    rows = json.loads(out.out)["rows"]
    assert code == EXIT_OK and [r["product"] for r in rows] == [1, 2, 3, 6, 9, 14]


def test_bases_t0(capsys):
    code, out = run(capsys, "bases", "--t", "0", "--cutoff", "2")
    assert code == EXIT_OK and "n_i != 1/2" in out.out


def test_vacuum(capsys):
    code, out = run(capsys, "vacuum", "--chi", str(CHI / "lambda_third.json"), "--cutoff", "2", "--json")
    rep = json.loads(out.out)
    assert code == EXIT_OK and all(r["omega"] == r["fermion"] for r in rep["rows"])


def test_vacuum_with_negative_t(capsys):
    assert run(capsys, "vacuum", "--chi", str(CHI / "half_odd.json"), "--cutoff", "1")[0] == EXIT_OK


def test_vacuum_rejects_positive_t(tmp_path, capsys):
    chi = tmp_path / "tpos.json"
    chi.write_text('{"chi": {"1/2": "1"}}')
    assert run(capsys, "vacuum", "--chi", str(chi), "--cutoff", "1")[0] == EXIT_INPUT


def test_report_is_deterministic(capsys):
    first = run(capsys, "report", "--seed", "7", "--json")[1].out
    second = run(capsys, "report", "--seed", "7", "--json")[1].out
    assert first == second and json.loads(first)["sweep_agree"]


def test_exit_code_constants():
    assert (EXIT_OK, EXIT_FAIL, EXIT_INPUT) == (0, 1, 2)
