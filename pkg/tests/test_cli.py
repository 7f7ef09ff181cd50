"""CLI contract: output formats, exit codes, determinism."""

from __future__ import annotations

import json

from mafia_odds.cli import CSV_HEADER, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_exact_classic(capsys):
    code, out, _ = run(capsys, "exact", "2", "1")
    assert code == 0
    assert out == "2/3 ≈ 0.666667\n"


def test_exact_tie(capsys):
    code, out, _ = run(capsys, "exact", "1", "1")
    assert code == 0
    assert out == "1/2 ≈ 0.5\n"


def test_exact_generalized(capsys):
    code, out, _ = run(capsys, "exact", "3", "1", "--rounds", "3", "1")
    assert code == 0
    assert out == "3/4 ≈ 0.75\n"


def test_exact_float_backend(capsys):
    code, out, _ = run(capsys, "exact", "2", "1", "--backend", "float")
    assert code == 0
    assert out.strip() == "0.666666666667"


def test_exact_invalid_state(capsys):
    code, _, err = run(capsys, "exact", "0", "0")
    assert code == 2
    assert err.strip().startswith("error:")


def test_usage_error_exit_code(capsys):
    assert run(capsys, "verify", "--suite", "theoremX")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_verify_lemmas_clean(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--grid-samples", "2000",
                       "--n-max", "2000", "--s-max", "500")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"suite", "params", "violations", "extremal", "runtime_ms"}
    assert payload["suite"] == "lemmas"
    assert payload["violations"] == []
    assert "concave[5, 2]" in payload["extremal"]


def test_verify_theorem2_finds_refutation(capsys):
    """Honest behavior: the desk-scale sweep finds genuine violations (exit 1)."""
    code, out, _ = run(capsys, "verify", "--suite", "theorem2", "--k", "10", "--R", "100")
    assert code == 1
    payload = json.loads(out)
    assert len(payload["violations"]) == 156
    first = payload["violations"][0]
    assert (first["n"], first["m"], first["w_exact"]) == (2, 1, "2/3")


def test_verify_theorem2_vacuous_eps_clean(capsys):
    """eps = 1 makes the upper side vacuous, so the (true) lower side rules."""
    code, out, _ = run(capsys, "verify", "--suite", "theorem2", "--k", "10", "--R", "100",
                       "--eps", "1.0")
    assert code == 0
    assert json.loads(out)["violations"] == []


def test_verify_counterexamples_clean(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "counterexamples")
    assert code == 0
    payload = json.loads(out)
    assert payload["violations"] == []
    assert len(payload["extremal"]["reports"]) == 6


def test_verify_band(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "conjecture-band", "--rounds", "3", "1",
                       "--cap", "100", "--m-cap", "5")
    assert code == 0
    payload = json.loads(out)
    extremal = payload["extremal"]
    assert 0 < extremal["f_hat"]["value"] <= extremal["g_hat"]["value"]


def test_verify_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--suite", "counterexamples", "--out", str(path))
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text())["suite"] == "counterexamples"


def test_scan_header_and_rows(capsys):
    code, out, _ = run(capsys, "scan", "--R", "400", "--eta-grid", "0.5", "2.0", "4")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == CSV_HEADER == "R,eta,M,r,d,W,lower,upper,within,ratio"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "400" and first[3] == "2" and first[4] == "1"
    assert first[8] in ("true", "false")


def test_scan_curve_rises_toward_one(capsys):
    code, out, _ = run(capsys, "scan", "--R", "2000", "--eta-grid", "0.2", "3.0", "12")
    assert code == 0
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    ws = [float(r[5]) for r in rows]
    assert ws == sorted(ws)  # nondecreasing in eta
    assert ws[0] < 0.35 and ws[-1] > 0.95  # near-linear start, saturating end


def test_scan_saturates_above_population(capsys):
    code, out, _ = run(capsys, "scan", "--R", "16", "--eta-grid", "3.9", "4.5", "2")
    assert code == 0
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    assert int(rows[1][2]) >= 16  # M as computed, not clipped
    assert float(rows[1][5]) == 1.0  # all-mafia saturation


def test_scan_generalized_rounds(capsys):
    code, out, _ = run(capsys, "scan", "--R", "300", "--eta-grid", "0.5", "1.5", "3",
                       "--rounds", "3", "1")
    assert code == 0
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    assert rows[0][3] == "3" and rows[0][4] == "1"
    # M follows ceil(eta * R^(1/3))
    assert int(rows[0][2]) == 4  # ceil(0.5 * 300^(1/3)) = ceil(3.347)


def test_scan_usage_errors(capsys):
    assert run(capsys, "scan", "--R", "3", "--eta-grid", "0.5", "1", "2")[0] == 2
    assert run(capsys, "scan", "--R", "100", "--eta-grid", "0", "1", "3")[0] == 2
    assert run(capsys, "scan", "--R", "100", "--eta-grid", "1", "0.5", "2")[0] == 2
    assert run(capsys, "scan", "--R", "100", "--eta-grid", "0.5", "1", "2.5")[0] == 2


def test_simulate_json_schema_and_agreement(capsys):
    code, out, _ = run(capsys, "simulate", "20", "4", "--trials", "20000", "--seed", "7")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {
        "state", "rounds", "trials", "seed", "wins", "estimate", "stderr", "dp_value", "z",
    }
    assert payload["state"] == {"n": 20, "m": 4}
    assert abs(payload["z"]) <= 4


def test_simulate_byte_identical(capsys):
    argv = ["simulate", "10", "3", "--trials", "5000", "--seed", "123"]
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_simulate_absorbed_state(capsys):
    code, out, _ = run(capsys, "simulate", "5", "0", "--trials", "100", "--seed", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["estimate"] == 0.0 and payload["z"] == 0.0


def test_simulate_invalid_state(capsys):
    assert run(capsys, "simulate", "0", "0", "--trials", "10", "--seed", "1")[0] == 2


def test_simulate_vote_fidelity(capsys):
    code, out, _ = run(capsys, "simulate", "6", "2", "--trials", "20000", "--seed", "9",
                       "--fidelity", "vote")
    assert code == 0
    assert abs(json.loads(out)["z"]) <= 4
