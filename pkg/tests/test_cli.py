import json

import pytest

from mesonosc import cli


def run(args, tmp_path=None, out_name=None):
    argv = list(args)
    if out_name is not None:
        out = tmp_path / out_name
        argv = ["--out", str(out)] + argv
        rc = cli.main(argv)
        return rc, out
    return cli.main(argv), None


def test_rates_outputs_four_rows(tmp_path):
    rc, out = run(["rates"], tmp_path, "rates.csv")
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "species,lambda_csl_per_s,lambda_over_width"
    assert len(lines) == 5
    assert {ln.split(",")[0] for ln in lines[1:]} == {"K0", "B0", "Bs", "D0"}


def test_manifest_written_with_stable_keys(tmp_path):
    rc, out = run(["rates"], tmp_path, "rates.csv")
    manifest = json.loads((tmp_path / "rates.csv.manifest.json").read_text())
    assert list(manifest) == sorted(manifest)
    for key in ("command", "config_sha256", "duration_s", "parameters",
                "seed", "version"):
        assert key in manifest
    assert manifest["command"] == "rates"


def test_reruns_are_byte_identical(tmp_path):
    _, out1 = run(["--seed", "5", "single", "--species", "K0",
                   "--t-grid", "0:1e-9:50"], tmp_path, "a.csv")
    _, out2 = run(["--seed", "5", "single", "--species", "K0",
                   "--t-grid", "0:1e-9:50"], tmp_path, "b.csv")
    assert out1.read_bytes() == out2.read_bytes()


def test_single_trace_and_initial_row(tmp_path):
    _, out = run(["single", "--species", "K0", "--t-grid", "0:1e-9:20",
                  "--no-decay"], tmp_path, "s.csv")
    rows = [ln.split(",") for ln in out.read_text().splitlines()[1:]]
    first = [float(x) for x in rows[0]]
    assert first[1:] == pytest.approx([1.0, 0.0, 1.0, 0.0, 1.0])
    for row in rows:
        vals = [float(x) for x in row]
        assert vals[1] + vals[2] == pytest.approx(vals[5], abs=1e-12)


def test_single_csv_formatting(tmp_path):
    _, out = run(["single", "--t-grid", "0:1e-9:5"], tmp_path, "f.csv")
    text = out.read_text()
    assert "\r" not in text
    # scientific notation with 12 digits after the point
    assert "e-" in text.splitlines()[1] or "e+" in text.splitlines()[1]
    cell = text.splitlines()[1].split(",")[0]
    mantissa = cell.split("e")[0]
    assert len(mantissa.split(".")[1]) == 12


def test_joint_epr_column(tmp_path):
    _, out = run(["joint", "--species", "K0", "--t-left", "1e-10:1e-10:1",
                  "--t-right", "1e-10:1e-10:1", "--proj-left", "P",
                  "--proj-right", "P"], tmp_path, "j.csv")
    row = out.read_text().splitlines()[1].split(",")
    assert float(row[2]) < 1e-12


def test_mc_json_within_three_sigma(tmp_path):
    _, out = run(["mc", "--gamma-j", "4", "--gamma-k", "1", "--f0", "1",
                  "--t", "1", "--n-trajectories", "5000",
                  "--n-steps", "32"], tmp_path, "mc.json")
    doc = json.loads(out.read_text())
    assert abs(doc["mean_interference"] - doc["analytic_prediction"]) \
        < 3.0 * doc["std_error"]


def test_fit_round_trip_and_event_file(tmp_path):
    events = tmp_path / "events.csv"
    rc, out = run(["--seed", "13", "fit", "--zeta-true", "0.3",
                   "--n-events", "5000", "--save-events", str(events)],
                  tmp_path, "fit.json")
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["converged"]
    assert doc["ci_low"] <= 0.3 <= doc["ci_high"] or \
        abs(doc["zeta_hat"] - 0.3) < 0.1
    # refit from the saved file reproduces the estimate
    rc2, out2 = run(["fit", "--events", str(events)], tmp_path, "fit2.json")
    assert rc2 == 0
    doc2 = json.loads(out2.read_text())
    assert doc2["zeta_hat"] == pytest.approx(doc["zeta_hat"], abs=1e-4)


def test_overlap_monotone(tmp_path):
    _, out = run(["overlap", "--t-grid", "0:1e-13:10"], tmp_path, "o.csv")
    rows = [ln.split(",") for ln in out.read_text().splitlines()[1:]]
    ratios = [float(r[2]) for r in rows]
    assert ratios[0] == pytest.approx(1.0)
    assert all(a >= b for a, b in zip(ratios, ratios[1:]))


def test_diag_reports_discrepancies(tmp_path):
    _, out = run(["diag"], tmp_path, "d.json")
    doc = json.loads(out.read_text())
    assert "momentum_spread" in doc and "phase_magnitude" in doc
    assert doc["momentum_spread"]["h_over_rc_ev_per_c"] == pytest.approx(
        12.4, rel=0.01
    )


def test_exit_code_config_error():
    assert cli.main(["single", "--species", "T0"]) == 3
    assert cli.main(["rates", "--csl-preset", "nope"]) == 3


def test_exit_code_usage_error():
    assert cli.main(["single", "--t-grid", "garbage"]) == 2


def test_exit_code_numeric_failure():
    assert cli.main(["mc", "--gamma-j", "-1", "--gamma-k", "1",
                     "--f0", "1", "--t", "1"]) == 4


def test_missing_config_file_is_config_error():
    assert cli.main(["--config", "/nonexistent/cfg.json", "rates"]) == 3


def test_custom_config(tmp_path):
    import mesonosc as m
    cfg = tmp_path / "cfg.json"
    cfg.write_text(m.dump_config(m.default_registry()))
    rc, out = run(["--config", str(cfg), "rates"], tmp_path, "r.csv")
    assert rc == 0
    assert len(out.read_text().splitlines()) == 5
