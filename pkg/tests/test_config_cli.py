import csv
import json

import pytest

from sidonor.cli import main
from sidonor.config import ConfigError, load_config, parse_quantity, set_by_path

DISC_CONFIG = {
    "gate": {"kind": "disc", "a": "5 nm", "c": "10 nm"},
    "voltage": {"values": ["0 V", "0.5 V", "1 V"]},
}

STRIP_CONFIG = {
    "gate": {"kind": "strip", "a": "5 nm", "c": "10 nm", "D": "500 nm"},
    "voltage": {"values": ["0.6 V"]},
    "placement": {"dx": "1 nm", "dz": "1 nm"},
    "error_budget": {
        "target": 0.01,
        "line_width": "10 kHz",
        "ranges": {"a": ["5 nm", "5 nm"], "c": ["10 nm", "10 nm"], "V": ["0.1 V", "1 V"]},
    },
}


def write_config(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


# --- quantity parsing -------------------------------------------------------

def test_parse_quantity_units():
    assert parse_quantity("10 nm", "length", "x") == pytest.approx(1e-8)
    assert parse_quantity("0.04 eV", "energy", "x") == pytest.approx(6.4e-21)
    assert parse_quantity("10 kHz", "frequency", "x") == pytest.approx(1e4)
    assert parse_quantity("0.43e30 m^-3", "density", "x") == pytest.approx(0.43e30)
    assert parse_quantity("0.43e24 cm^-3", "density", "x") == pytest.approx(0.43e30)


def test_parse_quantity_rejects_bare_numbers_and_bad_units():
    with pytest.raises(ConfigError):
        parse_quantity(10, "length", "gate.a")
    with pytest.raises(ConfigError):
        parse_quantity("10 parsec", "length", "gate.a")
    with pytest.raises(ConfigError):
        parse_quantity("ten nm", "length", "gate.a")


def test_set_by_path():
    data = {"gate": {"kind": "disc"}}
    set_by_path(data, "gate.a=\"4 nm\"")
    set_by_path(data, "spin.alpha_a=0.25")
    assert data["gate"]["a"] == "4 nm"
    assert data["spin"]["alpha_a"] == 0.25
    with pytest.raises(ConfigError):
        set_by_path(data, "no-equals-sign")


def test_material_overrides(tmp_path):
    path = write_config(
        tmp_path,
        {"material": {"a_star": "3 nm", "eps_r": 12.5, "delta_E": "-0.025 eV"}},
    )
    cfg = load_config(path)
    assert cfg.material.a_star == pytest.approx(3e-9)
    assert cfg.material.eps_r == 12.5
    assert cfg.material.delta_E == pytest.approx(-0.025 * 1.6e-19)


def test_bad_json_reports_config_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(path))


# --- CLI commands -----------------------------------------------------------

def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_hic_requires_gate(tmp_path, capsys):
    code = main(["hic", "--out-dir", str(tmp_path)])
    assert code == 2
    assert "gate.kind" in capsys.readouterr().err


def test_hic_rows_and_zero_voltage(tmp_path):
    cfg = write_config(tmp_path, DISC_CONFIG)
    out = tmp_path / "out"
    assert main(["hic", "--config", cfg, "--out-dir", str(out)]) == 0
    rows = read_csv(out / "hic.csv")
    assert rows[0] == ["V", "second_order", "first_order_linear", "first_order_squared", "total"]
    assert len(rows) == 4
    assert [float(x) for x in rows[1]] == [0.0, 0.0, 0.0, 0.0, 0.0]
    data = json.loads((out / "hic.json").read_text())
    assert len(data) == 3 and data[2]["V"] == 1.0


def test_hic_deterministic_output(tmp_path):
    cfg = write_config(tmp_path, DISC_CONFIG)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    main(["hic", "--config", cfg, "--out-dir", str(out1)])
    main(["hic", "--config", cfg, "--out-dir", str(out2)])
    assert (out1 / "hic.csv").read_bytes() == (out2 / "hic.csv").read_bytes()
    assert (out1 / "hic.json").read_bytes() == (out2 / "hic.json").read_bytes()


def test_set_override_changes_output(tmp_path):
    cfg = write_config(tmp_path, DISC_CONFIG)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    main(["hic", "--config", cfg, "--out-dir", str(out1)])
    main(["hic", "--config", cfg, "--set", 'gate.a="4 nm"', "--out-dir", str(out2)])
    assert (out1 / "hic.csv").read_bytes() != (out2 / "hic.csv").read_bytes()


def test_strip_run_emits_quadratic_curve(tmp_path):
    payload = dict(DISC_CONFIG)
    payload["gate"] = {"kind": "strip", "a": "5 nm", "c": "10 nm", "D": "500 nm"}
    cfg = write_config(tmp_path, payload)
    out = tmp_path / "out"
    main(["hic", "--config", cfg, "--out-dir", str(out), "--format", "json"])
    data = json.loads((out / "hic.json").read_text())
    assert data[1]["first_order_linear"] == 0.0
    assert data[2]["total"] == pytest.approx(-0.11142168664840582, rel=1e-12)


def test_error_budget_command(tmp_path):
    cfg = write_config(tmp_path, STRIP_CONFIG)
    out = tmp_path / "out"
    assert main(["error-budget", "--config", cfg, "--out-dir", str(out)]) == 0
    rows = read_csv(out / "error_budget.csv")
    header = rows[0]
    assert header[0] == "mode"
    by_mode = {}
    for row in rows[1:]:
        by_mode.setdefault(row[0], []).append(row)
    assert set(by_mode) == {"published", "recomputed"}
    pub = by_mode["published"][0]
    dz_idx, band_idx, dv_idx = header.index("dz_for_target"), header.index("dz_in_2_3_nm"), header.index("admissible_dV")
    assert 2e-9 <= float(pub[dz_idx]) <= 3e-9
    assert pub[band_idx] == "1"
    assert 1e-4 <= float(pub[dv_idx]) <= 1e-3
    nulling = read_csv(out / "nulling.csv")
    assert len(nulling) == 2  # header + the V* ~ 0.747 root
    assert float(nulling[1][2]) == pytest.approx(0.7468820861678004, rel=1e-6)


def test_error_budget_empty_ranges_warn_but_succeed(tmp_path, capsys):
    payload = json.loads(json.dumps(STRIP_CONFIG))
    payload["error_budget"]["ranges"]["V"] = ["0.1 V", "0.2 V"]  # off-root window
    cfg = write_config(tmp_path, payload)
    out = tmp_path / "out"
    assert main(["error-budget", "--config", cfg, "--out-dir", str(out)]) == 0
    assert "no nulling configuration" in capsys.readouterr().out
    assert len(read_csv(out / "nulling.csv")) == 1  # header only


def test_spectrum_command(tmp_path):
    payload = {
        "spin": {
            "alpha_a": 0.3,
            "alpha_b": 0.4,
            "beta": {"start": 0.2, "stop": 3.0, "points": 57},
            "mu": "slaved",
        }
    }
    cfg = write_config(tmp_path, payload)
    out = tmp_path / "out"
    assert main(["spectrum", "--config", cfg, "--out-dir", str(out), "--format", "csv"]) == 0
    rows = read_csv(out / "spectrum.csv")
    assert rows[0] == ["beta", "level", "block", "energy", "dominant_state", "dominant_weight"]
    betas = sorted({float(r[0]) for r in rows[1:]})
    assert len(rows) == 1 + len(betas) * 16
    # second pass refines the vicinity of the detected anticrossings 10x
    assert len(betas) > 57
    base_step = (3.0 - 0.2) / 56
    near_one = [b for b in betas if 0.95 < b < 1.05]
    assert len(near_one) > 0.1 / base_step
    report = json.loads((out / "anticrossings.json").read_text())
    pairs = {tuple(r["pair"]) for r in report["anticrossings"] if r["kind"] == "anticrossing"}
    assert (15, 12) in pairs and (13, 10) in pairs
    assert len(report["transfer_traces"]) == 16


def test_spectrum_single_point(tmp_path):
    payload = {"spin": {"alpha_a": 0.0, "alpha_b": 0.0, "beta": {"values": [1.5]}, "mu": 0.0}}
    cfg = write_config(tmp_path, payload)
    out = tmp_path / "out"
    assert main(["spectrum", "--config", cfg, "--out-dir", str(out), "--format", "csv"]) == 0
    assert len(read_csv(out / "spectrum.csv")) == 1 + 16


def test_anticross_crossing_at_unit_beta(tmp_path):
    payload = {
        "spin": {"alpha_a": 0.0, "alpha_b": 0.0, "beta": {"start": 0.2, "stop": 3.0, "points": 281}, "mu": 0}
    }
    cfg = write_config(tmp_path, payload)
    out = tmp_path / "out"
    assert main(["anticross", "--config", cfg, "--out-dir", str(out)]) == 0
    report = json.loads((out / "anticrossings.json").read_text())
    kinds = {r["kind"] for r in report["anticrossings"]}
    assert kinds == {"crossing"}
    step = (3.0 - 0.2) / 280
    assert any(abs(r["beta_star"] - 1.0) <= step for r in report["anticrossings"])


def test_validate_command_passes(capsys):
    assert main(["validate"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 13
    assert "13/13" in out


def test_non_convergence_maps_to_exit_3(tmp_path, monkeypatch):
    from sidonor import cli
    from sidonor.jacobi import ConvergenceError

    def boom(*args, **kwargs):
        raise ConvergenceError("synthetic")

    monkeypatch.setattr(cli, "sweep_spectrum", boom)
    assert main(["spectrum", "--out-dir", str(tmp_path)]) == 3


def test_mass_override_requires_unit(tmp_path):
    cfg = write_config(tmp_path, {"material": {"m_star": 2.8e-31}})
    with pytest.raises(ConfigError):
        load_config(cfg)
    cfg = write_config(tmp_path, {"material": {"m_star": "2.8e-31 kg"}})
    assert load_config(cfg).material.m_star == pytest.approx(2.8e-31)
