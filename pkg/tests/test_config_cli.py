import csv
import io
import json
import math

import pytest

from vfswarm import ConfigError, Scenario
from vfswarm.cli import main
from vfswarm.config import apply_override, format_scenario, load_scenario, parse_scenario

BUNDLED = ("straight15.cfg", "sine15.cfg", "headon2.cfg")


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_scenarios_round_trip(name):
    sc = load_scenario(name)
    assert parse_scenario(format_scenario(sc)) == sc
    assert parse_scenario(format_scenario(sc, comments=False)) == sc


def test_bundled_scenarios_carry_the_reference_parameters():
    line, sine = load_scenario("straight15.cfg"), load_scenario("sine15.cfg")
    for sc in (line, sine):
        assert sc.n_uavs == 15
        assert (sc.guidance.k_g, sc.guidance.k_psi) == (0.05, 2.3)
        assert (sc.avoidance.k_r, sc.avoidance.r_s, sc.avoidance.d_safe) == (11.0, 1.5, 0.4)
        assert (sc.spacing.v_nom, sc.spacing.kappa, sc.spacing.d_eq) == (3.0, 1.0, 4.0)
    assert line.path.is_straight and line.t_end == 40.0
    assert (sine.path.amplitude, sine.path.frequency, sine.t_end) == (5.0, 0.075, 60.0)


def test_scaffold_reparses_to_defaults(tmp_path, capsys):
    assert main(["scaffold"]) == 0
    text = capsys.readouterr().out
    assert parse_scenario(text) == Scenario()
    assert main(["scaffold", "-o", str(tmp_path / "s.cfg")]) == 0
    assert load_scenario(tmp_path / "s.cfg") == Scenario()


def test_missing_keys_use_defaults():
    sc = parse_scenario("[avoidance]\nk_r = 6\n")
    assert sc == Scenario().replace(avoidance=sc.avoidance) and sc.avoidance.k_r == 6.0


@pytest.mark.parametrize(
    "text, needle",
    [
        ("[avoidance]\nk_rr = 1\n", "k_rr"),
        ("[wind]\nspeed = 1\n", "wind"),
        ("[sim]\ndt = fast\n", "dt"),
        ("[spacing]\nkappa = 3\n", "kappa"),
        ("[avoidance]\nd_safe = 2\n", "r_s"),
        ("[path]\nvariant = sinusoid\namplitude = 5\n", "frequency"),
        ("[path]\namplitude = 5\n", "amplitude"),
        ("[init]\nn_uavs = 2.5\n", "n_uavs"),
        ("[init]\nn_uavs = 3\nstates =\n    0, 0, 0\n", "initial_states"),
        ("no section header\n", "malformed"),
    ],
)
def test_invalid_files_name_the_problem(text, needle):
    with pytest.raises(ConfigError, match=needle):
        parse_scenario(text)


def test_close_equispacing_warns():
    with pytest.warns(UserWarning, match="d_eq"):
        parse_scenario("[spacing]\nd_eq = 1.0\n")


def test_override():
    sc = apply_override(Scenario(), "k_r", "4.5")
    assert sc.avoidance.k_r == 4.5
    assert apply_override(Scenario(), "sim.dt", 0.005).dt == 0.005
    with pytest.raises(ConfigError):
        apply_override(Scenario(), "integrator", "euler")
    with pytest.raises(ConfigError):
        apply_override(Scenario(), "warp", 1)


# ---- end-to-end CLI --------------------------------------------------------


def test_run_reference_line_scenario(tmp_path, capsys):
    assert main(["run", "straight15.cfg", "--out", str(tmp_path)]) == 0
    with open(tmp_path / "telemetry.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert {r["id"] for r in rows} == {str(i) for i in range(15)}
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["collision"] is False and summary["min_E_over_run"] > 0.4


def test_run_same_seed_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["run", "straight15.cfg", "--seed", "7", "--out", str(a)])
    main(["run", "straight15.cfg", "--seed", "7", "--out", str(b)])
    assert (a / "telemetry.csv").read_bytes() == (b / "telemetry.csv").read_bytes()


def test_run_rejects_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[spacing]\nv_nom = 3\nkappa = 3.5\n")
    assert main(["run", str(cfg), "--out", str(tmp_path / "o")]) == 1
    assert "kappa" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "nope.cfg")]) == 1


def test_run_collision_exits_2_with_partial_telemetry(tmp_path, capsys):
    cfg = tmp_path / "crash.cfg"
    text = format_scenario(load_scenario("headon2.cfg")).replace("k_r = 11.0", "k_r = 0.0")
    cfg.write_text(text)
    assert main(["run", str(cfg), "--out", str(tmp_path), "--format", "jsonl"]) == 2
    lines = (tmp_path / "telemetry.jsonl").read_text().splitlines()
    last = json.loads(lines[-1])
    assert 1 < len(lines) < 301 and last["E_min"] <= 0.4
    assert json.loads((tmp_path / "summary.json").read_text())["collision"] is True


def test_run_svg_and_decimation(tmp_path):
    cfg = tmp_path / "short.cfg"
    cfg.write_text("[sim]\nt_end = 1.0\n[init]\nn_uavs = 4\n")
    main(["run", str(cfg), "--out", str(tmp_path), "--svg", "--decimation", "50"])
    with open(tmp_path / "telemetry.csv") as fh:
        times = {r["t"] for r in csv.DictReader(fh)}
    assert times == {"0", "0.5", "1"}
    for name in ("trajectories.svg", "timeseries.svg"):
        assert (tmp_path / name).read_text().lstrip().startswith("<?xml")


def _sweep(capsys, *argv):
    code = main(["sweep", *argv])
    return code, list(csv.DictReader(io.StringIO(capsys.readouterr().out)))


def test_sweep_errors(capsys):
    assert main(["sweep", "headon2.cfg", "--param", "k_r", "--values"]) == 1
    assert main(["sweep", "headon2.cfg", "--param", "k_r"]) == 1
    assert main(["sweep", "headon2.cfg", "--param", "warp", "--values", "1"]) == 1


def test_sweep_k_r_head_on_transition(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SIM_THREADS", "2")
    values = ["0", "2", "4", "6", "8.19", "11"]
    code, rows = _sweep(capsys, "headon2.cfg", "--param", "k_r", "--values", *values,
                        "--out", str(tmp_path))
    assert code == 0
    assert [r["value"] for r in rows] == values
    flags = [r["collision"] == "true" for r in rows]
    assert flags[0] is True
    first_safe = flags.index(False)
    assert not any(flags[first_safe:])
    assert float(values[first_safe]) <= 8.19
    assert (tmp_path / "sweep.csv").read_text().startswith(
        "value,min_E,collision,time_to_path,final_max_abs_delta\n"
    )


def test_sweep_dt_halving_agrees_on_min_E(capsys):
    code, rows = _sweep(capsys, "straight15.cfg", "--param", "dt", "--values", "0.01,0.005")
    assert code == 0
    assert abs(float(rows[0]["min_E"]) - float(rows[1]["min_E"])) < 1e-4


def test_certify_low_gain(capsys):
    assert main(["certify", "--k-r", "1", "--n-samples", "50"]) == 2
    out = capsys.readouterr().out
    assert "8.181818182" in out and "NOT above" in out


def test_certify_bad_parameters(capsys):
    assert main(["certify", "--d-safe", "1.5", "--r-s", "1.5"]) == 1
    assert main(["certify", "--n-samples", "0"]) == 1


def test_certify_high_gain_certifies(capsys):
    assert main(["certify", "--k-r", "40", "--n-samples", "300"]) == 0
    assert capsys.readouterr().out.rstrip().endswith("CERTIFIED")


@pytest.mark.xfail(
    strict=True,
    reason="near head-on engagements dip below d_safe at k_r = 11; see the acceptance notes",
)
def test_certify_reference_gain(capsys):
    assert main(["certify", "--v", "3", "--r-s", "1.5", "--d-safe", "0.4", "--k-r", "11"]) == 0


def test_module_entry_point():
    import subprocess
    import sys

    done = subprocess.run([sys.executable, "-m", "vfswarm", "certify", "--k-r", "1",
                           "--n-samples", "5"], capture_output=True, text=True)
    assert done.returncode == 2 and math.isclose(
        float(done.stdout.split("=")[1].split()[0]), 9 / 1.1, rel_tol=1e-9
    )
