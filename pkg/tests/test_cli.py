import csv
import json
from pathlib import Path

import numpy as np
import pytest

from lrquench.cli import EXIT_CONFIG, EXIT_OK, main
from lrquench.experiments import DEFAULTS, resolve_config, validate_config


def write_config(path: Path, text: str) -> str:
    path.write_text(text)
    return str(path)


BASE = """
[experiment]
kind = tc_profile
output_dir = {out}
[model]
n = 8
h_initial = 0.5
h_final = 2.5
alpha_initial = 1.3
alpha_final = 1.3
[time]
steady_state_time = 3.0
t_max = 5.0
[tc_profile]
r_list = 1,2,3
"""


def test_validate_accepts_fig5_style_config(tmp_path):
    cfg = write_config(
        tmp_path / "c.ini",
        """
[experiment]
kind = fgc
[model]
n = 200
h_initial = 0.5
alpha_final = 3.0
[fgc]
h_final_same = 1.5
h_final_cross = 2.5
""",
    )
    assert main(["validate", cfg]) == EXIT_OK


def test_validate_rejects_disordered_initial_field(tmp_path, capsys):
    cfg = write_config(
        tmp_path / "c.ini",
        """
[experiment]
kind = fgc
[model]
n = 200
h_initial = 2.5
alpha_final = 3.0
""",
    )
    assert main(["validate", cfg]) == EXIT_CONFIG
    assert "ordered phase" in capsys.readouterr().err


def test_validate_rejects_odd_size(tmp_path):
    cfg = write_config(tmp_path / "c.ini", "[model]\nn = 7\n")
    assert main(["validate", cfg]) == EXIT_CONFIG


def test_unknown_key_is_config_error(tmp_path):
    cfg = write_config(tmp_path / "c.ini", "[model]\nbogus = 3\n")
    assert main(["validate", cfg]) == EXIT_CONFIG


def test_run_tc_profile_outputs(tmp_path):
    cfg = write_config(tmp_path / "c.ini", BASE.format(out=tmp_path / "out"))
    assert main(["run", cfg]) == EXIT_OK
    csv_path = tmp_path / "out" / "tc_profile_profile.csv"
    rows = list(csv.reader(open(csv_path)))
    assert rows[0] == ["R", "I_R"]
    assert [r[0] for r in rows[1:]] == ["1", "2", "3"]
    summary = json.loads((tmp_path / "out" / "tc_profile_summary.json").read_text())
    assert summary["config"]["model.n"] == 8
    assert "version" in summary and "fit_options" in summary
    assert (tmp_path / "out" / "lrquench.log").exists()


def test_run_flag_overrides(tmp_path):
    cfg = write_config(tmp_path / "c.ini", BASE.format(out=tmp_path / "o1"))
    assert main(["run", cfg, "--size", "10", "--output-dir", str(tmp_path / "o2")]) == EXIT_OK
    summary = json.loads((tmp_path / "o2" / "tc_profile_summary.json").read_text())
    assert summary["config"]["model.n"] == 10


def test_run_rate_function_schema_and_cusps(tmp_path):
    cfg = write_config(
        tmp_path / "c.ini",
        f"""
[experiment]
kind = rate_function
output_dir = {tmp_path / 'out'}
[model]
n = 64
h_initial = 0.5
h_final = 2.5
alpha_initial = 3.0
alpha_final = 3.0
[time]
dt = 0.05
t_max = 5.0
""",
    )
    assert main(["run", cfg]) == EXIT_OK
    files = list((tmp_path / "out").glob("*.csv"))
    assert len(files) == 1
    rows = list(csv.reader(open(files[0])))
    assert rows[0] == ["t", "rate"]
    summary = json.loads((tmp_path / "out" / "rate_function_summary.json").read_text())
    assert "cusps" in summary and "predicted_cusp_times" in summary


def test_run_product_state_reports_all_below_floor(tmp_path):
    cfg = write_config(
        tmp_path / "c.ini",
        f"""
[experiment]
kind = tc_profile
output_dir = {tmp_path / 'out'}
[model]
n = 12
h_initial = 1e8
h_final = 1e8
alpha_initial = 2.0
alpha_final = 2.0
[time]
steady_state_time = 0.0
""",
    )
    assert main(["run", cfg]) == EXIT_OK
    summary = json.loads((tmp_path / "out" / "tc_profile_summary.json").read_text())
    assert summary["verdict"] is None
    assert "all_below_floor" in summary


def test_round_trip_reproducibility(tmp_path):
    cfg = write_config(tmp_path / "c.ini", BASE.format(out=tmp_path / "o1"))
    assert main(["run", cfg]) == EXIT_OK
    summary = json.loads((tmp_path / "o1" / "tc_profile_summary.json").read_text())
    # replay from the resolved config embedded in the summary
    resolved = summary["config"]
    lines: dict[str, list[str]] = {}
    for key, value in resolved.items():
        section, name = key.split(".")
        lines.setdefault(section, []).append(f"{name} = {value}")
    text = "\n".join(
        f"[{section}]\n" + "\n".join(vals) for section, vals in lines.items()
    )
    cfg2 = write_config(tmp_path / "c2.ini", text)
    assert main(["run", cfg2, "--output-dir", str(tmp_path / "o2")]) == EXIT_OK
    rows1 = list(csv.reader(open(tmp_path / "o1" / "tc_profile_profile.csv")))[1:]
    rows2 = list(csv.reader(open(tmp_path / "o2" / "tc_profile_profile.csv")))[1:]
    for (r1, v1), (r2, v2) in zip(rows1, rows2):
        assert r1 == r2
        assert abs(float(v1) - float(v2)) < 1e-10


def test_oracle_check_command(capsys):
    assert main(["oracle-check", "--sizes", "4", "--draws", "1", "--seed", "7"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "pass" in out and "worst deviation" in out


def test_resolve_config_defaults_complete():
    cfg = resolve_config({})
    assert set(cfg) == set(DEFAULTS)
    assert validate_config(cfg) == []


def test_run_fgc_pair_outputs(tmp_path):
    cfg = write_config(
        tmp_path / "c.ini",
        f"""
[experiment]
kind = fgc
output_dir = {tmp_path / 'out'}
[model]
n = 32
h_initial = 0.5
alpha_initial = 3.0
alpha_final = 3.0
[fgc]
h_final_same = 1.5
h_final_cross = 2.5
[time]
steady_state_time = 3.0
""",
    )
    assert main(["run", cfg]) == EXIT_OK
    files = sorted(p.name for p in (tmp_path / "out").glob("*.csv"))
    assert files == ["fgc_profile_cross_phase.csv", "fgc_profile_same_phase.csv"]
    summary = json.loads((tmp_path / "out" / "fgc_summary.json").read_text())
    assert summary["fgc"] in ("quasi_local", "local")
    assert summary["verdict_same_phase"]["model"] in ("algebraic", "exponential")


def test_run_time_averaged_steady_state(tmp_path):
    # the opt-in averaging window is flagged in the resolved config and
    # changes the profile relative to the plain snapshot
    base = f"""
[experiment]
kind = tc_profile
output_dir = {{out}}
[model]
n = 16
h_initial = 0.5
h_final = 2.0
alpha_initial = 1.0
alpha_final = 1.0
[time]
steady_state_time = 5.0
t_max = 10.0
{{avg}}
"""
    cfg1 = write_config(tmp_path / "snap.ini", base.format(out=tmp_path / "o1", avg=""))
    cfg2 = write_config(
        tmp_path / "avg.ini",
        base.format(out=tmp_path / "o2", avg="average_window = 2.0\naverage_samples = 5"),
    )
    assert main(["run", cfg1]) == EXIT_OK
    assert main(["run", cfg2]) == EXIT_OK
    s2 = json.loads((tmp_path / "o2" / "tc_profile_summary.json").read_text())
    assert s2["config"]["time.average_window"] == 2.0
    assert s2["config"]["time.average_samples"] == 5
    rows1 = list(csv.reader(open(tmp_path / "o1" / "tc_profile_profile.csv")))[1:]
    rows2 = list(csv.reader(open(tmp_path / "o2" / "tc_profile_profile.csv")))[1:]
    diffs = [abs(float(a[1]) - float(b[1])) for a, b in zip(rows1, rows2)]
    assert max(diffs) > 1e-12
