"""Experiment execution: config schema, resolution, and the five run kinds.

A configuration is a flat ``section.key -> value`` mapping resolved from an
INI file plus command-line overrides; every default is materialized into the
resolved dict so the JSON summary replays the run exactly.
"""

from __future__ import annotations

import numpy as np

from . import __version__
from .analysis import (
    ALGEBRAIC,
    FitOptions,
    cgc_verdict,
    fgc_verdict,
    finite_size_fit,
    fit_profile,
)
from .blocks import evolve, ground_state
from .errors import AllBelowFloor, ConfigError, InsufficientData
from .loschmidt import analytic_cusp_times, detect_cusps, loschmidt_rate
from .model import ModelParams, QuenchProtocol, critical_field_lower, critical_field_upper
from .observables import tc_profile
from .pfaffian import KERNEL_NAME

KINDS = ("cgc", "fgc", "rate_function", "finite_size_sweep", "tc_profile")

DEFAULTS = {
    "experiment.kind": "tc_profile",
    "experiment.label": "",
    "experiment.output_dir": "out",
    "experiment.workers": 1,
    "model.n": 200,
    "model.h_initial": 0.5,
    "model.h_final": 0.5,
    "model.alpha_initial": 0.5,
    "model.alpha_final": 0.8,
    "time.steady_state_time": 200.0,
    "time.dt": 0.05,
    "time.t_max": 200.0,
    "time.average_window": 0.0,
    "time.average_samples": 1,
    "fit.r_min": 3,
    "fit.r_max": 0,
    "fit.ring_discard": 0.1,
    "fit.noise_floor": 1e-12,
    "fit.signal_floor": 1e-3,
    "fit.margin_threshold": 0.02,
    "fgc.h_final_same": 1.5,
    "fgc.h_final_cross": 2.5,
    "finite_size_sweep.sizes": "50,100,150,200,250,300,350,400,450,500",
    "rate_function.cusp_threshold": 10.0,
    "tc_profile.r_list": "",
}

_TYPES = {k: type(v) for k, v in DEFAULTS.items()}


def resolve_config(raw: dict[str, str]) -> dict:
    """Materialize defaults and typed values from a raw string mapping."""
    cfg: dict = dict(DEFAULTS)
    for key, value in raw.items():
        if key not in DEFAULTS:
            raise ConfigError(f"unknown configuration key {key!r}")
        target = _TYPES[key]
        try:
            if target is int:
                cfg[key] = int(value)
            elif target is float:
                cfg[key] = float(value)
            else:
                cfg[key] = str(value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {value!r} ({exc})") from None
    return cfg


def validate_config(cfg: dict) -> list[str]:
    """Physics and schema sanity checks; returns diagnostics (empty = ok)."""
    problems = []
    kind = cfg["experiment.kind"]
    if kind not in KINDS:
        problems.append(f"experiment.kind must be one of {KINDS}, got {kind!r}")
        return problems
    N = cfg["model.n"]
    if N % 2 != 0 or N < 4:
        problems.append(f"model.n must be even and >= 4, got {N}")
    for key in ("model.alpha_initial", "model.alpha_final"):
        if cfg[key] <= 0:
            problems.append(f"{key} must be positive, got {cfg[key]}")
    if cfg["experiment.workers"] < 1:
        problems.append("experiment.workers must be >= 1")
    if cfg["time.steady_state_time"] < 0 or cfg["time.t_max"] <= 0 or cfg["time.dt"] <= 0:
        problems.append("time values must be positive")
    if kind != "rate_function" and cfg["time.steady_state_time"] > cfg["time.t_max"]:
        problems.append("time.steady_state_time must lie within [0, time.t_max]")
    if problems:
        return problems

    if kind == "cgc" and cfg["model.alpha_initial"] >= 1.0:
        problems.append(
            "cgc requires the initial exponent in the strongly connected "
            f"regime (alpha_initial < 1), got {cfg['model.alpha_initial']}"
        )
    if kind == "fgc":
        try:
            p = ModelParams(N=N, h=cfg["model.h_initial"], alpha=cfg["model.alpha_final"])
            lo, hi = critical_field_lower(p), critical_field_upper(p)
            if not (lo < cfg["model.h_initial"] < hi):
                problems.append(
                    f"fgc requires the initial field in the ordered phase "
                    f"({lo:.4f}, {hi:.4f}), got {cfg['model.h_initial']}"
                )
        except ValueError as exc:
            problems.append(str(exc))
        same, cross = cfg["fgc.h_final_same"], cfg["fgc.h_final_cross"]
        try:
            p = ModelParams(N=N, h=same, alpha=cfg["model.alpha_final"])
            lo, hi = critical_field_lower(p), critical_field_upper(p)
            if not lo < same < hi:
                problems.append(
                    f"fgc.h_final_same={same} must stay in the ordered phase "
                    f"({lo:.4f}, {hi:.4f})"
                )
            if lo < cross < hi:
                problems.append(
                    f"fgc.h_final_cross={cross} must leave the ordered phase "
                    f"({lo:.4f}, {hi:.4f})"
                )
        except ValueError as exc:
            problems.append(str(exc))
    if kind == "finite_size_sweep":
        try:
            sizes = parse_int_list(cfg["finite_size_sweep.sizes"])
        except ValueError as exc:
            problems.append(f"finite_size_sweep.sizes: {exc}")
        else:
            if len(sizes) < 4:
                problems.append("finite_size_sweep needs >= 4 sizes")
            if any(s % 2 or s < 4 for s in sizes):
                problems.append("all sweep sizes must be even and >= 4")
    return problems


def parse_int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def fit_options(cfg: dict) -> FitOptions:
    sf = cfg["fit.signal_floor"]
    return FitOptions(
        r_min=cfg["fit.r_min"],
        ring_discard=cfg["fit.ring_discard"],
        noise_floor=cfg["fit.noise_floor"],
        signal_floor=sf if sf > 0 else None,
        margin_threshold=cfg["fit.margin_threshold"],
    )


def explicit_window(cfg: dict) -> tuple[int, int] | None:
    if cfg["fit.r_max"] > 0:
        return (cfg["fit.r_min"], cfg["fit.r_max"])
    return None


def _steady_profile(cfg: dict, h_i, a_i, h_f, a_f) -> list[tuple[int, float]]:
    """Profile of the steady state: snapshot at the steady time, or the
    opt-in average over trailing sample times (flagged in the summary)."""
    N = cfg["model.n"]
    initial = ModelParams(N=N, h=h_i, alpha=a_i)
    final = ModelParams(N=N, h=h_f, alpha=a_f)
    t_ss = cfg["time.steady_state_time"]
    window = cfg["time.average_window"]
    samples = max(1, cfg["time.average_samples"])
    if window > 0 and samples > 1:
        times = np.linspace(t_ss - window, t_ss, samples)
    else:
        times = [t_ss]
    r_list = parse_int_list(cfg["tc_profile.r_list"]) or list(range(1, N // 2))
    gs = ground_state(initial)
    acc = np.zeros(len(r_list))
    for t in times:
        state = evolve(gs, final, float(t))
        prof = tc_profile(state, r_list, workers=cfg["experiment.workers"])
        acc += np.array([v for _, v in prof])
    acc /= len(times)
    return list(zip(r_list, acc.tolist()))


def _base_summary(cfg: dict) -> dict:
    return {
        "version": __version__,
        "pfaffian_kernel": KERNEL_NAME,
        "config": dict(cfg),
        "fit_options": fit_options(cfg).as_dict(),
    }


def run_tc_profile(cfg: dict) -> tuple[dict[str, list], dict]:
    prof = _steady_profile(
        cfg,
        cfg["model.h_initial"],
        cfg["model.alpha_initial"],
        cfg["model.h_final"],
        cfg["model.alpha_final"],
    )
    summary = _base_summary(cfg)
    try:
        verdict = fit_profile(prof, window=explicit_window(cfg), options=fit_options(cfg))
        summary["verdict"] = verdict.as_dict()
    except AllBelowFloor as exc:
        summary["verdict"] = None
        summary["all_below_floor"] = str(exc)
    except InsufficientData as exc:
        summary["verdict"] = None
        summary["fit_error"] = str(exc)
    return {"profile": [("R", "I_R")] + [(R, v) for R, v in prof]}, summary


def run_cgc(cfg: dict) -> tuple[dict[str, list], dict]:
    prof = _steady_profile(
        cfg,
        cfg["model.h_initial"],
        cfg["model.alpha_initial"],
        cfg["model.h_final"],
        cfg["model.alpha_final"],
    )
    verdict = fit_profile(prof, window=explicit_window(cfg), options=fit_options(cfg))
    summary = _base_summary(cfg)
    summary["verdict"] = verdict.as_dict()
    summary["cgc"] = cgc_verdict(verdict)
    return {"profile": [("R", "I_R")] + list(prof)}, summary


def run_fgc(cfg: dict) -> tuple[dict[str, list], dict]:
    alpha = cfg["model.alpha_final"]
    h_i = cfg["model.h_initial"]
    prof_same = _steady_profile(cfg, h_i, alpha, cfg["fgc.h_final_same"], alpha)
    prof_cross = _steady_profile(cfg, h_i, alpha, cfg["fgc.h_final_cross"], alpha)
    opts = fit_options(cfg)
    win = explicit_window(cfg)
    v_same = fit_profile(prof_same, window=win, options=opts)
    v_cross = fit_profile(prof_cross, window=win, options=opts)
    summary = _base_summary(cfg)
    summary["verdict_same_phase"] = v_same.as_dict()
    summary["verdict_cross_phase"] = v_cross.as_dict()
    summary["fgc"] = fgc_verdict(v_same, v_cross)
    csvs = {
        "profile_same_phase": [("R", "I_R")] + list(prof_same),
        "profile_cross_phase": [("R", "I_R")] + list(prof_cross),
    }
    return csvs, summary


def run_rate_function(cfg: dict) -> tuple[dict[str, list], dict]:
    N = cfg["model.n"]
    initial = ModelParams(N=N, h=cfg["model.h_initial"], alpha=cfg["model.alpha_initial"])
    final = ModelParams(N=N, h=cfg["model.h_final"], alpha=cfg["model.alpha_final"])
    protocol = QuenchProtocol.uniform(initial, final, dt=cfg["time.dt"], t_max=cfg["time.t_max"])
    series = loschmidt_rate(protocol)
    cusps = detect_cusps(series, threshold_factor=cfg["rate_function.cusp_threshold"])
    predicted = analytic_cusp_times(protocol)
    summary = _base_summary(cfg)
    summary["cusps"] = cusps.tolist()
    summary["predicted_cusp_times"] = predicted.tolist()
    summary["cusp_threshold"] = cfg["rate_function.cusp_threshold"]
    return {"rate_function": [("t", "rate")] + [tuple(row) for row in series]}, summary


def run_finite_size_sweep(cfg: dict) -> tuple[dict[str, list], dict]:
    sizes = parse_int_list(cfg["finite_size_sweep.sizes"])
    opts = fit_options(cfg)
    runs = []
    per_size = []
    for N in sizes:
        sub = dict(cfg)
        sub["model.n"] = N
        prof = _steady_profile(
            sub,
            cfg["model.h_initial"],
            cfg["model.alpha_initial"],
            cfg["model.h_final"],
            cfg["model.alpha_final"],
        )
        runs.append((N, prof))
        v = fit_profile(prof, window=explicit_window(cfg), options=opts)
        per_size.append({"N": N, "verdict": v.as_dict()})
    fss = finite_size_fit(runs, options=opts)
    summary = _base_summary(cfg)
    summary["per_size"] = per_size
    summary["finite_size_fit"] = fss.as_dict()
    rows = [("N", "eta_N")] + [
        (N, e) for N, e in zip(fss.sizes, fss.etas)
    ]
    return {"finite_size_sweep": rows}, summary


RUNNERS = {
    "tc_profile": run_tc_profile,
    "cgc": run_cgc,
    "fgc": run_fgc,
    "rate_function": run_rate_function,
    "finite_size_sweep": run_finite_size_sweep,
}


def run_experiment(cfg: dict) -> tuple[dict[str, list], dict]:
    problems = validate_config(cfg)
    if problems:
        raise ConfigError("; ".join(problems))
    return RUNNERS[cfg["experiment.kind"]](cfg)
