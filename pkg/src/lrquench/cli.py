"""Command-line driver: run / validate / oracle-check.

Exit codes: 0 success, 2 configuration problems, 3 numerical failures,
4 I/O failures.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, NumericalError
from .experiments import DEFAULTS, resolve_config, run_experiment, validate_config
from .model import ModelParams
from .oracle import compare_with_dense

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

logger = logging.getLogger("lrquench")

# command-line flag -> config key
_FLAG_KEYS = {
    "kind": "experiment.kind",
    "size": "model.n",
    "h_initial": "model.h_initial",
    "h_final": "model.h_final",
    "alpha_initial": "model.alpha_initial",
    "alpha_final": "model.alpha_final",
    "steady_time": "time.steady_state_time",
    "dt": "time.dt",
    "t_max": "time.t_max",
    "fit_rmin": "fit.r_min",
    "fit_rmax": "fit.r_max",
    "signal_floor": "fit.signal_floor",
    "workers": "experiment.workers",
    "output_dir": "experiment.output_dir",
}


def _read_config_file(path: Path) -> dict[str, str]:
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None
    raw = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            raw[f"{section}.{key}"] = value
    return raw


def _gather_config(args) -> dict:
    raw: dict[str, str] = {}
    if args.config:
        raw.update(_read_config_file(Path(args.config)))
    for flag, key in _FLAG_KEYS.items():
        value = getattr(args, flag, None)
        if value is not None:
            raw[key] = str(value)
    for item in args.set or []:
        if "=" not in item:
            raise ConfigError(f"--set expects section.key=value, got {item!r}")
        key, value = item.split("=", 1)
        raw[key.strip()] = value.strip()
    return resolve_config(raw)


def _write_outputs(cfg: dict, csvs: dict[str, list], summary: dict) -> Path:
    out_dir = Path(cfg["experiment.output_dir"])
    label = cfg["experiment.label"] or cfg["experiment.kind"]
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, rows in csvs.items():
            path = out_dir / f"{label}_{name}.csv"
            with open(path, "w", newline="") as fh:
                writer = csv.writer(fh)
                for row in rows:
                    writer.writerow(row)
            logger.info("wrote %s", path)
        summary_path = out_dir / f"{label}_summary.json"
        with open(summary_path, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
        logger.info("wrote %s", summary_path)
    except OSError as exc:
        raise IOError(f"cannot write outputs to {out_dir}: {exc}") from None
    return out_dir


def _setup_logging(out_dir: str | None) -> None:
    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if out_dir:
        try:
            Path(out_dir).mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(Path(out_dir) / "lrquench.log"))
        except OSError:
            pass
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        handlers=handlers,
        force=True,
    )


def cmd_run(args) -> int:
    cfg = _gather_config(args)
    _setup_logging(cfg["experiment.output_dir"])
    logger.info("lrquench %s: running %s", __version__, cfg["experiment.kind"])
    t0 = time.time()
    csvs, summary = run_experiment(cfg)
    summary["elapsed_seconds"] = round(time.time() - t0, 3)
    _write_outputs(cfg, csvs, summary)
    logger.info("done in %.1f s", time.time() - t0)
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = _gather_config(args)
    problems = validate_config(cfg)
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return EXIT_CONFIG
    print("configuration ok")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    _setup_logging(None)
    rng = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'N':>4} {'h_i':>7} {'a_i':>7} {'h_f':>7} {'a_f':>7} {'max dev':>12} {'status':>8}")
    worst = 0.0
    failures = 0
    for N in sizes:
        for _ in range(args.draws):
            h_i, h_f = rng.uniform(0.2, 3.0, size=2)
            a_i, a_f = rng.uniform(0.3, 5.0, size=2)
            cmp = compare_with_dense(
                ModelParams(N=N, h=float(h_i), alpha=float(a_i)),
                ModelParams(N=N, h=float(h_f), alpha=float(a_f)),
            )
            ok = cmp.max_dev < args.tol
            failures += not ok
            worst = max(worst, cmp.max_dev)
            print(
                f"{N:>4} {h_i:>7.3f} {a_i:>7.3f} {h_f:>7.3f} {a_f:>7.3f} "
                f"{cmp.max_dev:>12.3e} {'pass' if ok else 'FAIL':>8}"
            )
    print(f"worst deviation {worst:.3e} over {len(sizes) * args.draws} draws "
          f"(tolerance {args.tol:g})")
    if failures:
        print(f"{failures} draws failed", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrquench",
        description="Quench simulator for the long-range transverse-field "
        "extended Ising chain",
    )
    parser.add_argument("--version", action="version", version=f"lrquench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_flags(p):
        p.add_argument("config", nargs="?", help="INI configuration file")
        p.add_argument("--kind", choices=("cgc", "fgc", "rate_function",
                                          "finite_size_sweep", "tc_profile"))
        p.add_argument("--size", type=int, help="lattice size N")
        p.add_argument("--h-initial", dest="h_initial", type=float)
        p.add_argument("--h-final", dest="h_final", type=float)
        p.add_argument("--alpha-initial", dest="alpha_initial", type=float)
        p.add_argument("--alpha-final", dest="alpha_final", type=float)
        p.add_argument("--steady-time", dest="steady_time", type=float)
        p.add_argument("--dt", type=float)
        p.add_argument("--t-max", dest="t_max", type=float)
        p.add_argument("--fit-rmin", dest="fit_rmin", type=int)
        p.add_argument("--fit-rmax", dest="fit_rmax", type=int)
        p.add_argument("--signal-floor", dest="signal_floor", type=float)
        p.add_argument("--workers", type=int)
        p.add_argument("--output-dir", dest="output_dir")
        p.add_argument("--set", action="append", metavar="SECTION.KEY=VALUE",
                       help="override any configuration key")

    p_run = sub.add_parser("run", help="execute an experiment")
    add_config_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_val = sub.add_parser("validate", help="check a configuration without running")
    add_config_flags(p_val)
    p_val.set_defaults(func=cmd_validate)

    p_oc = sub.add_parser("oracle-check",
                          help="compare the pipeline against the dense reference")
    p_oc.add_argument("--sizes", default="4,6,8", help="comma-separated even sizes")
    p_oc.add_argument("--draws", type=int, default=3, help="random draws per size")
    p_oc.add_argument("--tol", type=float, default=1e-6)
    p_oc.add_argument("--seed", type=int, default=1)
    p_oc.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OSError, IOError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
