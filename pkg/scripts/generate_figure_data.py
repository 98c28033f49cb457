#!/usr/bin/env python3
"""Produce the CSV/JSON inputs for the figure tool by driving the CLI.

Writes one directory per figure under the output root (default ./figdata):

  fig2/  rate functions, global quenches at h = 1.2 and 2.5
  fig3/  steady-state profiles and finite-size sweep in the ordered phase
  fig4/  same in the disordered phase
  fig5/  local-quench pairs at alpha = 1.5 and 3.0
  fig6/  rate functions for local quenches at alpha in {0.5, 1, 3}

Runtime is dominated by the N = 200 profiles; expect a few minutes.
"""

import argparse
import sys
import time

from lrquench.cli import main as cli_main


def run(args: list[str]) -> None:
    t0 = time.time()
    code = cli_main(args)
    if code != 0:
        raise SystemExit(f"command failed ({code}): {' '.join(args)}")
    print(f"  done in {time.time() - t0:.1f} s: {' '.join(args[:6])} ...")


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="figdata")
    parser.add_argument("--size", type=int, default=200, help="profile lattice size")
    parser.add_argument("--rate-size", type=int, default=512)
    args = parser.parse_args()
    out = args.out
    N = str(args.size)
    NR = str(args.rate_size)

    # fig2: global quenches, rate function
    for h in ("1.2", "2.5"):
        for af in ("1.5", "3.0"):
            run([
                "run", "--kind", "rate_function", "--size", NR,
                "--h-initial", h, "--h-final", h,
                "--alpha-initial", "0.5", "--alpha-final", af,
                "--t-max", "20.0",
                "--output-dir", f"{out}/fig2",
                "--set", f"experiment.label=rate_h{h}_a{af}",
            ])

    # fig3 / fig4: steady-state profiles + finite-size sweeps
    for fig, h in (("fig3", "0.5"), ("fig4", "2.5")):
        for af in ("0.8", "1.5", "3.0"):
            run([
                "run", "--kind", "tc_profile", "--size", N,
                "--h-initial", h, "--h-final", h,
                "--alpha-initial", "0.5", "--alpha-final", af,
                "--output-dir", f"{out}/{fig}",
                "--set", f"experiment.label=profile_h{h}_a{af}",
            ])
        for n_sub in ("50", "100", "200"):
            run([
                "run", "--kind", "tc_profile", "--size", n_sub,
                "--h-initial", h, "--h-final", h,
                "--alpha-initial", "0.5", "--alpha-final", "0.8",
                "--output-dir", f"{out}/{fig}",
                "--set", f"experiment.label=profile_h{h}_a0.8_N{n_sub}",
            ])
        sizes = "50,100,150,200,250,300" if h == "0.5" else \
            "50,100,150,200,250,300,350,400,450,500"
        run([
            "run", "--kind", "finite_size_sweep",
            "--h-initial", h, "--h-final", h,
            "--alpha-initial", "0.5", "--alpha-final", "0.8",
            "--output-dir", f"{out}/{fig}",
            "--set", f"finite_size_sweep.sizes={sizes}",
            "--set", "experiment.label=sweep",
        ])

    # fig5: local-quench pairs (narrow inconclusive band so both complete)
    for alpha in ("1.5", "3.0"):
        run([
            "run", "--kind", "fgc", "--size", N,
            "--h-initial", "0.5", "--alpha-final", alpha,
            "--alpha-initial", alpha,
            "--output-dir", f"{out}/fig5",
            "--set", "fit.margin_threshold=0.01",
            "--set", f"experiment.label=fgc_a{alpha}",
        ])

    # fig6: local quenches, rate function
    for alpha in ("0.5", "1.0", "3.0"):
        for hf in ("1.5", "2.5"):
            run([
                "run", "--kind", "rate_function", "--size", NR,
                "--h-initial", "0.5", "--h-final", hf,
                "--alpha-initial", alpha, "--alpha-final", alpha,
                "--t-max", "20.0",
                "--output-dir", f"{out}/fig6",
                "--set", f"experiment.label=rate_a{alpha}_h{hf}",
            ])

    print(f"figure inputs written under {out}/")


if __name__ == "__main__":
    sys.exit(main())
