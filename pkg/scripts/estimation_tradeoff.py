#!/usr/bin/env python3
"""Sweep the sub-surface count and pilot SNR to map the estimation
overhead / achieved-rate trade-off."""

import argparse
import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from saris import config, experiments


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--out", default="results/estimation.csv")
    args = ap.parse_args()

    root = pathlib.Path(__file__).resolve().parents[1]
    cfg = config.apply_settings(config.parse_file(root / "configs" / "estimation.cfg"))
    cfg = config.apply_settings(
        {"scenario.seed": str(args.seed), "scenario.trials": str(args.trials)}, base=cfg
    )
    table = experiments.run_estimation_sweep(
        cfg.scenario, [1, 10, 40, 200], [0.0, 10.0, 20.0, 30.0, math.inf], bf=cfg.bf
    )
    experiments.write_csv(
        args.out, table.columns, table.rows, cfg.scenario.seed, config.digest(cfg)
    )
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
