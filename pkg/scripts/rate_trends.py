#!/usr/bin/env python3
"""Run the rate-trend experiments: rate vs swarm size (optimized against the
fixed 50 m baseline) and rate vs cluster radii with per-point deployment."""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from saris import config, experiments


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()

    root = pathlib.Path(__file__).resolve().parents[1]
    out_dir = pathlib.Path(args.out_dir)
    overrides = {"scenario.seed": str(args.seed), "scenario.trials": str(args.trials)}

    cfg = config.apply_settings(config.parse_file(root / "configs" / "rate_vs_uavs.cfg"))
    cfg = config.apply_settings(overrides, base=cfg)
    table = experiments.run_rate_vs_uavs(
        cfg.scenario, [1, 5, 10, 20], grid=cfg.grid, bf=cfg.bf, search_trials=cfg.search_trials
    )
    experiments.write_csv(
        out_dir / "rate_vs_uavs.csv", table.columns, table.rows,
        cfg.scenario.seed, config.digest(cfg),
    )

    cfg = config.apply_settings(config.parse_file(root / "configs" / "rate_vs_radius.cfg"))
    cfg = config.apply_settings(overrides, base=cfg)
    table = experiments.run_rate_vs_radius(
        cfg.scenario, [5.0, 25.0, 50.0], [50.0, 100.0, 150.0],
        grid=cfg.grid, bf=cfg.bf, search_trials=cfg.search_trials,
    )
    experiments.write_csv(
        out_dir / "rate_vs_radius.csv", table.columns, table.rows,
        cfg.scenario.seed, config.digest(cfg),
    )
    print(f"wrote {out_dir}/rate_vs_uavs.csv and {out_dir}/rate_vs_radius.csv")


if __name__ == "__main__":
    main()
