#!/usr/bin/env python3
"""Produce the swarm-deployment gain surface CSV for the default scenario.

Equivalent to `saris deploy-map --config configs/deployment_map.cfg`.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from saris import config, experiments


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--out", default="results/deploy_map.csv")
    args = ap.parse_args()

    cfg_path = pathlib.Path(__file__).resolve().parents[1] / "configs" / "deployment_map.cfg"
    cfg = config.apply_settings(config.parse_file(cfg_path))
    cfg = config.apply_settings(
        {"scenario.seed": str(args.seed), "scenario.trials": str(args.trials)}, base=cfg
    )
    gm = experiments.run_deploy_map(
        cfg.scenario, cfg.grid, out_path=args.out, bf=cfg.bf, config_digest=config.digest(cfg)
    )
    print(f"wrote {args.out} ({gm.mean_gain_db.size} cells)")


if __name__ == "__main__":
    main()
