"""Command-line entry point for the Monte Carlo experiments.

Subcommands: deploy-map, rate-vs-uavs, rate-vs-radius, estimate.  Exit codes:
0 on success, 1 on configuration/usage errors, 2 on runtime errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import config, experiments

DEFAULT_OUT = {
    "deploy-map": "results/deploy_map.csv",
    "rate-vs-uavs": "results/rate_vs_uavs.csv",
    "rate-vs-radius": "results/rate_vs_radius.csv",
    "estimate": "results/estimation.csv",
}


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _int_list(raw: str) -> list[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}")


def _float_list(raw: str) -> list[float]:
    try:
        return [float(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {raw!r}")


def _snr_list(raw: str) -> list[float | None]:
    values: list[float | None] = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        if part == "data":
            values.append(None)
        elif part in ("inf", "+inf"):
            values.append(float("inf"))
        else:
            try:
                values.append(float(part))
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad pilot SNR value {part!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="saris", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="path to a key=value config file")
        p.add_argument("--seed", type=int, help="master seed override")
        p.add_argument("--trials", type=int, help="Monte Carlo trials override")
        p.add_argument("--out", help="output CSV path")

    p = sub.add_parser("deploy-map", help="mean channel power gain over the (x, z) grid")
    common(p)

    p = sub.add_parser("rate-vs-uavs", help="mean achievable rate versus swarm size")
    common(p)
    p.add_argument("--l-values", type=_int_list, default=[1, 5, 10, 20])
    p.add_argument(
        "--optimize", action=argparse.BooleanOptionalAction, default=True,
        help="grid-optimize the swarm center per point (default on)",
    )

    p = sub.add_parser("rate-vs-radius", help="mean achievable rate versus cluster radii")
    common(p)
    p.add_argument("--ra-values", type=_float_list, default=[5.0, 25.0, 50.0])
    p.add_argument("--ru-values", type=_float_list, default=[100.0])

    p = sub.add_parser("estimate", help="estimation overhead/accuracy sweep")
    common(p)
    p.add_argument("--n-groups", type=_int_list, default=None,
                   help="comma-separated sub-surface counts (default: est.n_groups)")
    p.add_argument("--pilot-snr-db", type=_snr_list, default=None,
                   help="comma-separated pilot SNRs in dB; 'inf' or 'data' allowed")
    return parser


def _load_config(ns) -> config.SimConfig:
    settings = config.parse_file(ns.config) if ns.config else {}
    cfg = config.apply_settings(settings)
    if ns.seed is not None:
        cfg.scenario = replace(cfg.scenario, seed=ns.seed)
    if ns.trials is not None:
        cfg.scenario = replace(cfg.scenario, trials=ns.trials)
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        cfg = _load_config(ns)
    except (config.ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    out = ns.out or DEFAULT_OUT[ns.command]
    sc = cfg.scenario
    digest = config.digest(cfg)
    try:
        if ns.command == "deploy-map":
            experiments.run_deploy_map(sc, cfg.grid, out_path=out, bf=cfg.bf, config_digest=digest)
        elif ns.command == "rate-vs-uavs":
            table = experiments.run_rate_vs_uavs(
                sc, ns.l_values, optimize_deployment=ns.optimize,
                grid=cfg.grid, bf=cfg.bf, search_trials=cfg.search_trials,
            )
            experiments.write_csv(out, table.columns, table.rows, sc.seed, digest)
        elif ns.command == "rate-vs-radius":
            table = experiments.run_rate_vs_radius(
                sc, ns.ra_values, ns.ru_values,
                grid=cfg.grid, bf=cfg.bf, search_trials=cfg.search_trials,
            )
            experiments.write_csv(out, table.columns, table.rows, sc.seed, digest)
        elif ns.command == "estimate":
            n_groups = ns.n_groups or [cfg.est_n_groups]
            snrs = ns.pilot_snr_db if ns.pilot_snr_db is not None else [cfg.est_pilot_snr_db]
            table = experiments.run_estimation_sweep(sc, n_groups, snrs, bf=cfg.bf)
            experiments.write_csv(out, table.columns, table.rows, sc.seed, digest)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - boundary: report and signal failure
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
