"""Command-line interface: single runs, the five-attack batch comparison,
and the controller gain-bound calculator."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import (
    SUITE_LABELS,
    ConfigError,
    ScenarioConfig,
    default_values,
    five_attacks_suite,
    load_scenario,
)
from .engine import compute_metrics, run_scenario
from .friction import FrictionModel
from .policies import min_gain_lumped, min_gain_vanishing
from .scenario_io import build_manifest, write_csv, write_manifest

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INTEGRATION = 2


def _load(config_path: str | None) -> ScenarioConfig:
    if config_path is None:
        return ScenarioConfig(default_values())
    return load_scenario(config_path)


def _run_and_write(name: str, cfg: ScenarioConfig, outdir: Path, backend):
    scenario = cfg.build()
    result = run_scenario(scenario, backend=backend)
    metrics = compute_metrics(result)
    csv_path = write_csv(result, outdir / f"{name}.csv")
    label = SUITE_LABELS.get(name, name)
    manifest = build_manifest(result, cfg.as_dict(), label, csv_path, metrics)
    write_manifest(manifest, outdir / f"{name}.manifest.json")
    return result, metrics


def cmd_run(args) -> int:
    cfg = _load(args.config)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    name = Path(args.config).stem if args.config else "scenario"
    result, metrics = _run_and_write(name, cfg, outdir, args.backend)
    if result.termination == "nonfinite":
        print(f"integration failure: {result.failure}", file=sys.stderr)
        return EXIT_INTEGRATION
    print(
        f"{name}: {len(result)} rows, termination={result.termination}, "
        f"time_to_lockup={metrics.time_to_lockup}, final_v={metrics.final_v:.3f}"
    )
    return EXIT_OK


def cmd_batch(args) -> int:
    if args.suite != "five-attacks":
        print(f"unknown suite {args.suite!r}", file=sys.stderr)
        return EXIT_CONFIG
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    suite = five_attacks_suite(args.road, dt=args.dt, t_max=args.t_max)
    summary_rows = []
    failed = False
    for name, cfg in suite:
        result, metrics = _run_and_write(name, cfg, outdir, args.backend)
        if result.termination == "nonfinite":
            print(f"{name}: integration failure: {result.failure}", file=sys.stderr)
            failed = True
        ttl = "-" if metrics.time_to_lockup is None else f"{metrics.time_to_lockup:.4f}"
        summary_rows.append(
            (name, result.termination, f"{max(result.lam):.4f}", ttl,
             f"{metrics.final_v:.2f}", f"{metrics.peak_torque_cmd:.2f}")
        )
    header = ("scenario", "termination", "max_slip", "time_to_lockup",
              "final_v", "peak_cmd")
    widths = [max(len(h), *(len(r[j]) for r in summary_rows))
              for j, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths))
              for row in summary_rows]
    summary = "\n".join(lines)
    print(summary)
    with open(outdir / "summary.txt", "w", encoding="utf-8") as fh:
        fh.write(summary + "\n")
    return EXIT_INTEGRATION if failed else EXIT_OK


def cmd_gains(args) -> int:
    cfg = _load(args.config)
    scenario = cfg.build()
    veh = scenario.vehicle
    adv = scenario.policy.adversary
    road = scenario.friction
    k_vanishing = min_gain_vanishing(
        veh, road.mu_max, adv.bound_v_assumed, adv.v_min_assumed
    )
    k_lumped = min_gain_lumped(
        veh,
        road.mu_max,
        adv.mu_hat.mu_max,
        adv.nu_hat,
        adv.bound_v_assumed,
        adv.bound_w_assumed,
        adv.v_min_assumed,
    )
    print(f"road mu_max          = {road.mu_max:.6f} at slip {road.lam_argmax:.6f}")
    print(f"assumed v_min        = {adv.v_min_assumed:.6f} m/s")
    print(f"k  (vanishing bound) >= {k_vanishing:.6f}  # smooth-variant gain")
    print(f"k_a (lumped bound)   >= {k_lumped:.6f}  # sign/exponential-variant gain")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lockup-sim",
        description="Quarter-car wheel-lockup brake-attack simulations",
    )
    parser.add_argument(
        "--backend",
        choices=("compiled", "python"),
        default=None,
        help="force a simulation backend (default: compiled when available)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single scenario")
    p_run.add_argument("--config", required=True, help="scenario file")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.set_defaults(func=cmd_run)

    p_batch = sub.add_parser("batch", help="run a scenario suite")
    p_batch.add_argument("--suite", default="five-attacks")
    p_batch.add_argument("--road", choices=("dry", "wet"), default="dry")
    p_batch.add_argument("--outdir", required=True)
    p_batch.add_argument("--dt", type=float, default=None,
                         help="override the integration step")
    p_batch.add_argument("--t-max", type=float, default=None,
                         help="override the time horizon")
    p_batch.set_defaults(func=cmd_batch)

    p_gains = sub.add_parser(
        "gains", help="print the analytic controller gain bounds"
    )
    p_gains.add_argument("--config", default=None, help="scenario file")
    p_gains.set_defaults(func=cmd_gains)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
