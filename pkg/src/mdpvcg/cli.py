"""Command line entry point.

Subcommands:
  offline-vcg      solve the offline mechanism for a model file
  simulate         run the online learning experiment from a config file
  calibrate-delta  shrink-size calibration for a model file

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .harness import ExperimentConfig, export, run_offline, run_online
from .mdp import load_model
from .offline import BidProfile
from .online import ConfigurationError
from .polytope import calibrate_delta


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdpvcg",
        description="Average-reward MDP auctions: offline VCG and online learning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    off = sub.add_parser("offline-vcg", help="solve the offline mechanism")
    off.add_argument("--model", required=True, help="model JSON file")
    off.add_argument("--bids", help="bid tables JSON [n][S][A]; default truthful")
    off.add_argument("--out", required=True, help="output JSON file")
    off.add_argument("--sim-rounds", type=int, default=100_000,
                     help="rollout length for the empirical cross-check")

    simp = sub.add_parser("simulate", help="run the online experiment")
    simp.add_argument("--config", required=True, help="experiment config JSON")
    group = simp.add_mutually_exclusive_group()
    group.add_argument("--seeds", type=int, help="use seeds 0..n-1")
    group.add_argument("--seed-list", type=int, nargs="+", help="explicit seeds")
    simp.add_argument("--horizon", type=int, help="override the horizon")
    simp.add_argument("--out", help="output directory (overrides config)")
    simp.add_argument("--format", choices=("csv", "json"), help="output format")
    simp.add_argument("--record-rounds", action="store_true",
                      help="write per-round CSVs (large for long horizons)")

    cal = sub.add_parser("calibrate-delta", help="calibrate the shrink size")
    cal.add_argument("--model", required=True, help="model JSON file")
    cal.add_argument("--epsilon", type=float, required=True,
                     help="acceptable welfare loss from shrinking")
    return parser


def _cmd_offline(args) -> int:
    model = load_model(args.model)
    bids = None
    if args.bids:
        bids = BidProfile(np.array(json.loads(Path(args.bids).read_text())))
    config = ExperimentConfig(model_file=args.model)
    out = run_offline(config, bids=bids, sim_rounds=args.sim_rounds)
    out.pop("mechanism")
    Path(args.out).write_text(json.dumps(out, indent=1, sort_keys=True))
    print(f"wrote {args.out} (welfare {out['welfare']:.6f}, "
          f"identity residual {out['identity_residual']:.2e})")
    return 0


def _cmd_simulate(args) -> int:
    doc = json.loads(Path(args.config).read_text())
    config = ExperimentConfig.from_dict(doc)
    updates = {}
    if args.seeds is not None:
        updates["seeds"] = tuple(range(args.seeds))
    if args.seed_list is not None:
        updates["seeds"] = tuple(args.seed_list)
    if args.horizon is not None:
        updates["horizon"] = args.horizon
        updates["episodes"] = None
    if args.out is not None:
        updates["out"] = args.out
    if args.format is not None:
        updates["format"] = args.format
    if updates:
        config = replace(config, **updates)
    result = run_online(config, record_rounds=args.record_rounds)
    paths = export(result, config.out)
    final = result.report.mean_reg_sw[-1]
    t_final = result.report.checkpoints[-1]
    print(f"config {result.config_hash}: {len(config.seeds)} seed(s), T={t_final}, "
          f"mean Reg_SW(T)/T = {final / t_final:.5f}")
    for p in paths:
        print(f"wrote {p}")
    return 0


def _cmd_calibrate(args) -> int:
    model = load_model(args.model)
    objective = model.reward_means.sum(axis=0)
    delta = calibrate_delta(model, objective, args.epsilon)
    print(json.dumps({"delta": delta, "epsilon": args.epsilon}))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "offline-vcg":
            return _cmd_offline(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        return _cmd_calibrate(args)
    except (ValueError, KeyError, json.JSONDecodeError, ConfigurationError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    except (OSError, RuntimeError, np.linalg.LinAlgError) as e:
        print(f"runtime error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
