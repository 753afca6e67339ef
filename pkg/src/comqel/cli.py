"""Command-line sweep runner: YAML config plus overriding flags, CSV out.

Precedence is flags over config file over built-in defaults. The sweep
writes one CSV plus a metadata JSON next to it, prints a quantile summary,
and exits 0 only if every run completed; aborted runs give exit 1, bad
usage exit 2.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from .experiments import (
    ANSATZE,
    METHODS,
    ExperimentConfig,
    format_summary,
    run_experiment,
    summarize,
    write_csv,
    write_metadata,
)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="comqel-experiments",
        description="Run conservative surrogate-optimization sweeps and write results as CSV.",
    )
    p.add_argument("--config", type=Path, help="YAML config file; flags override its values")
    p.add_argument("--task", choices=("cosine2d", "ackley1d", "structured3d"))
    p.add_argument(
        "--method",
        action="append",
        metavar="NAME",
        help=f"method to run, repeatable or comma-separated; choices: {', '.join(METHODS)}",
    )
    p.add_argument("--ansatz", choices=ANSATZE)
    p.add_argument(
        "--tau",
        action="append",
        metavar="VALUE",
        help="conservatism slack, repeatable or comma-separated",
    )
    p.add_argument("--n-points", type=int, metavar="N", help="dataset size per seed")
    p.add_argument("--seeds", type=int, metavar="K", help="number of dataset seeds")
    p.add_argument("--seed0", type=int, metavar="S", help="first dataset seed (default 0)")
    p.add_argument("--epochs", type=int)
    p.add_argument("--out", type=Path, metavar="CSV", help="results path; metadata JSON lands beside it")
    p.add_argument("--progress", action="store_true", help="log per-run progress to stderr")
    p.add_argument(
        "--squared-rosenbrock",
        action="store_true",
        help="use the squared first term in the structured task's Rosenbrock part",
    )
    return p


def _split_list(raw: list[str] | None) -> list[str] | None:
    if raw is None:
        return None
    return [item for chunk in raw for item in chunk.split(",") if item]


def resolve_config(args: argparse.Namespace) -> tuple[ExperimentConfig, Path]:
    cfg: dict = {}
    if args.config is not None:
        loaded = yaml.safe_load(args.config.read_text())
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ValueError(f"config file {args.config} must hold a mapping")
        cfg.update(loaded)

    methods = _split_list(args.method)
    if methods is not None:
        cfg["methods"] = methods
    taus = _split_list(args.tau)
    if taus is not None:
        cfg["taus"] = [float(t) for t in taus]
    if args.task is not None:
        cfg["task"] = args.task
    if args.ansatz is not None:
        cfg["ansatz"] = args.ansatz
    if args.n_points is not None:
        cfg["n_points"] = args.n_points
    if args.seeds is not None:
        cfg["n_seeds"] = args.seeds
    if args.seed0 is not None:
        cfg["seed0"] = args.seed0
    if args.epochs is not None:
        cfg["epochs"] = args.epochs
    if args.out is not None:
        cfg["out"] = str(args.out)
    if args.squared_rosenbrock:
        cfg["squared_rosenbrock"] = True

    if "task" not in cfg:
        raise ValueError("no task given; use --task or a config file")
    config = ExperimentConfig.from_dict(cfg)
    if config.out is None:
        raise ValueError("no output path given; use --out or set 'out' in the config file")
    return config, Path(config.out)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config, out = resolve_config(args)
    except (ValueError, OSError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    result = run_experiment(config, progress=args.progress)
    write_csv(out, result)
    write_metadata(out.with_suffix(out.suffix + ".meta.json"), result)

    print(f"wrote {len(result.runs)} runs to {out}")
    if result.runs:
        print(format_summary(summarize(result)))
    if result.errors:
        print(f"{len(result.errors)} run(s) aborted; see metadata for details", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
