"""Command line entry point: ``antlion-fs {run,oracle,report}``.

Exit codes: 0 success, 1 configuration error, 2 dataset error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from ..algorithms import ALGORITHMS
from ..dataset import load_dataset, stratified_folds
from ..exceptions import ConfigError, DatasetError
from ..fitness import FitnessWeights
from .experiment import ExperimentConfig, mask_to_bits, run_experiment, run_single
from .oracle import oracle_search
from .report import emit_reports, record_line, report_from_log

EXIT_OK, EXIT_CONFIG, EXIT_DATASET = 0, 1, 2

log = logging.getLogger("antlion_fs")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--has-header", action="store_true", help="skip the first CSV row")
    p.add_argument("--k-cv", type=int, default=10, help="cross-validation folds (default 10)")
    p.add_argument("--k-neighbors", type=int, default=5, help="KNN neighbours (default 5)")
    p.add_argument("--alpha", type=float, default=0.99, help="error weight in the fitness (default 0.99)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antlion-fs", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a full experiment or a single seeded run")
    run.add_argument("--config", help="YAML experiment config")
    run.add_argument("--dataset", help="CSV file for a single run")
    run.add_argument("--algo", choices=ALGORITHMS, help="algorithm for a single run")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--population", type=int, default=8)
    run.add_argument("--iterations", type=int, default=70)
    run.add_argument("--holdout", action="store_true",
                     help="report accuracy on a held-out fold instead of the selection folds")
    run.add_argument("--jobs", type=int, help="worker processes (overrides the config)")
    run.add_argument("--out", help="output directory (overrides the config)")
    _add_common(run)

    oracle = sub.add_parser("oracle", help="exhaustive search over all feature subsets")
    oracle.add_argument("--dataset", required=True)
    oracle.add_argument("--seed", type=int, default=0, help="seed for the fold assignment")
    _add_common(oracle)

    report = sub.add_parser("report", help="re-aggregate a per-run log")
    report.add_argument("--from", dest="source", required=True, help="runs.jsonl written by `run`")
    report.add_argument("--out", help="output directory (default: next to the log)")
    return parser


def _cmd_run(args) -> int:
    if args.config:
        cfg = ExperimentConfig.from_file(args.config)
        if args.jobs:
            cfg.jobs = args.jobs
        if args.out:
            cfg.output_dir = args.out
        table = run_experiment(cfg)
        for path in emit_reports(table, cfg.output_dir):
            print(path)
        return EXIT_OK

    if not (args.dataset and args.algo):
        raise ConfigError("run needs either --config or both --dataset and --algo")
    cfg = ExperimentConfig(algorithms=[args.algo], runs=1, population=args.population,
                           iterations=args.iterations, k_cv=args.k_cv, k_neighbors=args.k_neighbors,
                           alpha=args.alpha, base_seed=args.seed, holdout=args.holdout)
    ds = load_dataset(args.dataset, has_header=args.has_header)
    record = run_single(ds, args.algo, args.seed, cfg)
    line = record_line(record)
    print(line)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with (out / "runs.jsonl").open("a") as fh:
            fh.write(line + "\n")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    ds = load_dataset(args.dataset, has_header=args.has_header)
    try:
        plan = stratified_folds(ds, args.k_cv, np.random.default_rng(args.seed))
        weights = FitnessWeights(args.alpha)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        mask, fit = oracle_search(ds, plan, weights, args.k_neighbors)
    except ValueError as exc:
        raise DatasetError(str(exc)) from exc
    print(json.dumps({
        "dataset": ds.name,
        "seed": args.seed,
        "mask": mask_to_bits(mask),
        "fitness": fit.value,
        "error_rate": fit.error_rate,
        "accuracy": fit.accuracy,
        "subset_size": fit.subset_size,
        "subsets_evaluated": 2**ds.n_features - 1,
    }, sort_keys=True))
    return EXIT_OK


def _cmd_report(args) -> int:
    source = Path(args.source)
    if not source.is_file():
        raise ConfigError(f"run log not found: {source}")
    table = report_from_log(source)
    if not table.rows:
        raise ConfigError(f"{source} holds no run records")
    for path in emit_reports(table, args.out or source.parent):
        print(path)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"run": _cmd_run, "oracle": _cmd_oracle, "report": _cmd_report}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except DatasetError as exc:
        log.error("%s", exc)
        return EXIT_DATASET


if __name__ == "__main__":
    sys.exit(main())
