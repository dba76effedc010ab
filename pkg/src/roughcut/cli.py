"""Command-line pipeline: generate synthetic data, train/evaluate with either
discretizer, or compare both on one shared split.

Commands write machine-diffable JSON plus CSV curve data; every command is
deterministic given its flags and seed (timing fields aside).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from time import perf_counter

from . import synth
from .aco import AcoParams, optimize, write_history_csv
from .data import DecisionTable, SplitSpec, clip_outliers, load_csv, split, write_csv
from .discretize import CutSet, apply_cuts, cuts_to_json, efb_cuts
from .metrics import EvaluationReport, evaluate_pipeline, report_to_json, roc_to_csv
from .roughset import induce_rules, ruleset_to_json


@dataclass(frozen=True)
class RunConfig:
    """One experiment arm: data source, split, discretizer choice, and outputs."""

    data_path: Path | None
    synth_n: int | None
    profile_path: Path | None
    split_spec: SplitSpec
    discretizer: str
    num_cuts: int
    aco: AcoParams
    output_dir: Path
    workers: int
    clip: bool

    def __post_init__(self):
        if (self.data_path is None) == (self.synth_n is None):
            raise ValueError("exactly one data source required: --data or --synth-n")
        if self.data_path is not None and not self.data_path.is_file():
            raise ValueError(f"data file not found: {self.data_path}")
        if self.profile_path is not None and not self.profile_path.is_file():
            raise ValueError(f"profile file not found: {self.profile_path}")
        if self.discretizer not in ("efb", "aco", "both"):
            raise ValueError(f"unknown discretizer {self.discretizer!r}")
        if self.workers < 1:
            raise ValueError("workers must be positive")


def _load_table(config: RunConfig) -> DecisionTable:
    if config.data_path is not None:
        table = load_csv(config.data_path)
    else:
        profile = (
            synth.load_profile(config.profile_path)
            if config.profile_path
            else synth.default_profile()
        )
        table = synth.generate(profile, config.synth_n, config.split_spec.seed)
    if config.clip:
        table = clip_outliers(table)
    return table


def _train_arm(
    config: RunConfig, discretizer: str, train: DecisionTable, test: DecisionTable
) -> tuple[EvaluationReport, CutSet, list]:
    """Compute cuts with one discretizer, then evaluate; returns report, cuts, history."""
    history = []
    t0 = perf_counter()
    if discretizer == "efb":
        cuts = efb_cuts(train, config.num_cuts)
    else:
        def progress(stats):
            print(f"iteration {stats.iteration}: best_cost={stats.best_cost:.6f}", file=sys.stderr)

        best, history = optimize(train, config.aco, workers=config.workers, progress=progress)
        cuts = best.cuts
    cut_time = perf_counter() - t0
    report = evaluate_pipeline(train, test, cuts, cut_time_s=cut_time)
    return report, cuts, history


def _report_payload(report: EvaluationReport, discretizer: str, seed: int) -> dict:
    payload = {"discretizer": discretizer}
    payload.update(report_to_json(report))
    payload["seed"] = seed
    payload["cuts_file"] = "cuts.json"
    return payload


def _write_json(payload: dict, path: Path) -> None:
    with path.open("w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _comparison_text(reports: dict[str, EvaluationReport]) -> str:
    titles = {"efb": "Equal Frequency Bin", "aco": "Ant Colony Optimized"}
    lines = []
    for key in ("efb", "aco"):
        r = reports[key]
        m = r.matrix
        lines.append(titles[key])
        lines.append(
            f"{'':>4}{'PP':>8}{'PN':>8}{'AUC':>8}{'# of Rules':>12}"
            f"{'Train Time(s)':>15}{'Test Time(s)':>14}"
        )
        lines.append(
            f"{'AP':>4}{m.tp:>8}{m.fn:>8}{r.auc:>8.3f}{r.num_rules:>12}"
            f"{r.train_time_s:>15.3f}{r.test_time_s:>14.4f}"
        )
        lines.append(f"{'AN':>4}{m.fp:>8}{m.tn:>8}")
        lines.append("")
    return "\n".join(lines)


def cmd_generate(args) -> int:
    if args.n < synth.MIN_OBJECTS:
        raise ValueError(f"--n must be at least {synth.MIN_OBJECTS}")
    profile = synth.load_profile(args.profile) if args.profile else synth.default_profile()
    table = synth.generate(profile, args.n, args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_csv(table, out)
    healthy, faulty = table.class_counts()
    print(f"wrote {out}: {table.n_objects} objects, {healthy} healthy / {faulty} faulty")
    return 0


def _output_paths(out_dir: Path, names: list[str]) -> list[Path]:
    return [out_dir / name for name in names]


def cmd_run(config: RunConfig) -> int:
    table = _load_table(config)
    train, test = split(table, config.split_spec)
    report, cuts, history = _train_arm(config, config.discretizer, train, test)
    rules = induce_rules(apply_cuts(train, cuts))

    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    declared = ["report.json", "rules.json", "cuts.json", "roc.csv"]
    if config.discretizer == "aco":
        declared.append("convergence.csv")
    written: list[Path] = []
    try:
        for name, path in zip(declared, _output_paths(out, declared)):
            written.append(path)
            if name == "report.json":
                _write_json(_report_payload(report, config.discretizer, config.split_spec.seed), path)
            elif name == "rules.json":
                _write_json(ruleset_to_json(rules), path)
            elif name == "cuts.json":
                _write_json(cuts_to_json(cuts, train.attribute_names), path)
            elif name == "roc.csv":
                roc_to_csv(report.curve, path)
            elif name == "convergence.csv":
                write_history_csv(history, path)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    print(
        f"{config.discretizer}: accuracy={report.accuracy:.4f} auc={report.auc:.4f} "
        f"rules={report.num_rules} -> {out}"
    )
    return 0


def cmd_compare(config: RunConfig) -> int:
    table = _load_table(config)
    train, test = split(table, config.split_spec)  # one shared split for both arms

    reports: dict[str, EvaluationReport] = {}
    for arm in ("efb", "aco"):
        reports[arm], _, _ = _train_arm(config, arm, train, test)

    deltas = {
        "accuracy": reports["aco"].accuracy - reports["efb"].accuracy,
        "auc": reports["aco"].auc - reports["efb"].auc,
        "num_rules": reports["aco"].num_rules - reports["efb"].num_rules,
        "train_time_s": reports["aco"].train_time_s - reports["efb"].train_time_s,
    }
    payload = {
        "efb": _report_payload(reports["efb"], "efb", config.split_spec.seed),
        "aco": _report_payload(reports["aco"], "aco", config.split_spec.seed),
        "deltas": deltas,
        "test_objects": test.n_objects,
    }
    for arm in ("efb", "aco"):
        del payload[arm]["cuts_file"]  # compare does not persist per-arm cut files

    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    text = _comparison_text(reports)
    written = [out / "compare.json", out / "compare.txt"]
    try:
        _write_json(payload, written[0])
        written[1].write_text(text, encoding="utf-8")
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    print(text, end="")
    return 0


def _add_shared_flags(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--data", type=Path, help="CSV decision table (last column 'label')")
    source.add_argument("--synth-n", type=int, help="generate a synthetic table of this size")
    parser.add_argument("--profile", type=Path, help="gas profile JSON for synthetic data")
    parser.add_argument("--train-frac", type=float, default=0.7, help="training fraction (default 0.7)")
    parser.add_argument("--seed", type=int, default=0, help="seed for generation, split, and search (default 0)")
    parser.add_argument("--out", type=Path, required=True, help="output directory")
    parser.add_argument("--cuts", type=int, default=2, help="cuts per attribute (default 2)")
    parser.add_argument("--workers", type=int, default=max(os.cpu_count() or 1, 1),
                        help="worker threads for the ACO search (default: available parallelism)")
    parser.add_argument("--clip-outliers", action="store_true",
                        help="clip each attribute to its [0.5, 99.5] percentile range")
    parser.add_argument("--ants", type=int, default=10, help="ACO: number of ants (default 10)")
    parser.add_argument("--iters", type=int, default=100, help="ACO: iterations (default 100)")
    parser.add_argument("--alpha", type=float, default=0.09, help="ACO: pheromone exponent (default 0.09)")
    parser.add_argument("--beta", type=float, default=0.09, help="ACO: attractiveness exponent (default 0.09)")
    parser.add_argument("--rho", type=float, default=0.9, help="ACO: evaporation constant (default 0.9)")
    parser.add_argument("--q", type=float, default=1.0, help="ACO: deposit constant (default 1.0)")


def _config_from_args(args, discretizer: str) -> RunConfig:
    return RunConfig(
        data_path=args.data,
        synth_n=args.synth_n,
        profile_path=args.profile,
        split_spec=SplitSpec(train_fraction=args.train_frac, seed=args.seed),
        discretizer=discretizer,
        num_cuts=args.cuts,
        aco=AcoParams(
            num_ants=args.ants,
            num_iterations=args.iters,
            alpha=args.alpha,
            beta=args.beta,
            rho=args.rho,
            q_deposit=args.q,
            num_cuts=args.cuts,
            seed=args.seed,
        ),
        output_dir=args.out,
        workers=args.workers,
        clip=args.clip_outliers,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughcut",
        description="Rough-set rule induction with EFB or ant-colony-optimized discretization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic nine-gas CSV")
    gen.add_argument("--n", type=int, required=True, help="number of objects (>= 10)")
    gen.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    gen.add_argument("--profile", type=Path, help="gas profile JSON (default: packaged profile)")
    gen.add_argument("--out", type=Path, required=True, help="output CSV path")

    run = sub.add_parser("run", help="train and evaluate one discretizer")
    run.add_argument("--discretizer", choices=("efb", "aco"), required=True)
    _add_shared_flags(run)

    cmp_ = sub.add_parser("compare", help="run both discretizers on one shared split")
    _add_shared_flags(cmp_)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            return cmd_generate(args)
        if args.command == "run":
            return cmd_run(_config_from_args(args, args.discretizer))
        return cmd_compare(_config_from_args(args, "both"))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
