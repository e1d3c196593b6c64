"""Experiment matrix runner, aggregation, ablation, and report files.

A suite executes every (size, maze index, variant) cell exactly once.
Maze ``i`` of a size uses seed ``base_seed + i``; learning variants draw
their exploration stream from ``base_seed XOR RL_SEED_SALT``. The salt
depends only on the convergence mode, never on the base policy, so the
spiral and sentinel flavours of the learning agent share one stream and
stay step-for-step comparable.

Reports aggregate steps per (size, variant): mean, median, min, max,
population standard deviation, success rate, plus a histogram of the
coverage level at which switches happened and, for learning variants, a
histogram of selected thresholds. Every statistic is recomputable from
the episode record stream; aggregation happens in a fixed order, so the
report is identical whether episodes ran on one worker or many.

The primary metric is the step count: it is exact and hardware
independent, where wall-clock time is not. Wall-clock per episode is
logged as a secondary, non-asserted column.
"""

from __future__ import annotations

import csv
import json
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .episode import (
    EpisodeConfig,
    SUCCESS,
    VARIANT_ORDER,
    VARIANTS,
    run_episode,
    to_record,
)

RL_SEED_SALT = 0x51

DEFAULT_SIZES = (16, 32, 64)
LONG_SIZES = (16, 32, 64, 128)

CSV_HEADER = (
    "size",
    "variant",
    "mean_steps",
    "median_steps",
    "min_steps",
    "max_steps",
    "stddev",
    "success_rate",
)

ABLATION_VARIANTS = ("spiral", "spiral_conv", "spiral_rl")


@dataclass(frozen=True)
class SuiteConfig:
    sizes: tuple = DEFAULT_SIZES
    mazes_per_size: int = 10
    variants: tuple = VARIANT_ORDER
    base_seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.mazes_per_size < 1:
            raise ValueError("mazes_per_size must be at least 1")
        unknown = [v for v in self.variants if v not in VARIANTS]
        if unknown:
            raise ValueError(f"unknown variants: {unknown}")

    def to_dict(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "mazes_per_size": self.mazes_per_size,
            "variants": list(self.variants),
            "base_seed": self.base_seed,
            "jobs": self.jobs,
        }


@dataclass
class VariantRow:
    size: int
    variant: str
    mean_steps: float
    median_steps: float
    min_steps: int
    max_steps: int
    stddev: float
    success_rate: float
    switch_coverage_hist: list  # 10 decile bins of coverage at switch
    threshold_hist: dict  # threshold -> selection count, learning variants only

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "variant": self.variant,
            "mean_steps": self.mean_steps,
            "median_steps": self.median_steps,
            "min_steps": self.min_steps,
            "max_steps": self.max_steps,
            "stddev": self.stddev,
            "success_rate": self.success_rate,
            "switch_coverage_hist": self.switch_coverage_hist,
            "threshold_hist": {str(k): v for k, v in self.threshold_hist.items()},
        }


@dataclass
class SuiteReport:
    rows: list
    provenance: dict = field(default_factory=dict)

    def row(self, size: int, variant: str) -> VariantRow:
        for r in self.rows:
            if r.size == size and r.variant == variant:
                return r
        raise KeyError(f"no row for size {size}, variant {variant}")

    def to_dict(self) -> dict:
        return {
            "provenance": self.provenance,
            "rows": [r.to_dict() for r in self.rows],
        }


def rl_seed_for(suite: SuiteConfig, variant_name: str) -> int:
    variant = VARIANTS[variant_name]
    return suite.base_seed ^ RL_SEED_SALT if variant.convergence == "rl" else 0


def episode_configs(suite: SuiteConfig) -> list:
    """The full matrix, in the canonical (size, maze, variant) order."""
    configs = []
    for n in suite.sizes:
        for i in range(suite.mazes_per_size):
            for vname in suite.variants:
                configs.append(
                    EpisodeConfig(
                        n=n,
                        maze_seed=suite.base_seed + i,
                        variant=VARIANTS[vname],
                        rl_seed=rl_seed_for(suite, vname),
                    )
                )
    return configs


def run_suite(suite: SuiteConfig) -> tuple[SuiteReport, list]:
    """Execute the matrix and aggregate; returns (report, episode logs).

    Worker count changes wall-clock only: logs are collected in config
    order and reduced sequentially, so results match ``jobs=1`` exactly.
    """
    configs = episode_configs(suite)
    started = time.perf_counter()
    if suite.jobs > 1:
        with ProcessPoolExecutor(max_workers=suite.jobs) as pool:
            logs = list(pool.map(run_episode, configs, chunksize=4))
    else:
        logs = [run_episode(cfg) for cfg in configs]
    elapsed = time.perf_counter() - started

    report = SuiteReport(
        rows=aggregate(suite, logs),
        provenance={
            "config": suite.to_dict(),
            "version": __version__,
            "wall_clock_seconds": elapsed,  # informational, hardware-bound
        },
    )
    return report, logs


def aggregate(suite: SuiteConfig, logs: list) -> list:
    """Deterministic reduce of episode logs into per-(size, variant) rows."""
    by_cell = {}
    for log in logs:
        by_cell.setdefault((log.config.n, log.config.variant.name), []).append(log)

    rows = []
    for n in suite.sizes:
        for vname in suite.variants:
            cell = by_cell.get((n, vname), [])
            if not cell:
                continue
            steps = [log.total_steps for log in cell]
            hist = [0] * 10
            for log in cell:
                if log.switch_coverage is not None:
                    hist[min(int(log.switch_coverage // 10), 9)] += 1
            thresholds = {}
            if VARIANTS[vname].convergence == "rl":
                thresholds = {t: 0 for t in (20, 30, 40, 50, 60)}
                for log in cell:
                    for d in log.decisions:
                        thresholds[d.action] += 1
            rows.append(
                VariantRow(
                    size=n,
                    variant=vname,
                    mean_steps=statistics.fmean(steps),
                    median_steps=float(statistics.median(steps)),
                    min_steps=min(steps),
                    max_steps=max(steps),
                    stddev=statistics.pstdev(steps),
                    success_rate=100.0
                    * sum(log.outcome == SUCCESS for log in cell)
                    / len(cell),
                    switch_coverage_hist=hist,
                    threshold_hist=thresholds,
                )
            )
    return rows


def ablation(suite: SuiteConfig) -> tuple[list, list]:
    """Convergence ablation: none vs fixed vs learned threshold.

    Returns (rows, episode logs). Each row carries the mean steps and the
    percentage delta against the no-convergence baseline of its size.
    """
    missing = [v for v in ABLATION_VARIANTS if v not in suite.variants]
    if missing:
        raise ValueError(f"ablation needs variants {ABLATION_VARIANTS}, missing {missing}")
    run_cfg = SuiteConfig(
        sizes=suite.sizes,
        mazes_per_size=suite.mazes_per_size,
        variants=ABLATION_VARIANTS,
        base_seed=suite.base_seed,
        jobs=suite.jobs,
    )
    report, logs = run_suite(run_cfg)
    rows = []
    for n in run_cfg.sizes:
        baseline = report.row(n, "spiral").mean_steps
        for vname in ABLATION_VARIANTS:
            mean = report.row(n, vname).mean_steps
            rows.append(
                {
                    "size": n,
                    "variant": vname,
                    "mean_steps": mean,
                    "delta_pct": 0.0 if vname == "spiral" else 100.0 * (mean - baseline) / baseline,
                }
            )
    return rows, logs


def write_records(logs: list, path) -> None:
    """One JSON object per line, in suite order."""
    path = Path(path)
    try:
        with path.open("w") as fh:
            for log in logs:
                fh.write(json.dumps(to_record(log), sort_keys=True, separators=(",", ":")))
                fh.write("\n")
    except OSError as exc:
        raise RuntimeError(f"cannot write episode records to {path}") from exc


def read_records(path) -> list:
    path = Path(path)
    try:
        with path.open() as fh:
            return [json.loads(line) for line in fh if line.strip()]
    except OSError as exc:
        raise RuntimeError(f"cannot read episode records from {path}") from exc


def write_report_csv(report: SuiteReport, path) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for r in report.rows:
                writer.writerow(
                    [
                        r.size,
                        r.variant,
                        repr(r.mean_steps),
                        repr(r.median_steps),
                        r.min_steps,
                        r.max_steps,
                        repr(r.stddev),
                        repr(r.success_rate),
                    ]
                )
    except OSError as exc:
        raise RuntimeError(f"cannot write report CSV to {path}") from exc


def read_report_csv(path) -> list:
    """Rows as dicts with the same value types the report carries."""
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            reader = csv.DictReader(fh)
            if tuple(reader.fieldnames or ()) != CSV_HEADER:
                raise RuntimeError(f"unexpected CSV header in {path}")
            rows = []
            for rec in reader:
                rows.append(
                    {
                        "size": int(rec["size"]),
                        "variant": rec["variant"],
                        "mean_steps": float(rec["mean_steps"]),
                        "median_steps": float(rec["median_steps"]),
                        "min_steps": int(rec["min_steps"]),
                        "max_steps": int(rec["max_steps"]),
                        "stddev": float(rec["stddev"]),
                        "success_rate": float(rec["success_rate"]),
                    }
                )
            return rows
    except OSError as exc:
        raise RuntimeError(f"cannot read report CSV from {path}") from exc


def write_report_json(report: SuiteReport, path) -> None:
    path = Path(path)
    try:
        path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise RuntimeError(f"cannot write report JSON to {path}") from exc


def read_report_json(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise RuntimeError(f"cannot read report JSON from {path}") from exc


def report_emit(report: SuiteReport, fmt: str, path) -> None:
    if fmt == "csv":
        write_report_csv(report, path)
    elif fmt == "json":
        write_report_json(report, path)
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def format_report(report: SuiteReport) -> str:
    lines = [
        f"{'size':>5} {'variant':14} {'mean':>9} {'median':>9} {'min':>6} {'max':>6} "
        f"{'stddev':>9} {'success':>8}"
    ]
    for r in report.rows:
        lines.append(
            f"{r.size:>5} {r.variant:14} {r.mean_steps:>9.1f} {r.median_steps:>9.1f} "
            f"{r.min_steps:>6} {r.max_steps:>6} {r.stddev:>9.1f} {r.success_rate:>7.1f}%"
        )
    return "\n".join(lines)


def format_ablation(rows: list) -> str:
    lines = [f"{'size':>5} {'variant':14} {'mean steps':>11} {'vs baseline':>12}"]
    for row in rows:
        delta = "baseline" if row["variant"] == "spiral" else f"{row['delta_pct']:+.1f}%"
        lines.append(
            f"{row['size']:>5} {row['variant']:14} {row['mean_steps']:>11.1f} {delta:>12}"
        )
    return "\n".join(lines)
