"""Repeated runs of a generator with summary statistics and output files.

Run ``i`` of an experiment uses seed ``seed + i``.  Each run can be written
as a JSON report and a timeline CSV; the summary also merges all timelines
into one long-format CSV suitable for plotting coverage against time.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from walkgen.fitness import FitnessConfig
from walkgen.goals import extract_goals
from walkgen.search import SearchParams, SearchReport, random_test, walktest
from walkgen.validation import check_positive_int, check_program

ALGORITHMS = ("walktest", "random")
FORMATS = ("json", "csv")


@dataclass
class ExperimentConfig:
    program: object  # benchmark name, path, source or ProgramModel
    algorithm: str = "walktest"
    reps: int = 100
    seed: int = 0
    params: SearchParams = field(default_factory=SearchParams)
    random_cases: int = 10_000_000
    out: str | Path | None = None
    formats: tuple = FORMATS
    jobs: int = 1

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        check_positive_int(self.reps, "reps")
        check_positive_int(self.random_cases, "random_cases")
        check_positive_int(self.jobs, "jobs")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        unknown = set(self.formats) - set(FORMATS)
        if unknown:
            raise ValueError(f"unknown output format(s): {', '.join(sorted(unknown))}")
        if self.out is not None and Path(self.out).exists() and not Path(self.out).is_dir():
            raise ValueError(f"output path {self.out} exists and is not a directory")


def reduction_columns(walk_avg: float, base_avg: float) -> float | None:
    """Percentage of the baseline's average time saved; ``None`` for a zero baseline."""
    if not base_avg:
        return None
    return (1 - walk_avg / base_avg) * 100


def _run_one(model, algorithm: str, params: SearchParams, random_cases: int, seed: int) -> SearchReport:
    goals = extract_goals(model)
    if algorithm == "walktest":
        return walktest(model, goals, replace(params, seed=seed))
    cfg = FitnessConfig(params.k, params.combinator)
    return random_test(model, goals, n=random_cases, seed=seed, cfg=cfg, loop_budget=params.loop_budget)


def summarize(reports: list[SearchReport]) -> dict:
    """Aggregate statistics, computed only from fields present in the JSON reports plus wall time."""
    reports = sorted(reports, key=lambda r: r.seed)
    coverages = [r.coverage for r in reports]
    times = [r.wall_time for r in reports]
    evals = [r.evaluations for r in reports]
    to_full = [r.evaluations_to_full_coverage() for r in reports]
    reached = [e for e in to_full if e is not None]
    uncovered = sorted({g for r in reports for g in r.uncovered})
    return {
        "program": reports[0].program,
        "algorithm": reports[0].algorithm,
        "reps": len(reports),
        "seeds": [r.seed for r in reports],
        "n_goals": reports[0].n_goals,
        "coverage_pct": 100 * statistics.mean(coverages),
        "min_coverage_pct": 100 * min(coverages),
        "full_coverage_runs": sum(c == 1 for c in coverages),
        "avg_time_s": statistics.mean(times),
        "max_time_s": max(times),
        "avg_evaluations": statistics.mean(evals),
        "median_evaluations_to_full": statistics.median(reached) if reached else None,
        "uncovered_goals": uncovered,
    }


def merged_timeline_csv(reports: list[SearchReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["seed", "elapsed_ms", "evaluations", "covered", "coverage_pct"])
    for r in sorted(reports, key=lambda r: r.seed):
        rows = csv.reader(io.StringIO(r.timeline_csv()))
        next(rows)
        for row in rows:
            writer.writerow([r.seed, *row])
    return buf.getvalue()


def _write_outputs(cfg: ExperimentConfig, reports: list[SearchReport], summary: dict) -> list[Path]:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{summary['program']}-{summary['algorithm']}"
    written = []
    for r in reports:
        base = out / f"{stem}-seed{r.seed}"
        if "json" in cfg.formats:
            path = base.with_suffix(".json")
            path.write_text(r.to_json() + "\n", encoding="utf-8")
            written.append(path)
        if "csv" in cfg.formats:
            path = base.with_suffix(".csv")
            path.write_text(r.timeline_csv(), encoding="utf-8")
            written.append(path)
    if "json" in cfg.formats:
        path = out / f"{stem}-summary.json"
        path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        written.append(path)
    if "csv" in cfg.formats:
        path = out / f"{stem}-timeline.csv"
        path.write_text(merged_timeline_csv(reports), encoding="utf-8")
        written.append(path)
    return written


def run_experiment(cfg: ExperimentConfig) -> tuple[dict, list[SearchReport]]:
    """Run ``cfg.reps`` seeded repetitions; returns the summary and the per-run reports."""
    cfg.validate()
    model = check_program(cfg.program)
    seeds = [cfg.seed + i for i in range(cfg.reps)]
    args = [(model, cfg.algorithm, cfg.params, cfg.random_cases, s) for s in seeds]
    if cfg.jobs > 1 and cfg.reps > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_run_one, *zip(*args)))
    else:
        reports = [_run_one(*a) for a in args]
    summary = summarize(reports)
    summary["params"] = asdict(cfg.params) if cfg.algorithm == "walktest" else {
        "n": cfg.random_cases,
        "loop_budget": cfg.params.loop_budget,
    }
    if cfg.out is not None:
        summary["files"] = [str(p) for p in _write_outputs(cfg, reports, summary)]
    return summary, reports

