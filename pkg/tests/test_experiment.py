import csv
import json

import pytest

from walkgen.experiment import ExperimentConfig, reduction_columns, run_experiment, summarize
from walkgen.search import SearchParams


def test_reduction_against_random_for_tri_int():
    assert round(reduction_columns(0.80, 298), 2) == 99.73


def test_reduction_for_line_rect_at_higher_precision():
    assert round(reduction_columns(20.72, 1250), 2) == 98.34


def test_reduction_with_equal_times_is_zero():
    assert reduction_columns(5.0, 5.0) == 0


def test_reduction_with_zero_baseline_is_blank():
    assert reduction_columns(1.0, 0) is None


def test_experiment_writes_reports_and_summary(tmp_path):
    cfg = ExperimentConfig("tri-int", reps=3, seed=10, out=tmp_path)
    summary, reports = run_experiment(cfg)
    assert summary["seeds"] == [10, 11, 12]
    assert summary["coverage_pct"] == 100.0
    assert summary["full_coverage_runs"] == 3
    assert summary["max_time_s"] >= summary["avg_time_s"] > 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert "tri-int-walktest-seed11.json" in names
    assert "tri-int-walktest-summary.json" in names
    assert "tri-int-walktest-timeline.csv" in names
    saved = json.loads((tmp_path / "tri-int-walktest-seed11.json").read_text())
    assert saved["seed"] == 11 and saved["coverage"] == 1.0
    rows = list(csv.DictReader((tmp_path / "tri-int-walktest-timeline.csv").open()))
    assert {r["seed"] for r in rows} == {"10", "11", "12"}
    assert set(rows[0]) == {"seed", "elapsed_ms", "evaluations", "covered", "coverage_pct"}


def test_summary_is_recomputable_from_reports():
    cfg = ExperimentConfig("tri-real", reps=2, params=SearchParams(r=3))
    summary, reports = run_experiment(cfg)
    again = summarize(list(reversed(reports)))
    for key, value in again.items():
        assert summary[key] == value


def test_parallel_runs_match_sequential():
    seq, _ = run_experiment(ExperimentConfig("tri-int", reps=2, seed=4))
    par, _ = run_experiment(ExperimentConfig("tri-int", reps=2, seed=4, jobs=2))
    assert seq["avg_evaluations"] == par["avg_evaluations"]
    assert seq["median_evaluations_to_full"] == par["median_evaluations_to_full"]


def test_random_experiment_lists_uncovered_goals():
    summary, _ = run_experiment(ExperimentConfig("tri-int", algorithm="random", reps=1, random_cases=30_000))
    assert 20 in summary["uncovered_goals"]
    assert summary["coverage_pct"] < 70
    assert summary["params"]["n"] == 30_000


@pytest.mark.parametrize(
    "kwargs",
    [{"algorithm": "tabu"}, {"reps": 0}, {"formats": ("xml",)}, {"seed": -2}, {"program": "nope"}],
)
def test_invalid_configs(kwargs):
    cfg = ExperimentConfig(**{"program": "tri-int", **kwargs})
    with pytest.raises(ValueError):
        run_experiment(cfg)


def test_output_path_must_be_a_directory(tmp_path):
    target = tmp_path / "file.txt"
    target.write_text("x")
    with pytest.raises(ValueError, match="not a directory"):
        run_experiment(ExperimentConfig("tri-int", reps=1, out=target))
