from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from src.exceptions import ExperimentConfigError
from src.models.exponent import TauExponent
from src.models.variational_model import VariationMode, optimize
from src.pipeline.experiments import (
    DistributionConfig,
    DistributionRun,
    ScalingConfig,
    ScalingRun,
    bootstrap_slope_gap,
    cv_trend,
    distribution_experiment,
    fit_log_log,
    load_run,
    median_below_mean,
    sample_count,
    sample_seed,
    save_run,
    scaling_experiment,
    statistic_slopes_bootstrap,
)
from src.motifs.catalog import parse_motif


def _distribution_run(n, counts):
    counts = np.asarray(counts, dtype=np.int64)
    return DistributionRun("triangle", Fraction(5, 2), n, 1, counts, pd.DataFrame())


@pytest.mark.parametrize("kwargs", [
    {"n_grid": [10, 20, 40], "samples": 30},
    {"n_grid": [10, 20, 20, 40], "samples": 30},
    {"n_grid": [1, 20, 30, 40], "samples": 30},
    {"n_grid": [10, 20, 30, 40], "samples": 5},
    {"n_grid": [10, 20, 30, 40], "samples": 30, "statistic": "mode"},
    {"n_grid": [10, 20, 30, 40], "samples": 30, "tau": "7/2"},
])
def test_scaling_config_rejects(kwargs):
    config = ScalingConfig(**{"motif": "triangle", "tau": "5/2", **kwargs})
    with pytest.raises(ExperimentConfigError):
        config.validate()


def test_median_runs_accept_few_samples():
    config = ScalingConfig("triangle", "5/2", [10, 20, 30, 40], samples=3, statistic="median")
    config.validate()
    assert config.tau == Fraction(5, 2)


def test_distribution_config_rejects():
    with pytest.raises(ExperimentConfigError):
        DistributionConfig("triangle", "5/2", [100], samples=10).validate()
    with pytest.raises(ExperimentConfigError):
        DistributionConfig("triangle", "5/2", [1], samples=1000).validate()


def test_sample_seeds_are_stable_and_distinct():
    assert sample_seed(42, 100, 0) == sample_seed(42, 100, 0)
    seeds = {sample_seed(42, n, s) for n in (100, 200) for s in range(5)}
    assert len(seeds) == 10


def test_sample_count_is_reproducible():
    wedge = parse_motif("wedge")
    first = sample_count(wedge, 300, Fraction(5, 2), 1.0, seed=3, sample=4)
    assert first == sample_count(wedge, 300, Fraction(5, 2), 1.0, seed=3, sample=4)
    assert first > 0


def test_fit_log_log_on_exact_power_laws():
    n = np.array([10, 100, 1000, 10_000])
    metrics = fit_log_log(n, 3 * n ** 0.75)
    assert metrics["slope"] == pytest.approx(0.75)
    assert metrics["r2"] == pytest.approx(1.0)
    corrected = fit_log_log(n, n ** 0.5 * np.log(n), log_power=1)
    assert corrected["slope"] == pytest.approx(0.5)


def test_fit_log_log_skips_zero_points():
    metrics = fit_log_log([10, 100, 1000], [0.0, 100.0, 1000.0])
    assert metrics["slope"] == pytest.approx(1.0)
    assert np.isnan(fit_log_log([10, 100], [0.0, 5.0])["slope"])


def test_small_median_scaling_run():
    config = ScalingConfig("wedge", "5/2", [50, 100, 200, 400], samples=3, statistic="median", seed=5)
    run = scaling_experiment(config)
    assert list(run.counts) == [50, 100, 200, 400]
    assert len(run.to_frame()) == 12
    assert run.theory == optimize(parse_motif("wedge"), VariationMode.TYPICAL_MOTIF, "5/2").exponent
    assert run.counts[400][1] == sample_count(parse_motif("wedge"), 400, Fraction(5, 2), 1.0, 5, 1)
    summary = run.summary()
    assert summary["statistic"] == "median" and summary["tau"] == "5/2"
    assert summary["fitted_slope"] > 0


def test_bootstrap_slopes_on_constant_counts():
    config = ScalingConfig("triangle", Fraction(5, 2), [10, 20, 40, 80], samples=10, statistic="median")
    counts = {n: np.full(10, 3 * n, dtype=np.int64) for n in config.n_grid}
    run = ScalingRun(config, counts, {n: 3.0 * n for n in counts}, TauExponent(Fraction(9, 2), Fraction(-3, 2)))
    slopes = statistic_slopes_bootstrap(run, resamples=20, seed=1)
    assert len(slopes) == 20
    assert slopes["mean_slope"].to_numpy() == pytest.approx(np.ones(20))
    assert bootstrap_slope_gap(run, resamples=20, seed=1) == 0.0


def test_cv_trend_orders_by_n():
    runs = [_distribution_run(1000, [9, 10, 11]), _distribution_run(100, [5, 10, 15])]
    trend = cv_trend(runs)
    assert trend["n"].tolist() == [100, 1000]
    assert np.isnan(trend["ratio"].iloc[0])
    assert trend["ratio"].iloc[1] == pytest.approx(0.2)


def test_cv_is_nan_for_all_zero_counts():
    run = _distribution_run(100, [0, 0, 0])
    assert np.isnan(run.cv)
    assert run.normalized.tolist() == [0.0, 0.0, 0.0]


def test_median_below_mean_on_skewed_counts():
    run = _distribution_run(100, [1] * 90 + [100] * 10)
    assert median_below_mean(run, resamples=200, seed=2) > 0.99


def test_save_and_load_run(tmp_path):
    run = _distribution_run(100, [1, 2, 3])
    path = tmp_path / "runs" / "dist.joblib"
    save_run(run, path)
    loaded = load_run(path)
    assert loaded.n == 100 and loaded.counts.tolist() == [1, 2, 3]


@pytest.mark.slow
def test_distribution_experiment_histogram():
    runs = distribution_experiment(DistributionConfig("wedge", "5/2", [200], samples=1000, bins=20, seed=8))
    (run,) = runs
    assert len(run.counts) == 1000
    assert len(run.histogram) == 20
    widths = run.histogram["bin_hi"] - run.histogram["bin_lo"]
    assert float((run.histogram["density"] * widths).sum()) == pytest.approx(1.0)
    assert run.normalized.mean() == pytest.approx(1.0)


@pytest.mark.slow
def test_triangle_mean_slope_tracks_theory():
    config = ScalingConfig("triangle", "5/2", [500, 1000, 2000, 4000], samples=30, seed=11)
    run = scaling_experiment(config)
    assert run.theory_slope == pytest.approx(0.75)
    assert 0 < run.fitted_slope < 1.5


@pytest.mark.slow
def test_claw_mean_slope_exceeds_median_slope():
    config = ScalingConfig("claw", "11/5", [500, 1000, 2000, 4000, 8000], samples=60, seed=21)
    run = scaling_experiment(config)
    slopes = statistic_slopes_bootstrap(run, resamples=400, seed=3)
    # typical claw exponent 3/(tau - 1)
    assert float(slopes["median_slope"].median()) == pytest.approx(2.5, abs=0.35)
    assert bootstrap_slope_gap(run, resamples=400, seed=3) >= 0.9


@pytest.mark.slow
def test_self_averaging_triangle_cv_shrinks_with_n():
    runs = distribution_experiment(DistributionConfig("triangle", "11/5", [500, 4000], samples=1000, seed=4))
    trend = cv_trend(runs)
    assert trend["cv"].iloc[1] < trend["cv"].iloc[0]


@pytest.mark.slow
def test_hub_dominated_wedge_median_sits_below_mean():
    (run,) = distribution_experiment(DistributionConfig("wedge", "11/5", [1000], samples=1000, seed=6))
    assert run.median < run.mean
    assert median_below_mean(run, resamples=200, seed=1) > 0.99
