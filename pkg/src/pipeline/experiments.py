# src/pipeline/experiments.py
"""
Monte Carlo experiments on hidden-variable graphs.

Scaling: sample graphs over a grid of n, take the mean (free prediction) or
the median (typical prediction) of a motif count at every n, and fit
log(stat) - log_power * log(log n) against log n.

Distribution: many samples at a few sizes; the normalized count
N / mean(N) has a coefficient of variation that shrinks with n only when the
motif is self-averaging.

Every sample is seeded from (seed, n, sample index), so a run is
reproducible regardless of thread count.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import joblib
import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from sklearn.linear_model import LinearRegression
from sklearn.metrics import r2_score

from src.config import (
    BOOTSTRAP_RESAMPLES,
    DEFAULT_H_MIN,
    DEFAULT_SEED,
    HISTOGRAM_BINS,
    MIN_DISTRIBUTION_SAMPLES,
    MIN_GRID_POINTS,
    MIN_MEAN_SAMPLES,
    resolve_threads,
)
from src.counting.subgraph_counter import count
from src.exceptions import ExperimentConfigError, TauError
from src.models.exponent import TauExponent, TauLike, parse_tau
from src.models.hidden_variable_model import ModelParams, sample_hidden_variable_graph
from src.models.variational_model import VariationMode, optimize
from src.motifs.catalog import display_name, parse_motif
from src.motifs.graph import SmallGraph

logger = logging.getLogger(__name__)

STATISTICS = ("mean", "median")


def sample_seed(seed: int, n: int, sample: int) -> int:
    """64-bit seed for one sample, derived from (seed, n, sample)."""
    state = np.random.SeedSequence([int(seed), int(n), int(sample)]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def sample_count(
    motif: SmallGraph,
    n: int,
    tau: Fraction,
    h_min: float,
    seed: int,
    sample: int,
    induced: bool = False,
) -> int:
    """Count of motif in one hidden-variable sample."""
    params = ModelParams.from_tau(n, tau, h_min=h_min, seed=sample_seed(seed, n, sample))
    g = sample_hidden_variable_graph(params, threads=1)
    value = count(g, motif, induced, threads=1).count
    logger.debug("n=%d sample=%d count=%d", n, sample, value)
    return value


def _sample_counts(
    motif: SmallGraph, n: int, tau: Fraction, h_min: float, seed: int, samples: int, induced: bool, n_jobs: int
) -> np.ndarray:
    if n_jobs > 1:
        values = Parallel(n_jobs=n_jobs)(
            delayed(sample_count)(motif, n, tau, h_min, seed, s, induced) for s in range(samples)
        )
    else:
        values = [sample_count(motif, n, tau, h_min, seed, s, induced) for s in range(samples)]
    return np.array(values, dtype=np.int64)


@dataclass
class ScalingConfig:
    motif: str
    tau: Fraction
    n_grid: List[int]
    samples: int
    statistic: str = "mean"  # "mean" (free prediction) or "median" (typical)
    induced: bool = False
    h_min: float = DEFAULT_H_MIN
    seed: int = DEFAULT_SEED
    threads: Optional[int] = None

    def validate(self) -> None:
        if self.statistic not in STATISTICS:
            raise ExperimentConfigError(f"statistic must be one of {STATISTICS}, got {self.statistic}")
        try:
            self.tau = parse_tau(self.tau)
        except TauError as exc:
            raise ExperimentConfigError(str(exc)) from exc
        grid = list(self.n_grid)
        if len(grid) < MIN_GRID_POINTS:
            raise ExperimentConfigError(f"n grid needs at least {MIN_GRID_POINTS} points, got {len(grid)}")
        if any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] < 2:
            raise ExperimentConfigError("n grid must be strictly increasing and start at n >= 2")
        if self.statistic == "mean" and self.samples < MIN_MEAN_SAMPLES:
            raise ExperimentConfigError(f"mean statistic needs at least {MIN_MEAN_SAMPLES} samples, got {self.samples}")
        if self.samples < 1:
            raise ExperimentConfigError("samples must be positive")


@dataclass
class ScalingRun:
    config: ScalingConfig
    counts: Dict[int, np.ndarray]  # raw counts per n, in sample order
    statistic: Dict[int, float]
    theory: TauExponent  # predicted exponent at tau, with its log power
    metrics: Dict[str, float] = field(default_factory=dict)  # slope, intercept, r2
    zero_sizes: List[int] = field(default_factory=list)  # n where the statistic is 0

    @property
    def fitted_slope(self) -> float:
        return self.metrics.get("slope", float("nan"))

    @property
    def theory_slope(self) -> float:
        return float(self.theory.evaluate(self.config.tau))

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for n, values in self.counts.items():
            for s, value in enumerate(values):
                rows.append({"n": n, "sample": s, "count": int(value)})
        return pd.DataFrame(rows)

    def summary(self) -> dict:
        return {
            "motif": self.config.motif,
            "tau": str(self.config.tau),
            "statistic": self.config.statistic,
            "induced": self.config.induced,
            "samples": self.config.samples,
            "seed": self.config.seed,
            "n_grid": list(self.config.n_grid),
            "values": {str(n): v for n, v in self.statistic.items()},
            "fitted_slope": self.metrics.get("slope"),
            "intercept": self.metrics.get("intercept"),
            "r2": self.metrics.get("r2"),
            "theory": self.theory.to_dict(),
            "theory_slope": self.theory_slope,
            "log_power": self.theory.log_power,
            "zero_sizes": self.zero_sizes,
        }


def _statistic(values: np.ndarray, statistic: str) -> float:
    return float(np.mean(values) if statistic == "mean" else np.median(values))


def fit_log_log(
    n_values: Sequence[int], stat_values: Sequence[float], log_power: int = 0
) -> Dict[str, float]:
    """
    Least-squares slope of log(stat) - log_power * log(log n) on log n,
    over the points with a positive statistic.
    """
    n_arr = np.asarray(n_values, dtype=float)
    s_arr = np.asarray(stat_values, dtype=float)
    keep = s_arr > 0
    if keep.sum() < 2:
        return {"slope": float("nan"), "intercept": float("nan"), "r2": float("nan")}
    x = np.log(n_arr[keep]).reshape(-1, 1)
    y = np.log(s_arr[keep]) - log_power * np.log(np.log(n_arr[keep]))
    reg = LinearRegression().fit(x, y)
    r2 = r2_score(y, reg.predict(x)) if keep.sum() > 2 else 1.0
    return {"slope": float(reg.coef_[0]), "intercept": float(reg.intercept_), "r2": float(r2)}


def theory_exponent(motif: SmallGraph, tau: TauLike, statistic: str, induced: bool) -> TauExponent:
    mode = VariationMode.select(typical=statistic == "median", induced=induced)
    return optimize(motif, mode, tau).exponent


def scaling_experiment(config: ScalingConfig) -> ScalingRun:
    """
    Run a scaling experiment and fit its slope.

    Args:
        config: Motif, tau, n grid, samples per n, statistic and seed

    Returns:
        ScalingRun with raw counts, the statistic per n and fit metrics
    """
    config.validate()
    motif = parse_motif(config.motif)
    n_jobs = resolve_threads(config.threads)
    counts: Dict[int, np.ndarray] = {}
    stats: Dict[int, float] = {}
    for n in config.n_grid:
        logger.info("sampling %s at n=%d (%d samples)", display_name(motif), n, config.samples)
        counts[n] = _sample_counts(motif, n, config.tau, config.h_min, config.seed, config.samples, config.induced, n_jobs)
        stats[n] = _statistic(counts[n], config.statistic)
    theory = theory_exponent(motif, config.tau, config.statistic, config.induced)
    zero_sizes = [n for n, value in stats.items() if value <= 0]
    if zero_sizes:
        logger.warning("statistic is zero at n=%s; those sizes are left out of the fit", zero_sizes)
    metrics = fit_log_log(list(stats), list(stats.values()), theory.log_power)
    return ScalingRun(config, counts, stats, theory, metrics, zero_sizes)


def statistic_slopes_bootstrap(
    run: ScalingRun,
    resamples: int = BOOTSTRAP_RESAMPLES,
    seed: int = DEFAULT_SEED,
) -> pd.DataFrame:
    """
    Mean and median slopes of bootstrap resamples of the raw counts (both
    fitted without log correction, so they are directly comparable).
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    n_values = list(run.counts)
    rows = []
    for _ in range(resamples):
        means, medians = [], []
        for n in n_values:
            values = run.counts[n]
            picked = values[rng.integers(0, len(values), size=len(values))]
            means.append(float(np.mean(picked)))
            medians.append(float(np.median(picked)))
        rows.append({
            "mean_slope": fit_log_log(n_values, means)["slope"],
            "median_slope": fit_log_log(n_values, medians)["slope"],
        })
    return pd.DataFrame(rows)


def bootstrap_slope_gap(run: ScalingRun, resamples: int = BOOTSTRAP_RESAMPLES, seed: int = DEFAULT_SEED) -> float:
    """Fraction of bootstrap resamples where the mean slope exceeds the median slope."""
    slopes = statistic_slopes_bootstrap(run, resamples, seed).dropna()
    if slopes.empty:
        return float("nan")
    return float((slopes["mean_slope"] > slopes["median_slope"]).mean())


@dataclass
class DistributionConfig:
    motif: str
    tau: Fraction
    n_values: List[int]
    samples: int
    induced: bool = False
    h_min: float = DEFAULT_H_MIN
    seed: int = DEFAULT_SEED
    bins: int = HISTOGRAM_BINS
    threads: Optional[int] = None

    def validate(self) -> None:
        try:
            self.tau = parse_tau(self.tau)
        except TauError as exc:
            raise ExperimentConfigError(str(exc)) from exc
        if self.samples < MIN_DISTRIBUTION_SAMPLES:
            raise ExperimentConfigError(
                f"distribution experiments need at least {MIN_DISTRIBUTION_SAMPLES} samples, got {self.samples}"
            )
        if not self.n_values or any(n < 2 for n in self.n_values):
            raise ExperimentConfigError("n values must be at least 2")


@dataclass
class DistributionRun:
    motif: str
    tau: Fraction
    n: int
    seed: int
    counts: np.ndarray
    histogram: pd.DataFrame  # bin_lo, bin_hi, density of N / mean(N)

    @property
    def mean(self) -> float:
        return float(np.mean(self.counts))

    @property
    def median(self) -> float:
        return float(np.median(self.counts))

    @property
    def normalized(self) -> np.ndarray:
        mean = self.mean
        return self.counts / mean if mean > 0 else np.zeros(len(self.counts))

    @property
    def cv(self) -> float:
        """Standard deviation over mean (NaN when the mean is 0)."""
        mean = self.mean
        return float(np.std(self.counts) / mean) if mean > 0 else float("nan")

    def summary(self) -> dict:
        return {
            "motif": self.motif,
            "tau": str(self.tau),
            "n": self.n,
            "samples": len(self.counts),
            "seed": self.seed,
            "mean": self.mean,
            "median": self.median,
            "cv": self.cv,
        }


def _histogram(normalized: np.ndarray, bins: int) -> pd.DataFrame:
    density, edges = np.histogram(normalized, bins=bins, density=True)
    return pd.DataFrame({"bin_lo": edges[:-1], "bin_hi": edges[1:], "density": density})


def distribution_experiment(config: DistributionConfig) -> List[DistributionRun]:
    """
    Sample the count distribution at each n in config.n_values.
    """
    config.validate()
    motif = parse_motif(config.motif)
    n_jobs = resolve_threads(config.threads)
    runs = []
    for n in config.n_values:
        logger.info("distribution of %s at n=%d (%d samples)", display_name(motif), n, config.samples)
        values = _sample_counts(motif, n, config.tau, config.h_min, config.seed, config.samples, config.induced, n_jobs)
        mean = values.mean()
        normalized = values / mean if mean > 0 else np.zeros(len(values))
        if mean <= 0:
            logger.warning("all counts are zero at n=%d", n)
        runs.append(DistributionRun(display_name(motif), config.tau, n, config.seed, values, _histogram(normalized, config.bins)))
    return runs


def cv_trend(runs: Sequence[DistributionRun]) -> pd.DataFrame:
    """CV per n, in increasing n, with the ratio to the previous size."""
    frame = pd.DataFrame([{"n": r.n, "cv": r.cv} for r in sorted(runs, key=lambda r: r.n)])
    frame["ratio"] = frame["cv"] / frame["cv"].shift(1)
    return frame


def median_below_mean(run: DistributionRun, resamples: int = BOOTSTRAP_RESAMPLES, seed: int = DEFAULT_SEED) -> float:
    """Fraction of bootstrap resamples whose median is below their mean."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    hits = 0
    for _ in range(resamples):
        picked = run.counts[rng.integers(0, len(run.counts), size=len(run.counts))]
        hits += np.median(picked) < np.mean(picked)
    return hits / resamples


def save_run(run, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    joblib.dump(run, path)


def load_run(path: Path):
    return joblib.load(path)
