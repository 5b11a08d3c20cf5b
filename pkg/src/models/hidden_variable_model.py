# src/models/hidden_variable_model.py
"""
Hidden-Variable Model: power-law weights and Chung-Lu style edges

Vertex i gets weight h_i with P(h > x) = (x / h_min)^(1 - tau), and every
pair i < j is joined independently with probability min(h_i h_j / (mu n), 1).

Randomness is counter based (numpy Philox): the weight stream, every row of
the exact sampler and every bucket pair of the fast sampler have their own
key derived from the seed, so results do not depend on thread count or on
the order in which work is scheduled.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from src.config import DEFAULT_H_MIN, DEFAULT_SEED, EXACT_PAIR_LIMIT, resolve_threads
from src.exceptions import ModelParameterError, TauError
from src.models.exponent import TauLike, parse_tau
from src.storage.host_graph import HostGraph

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1
_WEIGHT_STREAM = 0
_ROW_STREAM = 1 << 62
_BUCKET_STREAM = 1 << 63


def _generator(seed: int, stream: int) -> np.random.Generator:
    key = np.array([int(seed) & _MASK64, int(stream) & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class ModelParams:
    """
    Parameters of one hidden-variable graph
    """
    n: int
    tau: Fraction
    h_min: float
    mu: float  # mean weight used in the connection probability
    seed: int
    mu_source: str = "analytic"  # or "empirical"

    @classmethod
    def from_tau(
        cls,
        n: int,
        tau: TauLike,
        h_min: float = DEFAULT_H_MIN,
        seed: int = DEFAULT_SEED,
        mu: Optional[float] = None,
    ) -> "ModelParams":
        try:
            tau = parse_tau(tau)
        except TauError as exc:
            raise ModelParameterError(str(exc)) from exc
        if n < 0:
            raise ModelParameterError(f"n must be nonnegative, got {n}")
        if h_min <= 0:
            raise ModelParameterError(f"h_min must be positive, got {h_min}")
        if mu is not None and mu <= 0:
            raise ModelParameterError(f"mu must be positive, got {mu}")
        source = "analytic" if mu is None else "empirical"
        return cls(
            n=int(n),
            tau=tau,
            h_min=float(h_min),
            mu=analytic_mean(tau, h_min) if mu is None else float(mu),
            seed=int(seed),
            mu_source=source,
        )


def analytic_mean(tau: TauLike, h_min: float = DEFAULT_H_MIN) -> float:
    """E[h] = h_min (tau - 1) / (tau - 2)."""
    tau = parse_tau(tau)
    return float(h_min) * float(tau - 1) / float(tau - 2)


def sample_weights(params: ModelParams) -> np.ndarray:
    """
    n i.i.d. Pareto weights, h = h_min * u^(-1/(tau-1)) with u in (0, 1].
    """
    rng = _generator(params.seed, _WEIGHT_STREAM)
    u = 1.0 - rng.random(params.n)
    return params.h_min * u ** (-1.0 / float(params.tau - 1))


def _exact_rows(weights: np.ndarray, scale: float, seed: int, rows: range) -> Tuple[np.ndarray, np.ndarray]:
    us: List[np.ndarray] = []
    vs: List[np.ndarray] = []
    n = len(weights)
    for i in rows:
        if i >= n - 1:
            continue
        rng = _generator(seed, _ROW_STREAM + i)
        p = np.minimum(weights[i] * weights[i + 1:] / scale, 1.0)
        hits = np.nonzero(rng.random(n - i - 1) < p)[0] + i + 1
        us.append(np.full(len(hits), i, dtype=np.int64))
        vs.append(hits)
    if not us:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(us), np.concatenate(vs)


def _bucket_pair(
    weights: np.ndarray,
    members_a: np.ndarray,
    members_b: np.ndarray,
    same: bool,
    scale: float,
    seed: int,
    stream: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """Edges between two weight buckets by geometric skipping."""
    rng = _generator(seed, stream)
    size_a, size_b = len(members_a), len(members_b)
    cells = size_a * size_b
    p_max = min(weights[members_a].max() * weights[members_b].max() / scale, 1.0)
    if cells == 0 or p_max <= 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    found: List[np.ndarray] = []
    position = -1
    chunk = int(cells * p_max * 1.1) + 64
    while True:
        steps = rng.geometric(p_max, size=chunk)
        positions = position + np.cumsum(steps)
        inside = positions[positions < cells]
        found.append(inside)
        if len(inside) < len(positions):
            break
        position = int(positions[-1])
    candidates = np.concatenate(found)
    s, t = np.divmod(candidates, size_b)
    if same:
        keep = s < t
        s, t = s[keep], t[keep]
    u, v = members_a[s], members_b[t]
    p = np.minimum(weights[u] * weights[v] / scale, 1.0)
    accept = rng.random(len(u)) < p / p_max
    return u[accept], v[accept]


def sample_graph(
    weights: np.ndarray,
    mu: float,
    seed: int = DEFAULT_SEED,
    threads: Optional[int] = None,
) -> HostGraph:
    """
    Draw the edges of a hidden-variable graph for fixed weights.

    Args:
        weights: Vertex weights h_i > 0
        mu: Mean weight in min(h_i h_j / (mu n), 1)
        seed: Seed for the counter-based generator
        threads: Worker count (defaults to MOTIFVAR_THREADS or 1)

    Returns:
        HostGraph with the weights and mu attached
    """
    weights = np.asarray(weights, dtype=float)
    n = len(weights)
    if n == 0:
        return HostGraph.from_edges(0, np.empty(0), np.empty(0), weights, mu)
    if mu <= 0 or np.any(weights <= 0):
        logger.error("rejecting sample: mu=%s, min weight=%s", mu, weights.min())
        raise ModelParameterError("weights and mu must be positive")
    scale = mu * n
    n_jobs = resolve_threads(threads)
    if n <= EXACT_PAIR_LIMIT:
        blocks = np.array_split(np.arange(n), max(n_jobs * 4, 1))
        tasks = [delayed(_exact_rows)(weights, scale, seed, range(int(b[0]), int(b[-1]) + 1)) for b in blocks if len(b)]
    else:
        decade = np.floor(np.log10(weights / weights.min())).astype(np.int64)
        buckets = [np.nonzero(decade == d)[0] for d in np.unique(decade)]
        tasks = []
        for a in range(len(buckets)):
            for b in range(a, len(buckets)):
                stream = _BUCKET_STREAM + a * 4096 + b
                tasks.append(delayed(_bucket_pair)(weights, buckets[a], buckets[b], a == b, scale, seed, stream))
    logger.debug("sampling n=%d with %d tasks on %d workers", n, len(tasks), n_jobs)
    parts = Parallel(n_jobs=n_jobs)(tasks) if n_jobs > 1 else [task[0](*task[1], **task[2]) for task in tasks]
    us = np.concatenate([p[0] for p in parts]) if parts else np.empty(0, dtype=np.int64)
    vs = np.concatenate([p[1] for p in parts]) if parts else np.empty(0, dtype=np.int64)
    return HostGraph.from_edges(n, us, vs, weights, mu)


def sample_hidden_variable_graph(params: ModelParams, threads: Optional[int] = None) -> HostGraph:
    return sample_graph(sample_weights(params), params.mu, params.seed, threads)


def expected_degrees(weights: np.ndarray, mu: float) -> np.ndarray:
    """
    E[deg i] = sum over j != i of min(h_i h_j / (mu n), 1), in O(n log n).
    """
    weights = np.asarray(weights, dtype=float)
    n = len(weights)
    scale = mu * n
    order = np.sort(weights)
    prefix = np.concatenate([[0.0], np.cumsum(order)])
    # partners j with h_j >= scale / h_i saturate at probability 1
    cut = np.searchsorted(order, scale / weights, side="left")
    light = weights * prefix[cut] / scale
    saturated = n - cut
    self_term = np.minimum(weights * weights / scale, 1.0)
    return light + saturated - self_term


def expected_degree_check(g: HostGraph, mu: Optional[float] = None, sigmas: float = 5.0) -> pd.DataFrame:
    """
    Mean degree per weight decade against its expectation.

    Each bin reports the bin-mean weight, the observed and expected mean
    degree and a Poisson standard error; bins more than `sigmas` standard
    errors away are flagged.
    """
    columns = ["bin", "vertices", "mean_weight", "mean_degree", "expected_degree", "std_error", "flagged"]
    if g.weights is None:
        raise ModelParameterError("graph has no weights attached")
    if g.n == 0:
        return pd.DataFrame(columns=columns)
    mu = mu if mu is not None else (g.mu if g.mu is not None else float(g.weights.mean()))
    expected = expected_degrees(g.weights, mu)
    frame = pd.DataFrame({
        "bin": np.floor(np.log10(g.weights / g.weights.min())).astype(int),
        "weight": g.weights,
        "degree": g.degrees,
        "expected": expected,
    })
    report = frame.groupby("bin").agg(
        vertices=("degree", "size"),
        mean_weight=("weight", "mean"),
        mean_degree=("degree", "mean"),
        expected_degree=("expected", "mean"),
    ).reset_index()
    report["std_error"] = np.sqrt(np.maximum(report["expected_degree"], 1e-12) / report["vertices"])
    report["flagged"] = (report["mean_degree"] - report["expected_degree"]).abs() > sigmas * report["std_error"]
    if report["flagged"].any():
        logger.warning("%d weight bins deviate from their expected degree", int(report["flagged"].sum()))
    return report[columns]


def expected_edge_moments(weights: np.ndarray, mu: float) -> Tuple[float, float]:
    """Exact mean and variance of the edge count for fixed weights."""
    weights = np.asarray(weights, dtype=float)
    p = np.minimum(np.outer(weights, weights) / (mu * len(weights)), 1.0)
    np.fill_diagonal(p, 0.0)
    return float(p.sum() / 2), float((p * (1 - p)).sum() / 2)
