# src/preprocessing/degrees.py
"""
Degree distributions and the power-law tail fit.

The exponent is the maximum-likelihood estimate on the tail d >= x_min:

    tau_hat = 1 + m' / sum(log(d / x_min'))

with x_min' = x_min - 1/2 for integer data (the usual discreteness
correction) and x_min' = x_min for continuous data.
"""

from typing import Optional

import numpy as np
import pandas as pd

from src.config import DEFAULT_X_MIN, MIN_TAIL_SIZE
from src.exceptions import FitError
from src.storage.host_graph import HostGraph


def fit_power_law_exponent(values: np.ndarray, x_min: float = DEFAULT_X_MIN) -> float:
    """
    Tail exponent tau_hat of a sample of degrees (or weights).

    Args:
        values: Observed degrees or weights
        x_min: Lower cutoff of the tail

    Returns:
        tau_hat > 1

    Raises:
        FitError: tail smaller than MIN_TAIL_SIZE, or all tail values equal
    """
    values = np.asarray(values, dtype=float)
    tail = values[values >= x_min]
    if len(tail) < MIN_TAIL_SIZE:
        raise FitError(f"only {len(tail)} values >= x_min={x_min}; need at least {MIN_TAIL_SIZE}")
    if np.all(tail == tail[0]):
        raise FitError("degenerate tail: every value equals x_min")
    integer_valued = np.all(np.equal(np.mod(tail, 1), 0))
    cutoff = x_min - 0.5 if integer_valued else x_min
    log_sum = np.log(tail / cutoff).sum()
    if log_sum <= 0:
        raise FitError("degenerate tail: log-likelihood sum is not positive")
    return float(1.0 + len(tail) / log_sum)


def degree_table(g: HostGraph) -> pd.DataFrame:
    """Degree frequencies with the complementary cumulative distribution."""
    degrees, counts = np.unique(g.degrees, return_counts=True)
    frame = pd.DataFrame({"degree": degrees, "vertices": counts})
    frame["ccdf"] = frame["vertices"][::-1].cumsum()[::-1] / max(g.n, 1)
    return frame


def fit_graph_exponent(g: HostGraph, x_min: float = DEFAULT_X_MIN) -> Optional[float]:
    """tau_hat from the degrees of g, or None when the tail cannot be fit."""
    try:
        return fit_power_law_exponent(g.degrees, x_min)
    except FitError:
        return None
