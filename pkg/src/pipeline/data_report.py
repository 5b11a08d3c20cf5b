# src/pipeline/data_report.py
"""
Graphlet report for an observed network.

Fits the degree exponent, counts the six connected four-vertex graphlets
(induced), measures the mean degree of every vertex type and compares the
observed frequency order with the order predicted by the typical graphlet
exponents at the fitted tau.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import log
from typing import Dict, List, Optional

from src.config import DEFAULT_X_MIN
from src.counting.census import census_count
from src.counting.orbits import vertex_orbit_counts
from src.exceptions import FitError
from src.models.exponent import TauExponent
from src.models.variational_model import VariationMode, optimize
from src.motifs.catalog import GRAPHLETS_4, parse_motif, vertex_types
from src.preprocessing.degrees import fit_power_law_exponent
from src.storage.host_graph import HostGraph

logger = logging.getLogger(__name__)

DEFAULT_REFERENCE_TAU = Fraction(5, 2)
TAU_CLAMP = (Fraction(41, 20), Fraction(59, 20))


@dataclass
class NetworkSummary:
    name: str
    n: int
    m: int
    tau_hat: Optional[float]
    x_min: float


def network_summary(g: HostGraph, name: str = "network", x_min: float = DEFAULT_X_MIN) -> NetworkSummary:
    try:
        tau_hat: Optional[float] = fit_power_law_exponent(g.degrees, x_min)
    except FitError as exc:
        logger.warning("power-law fit failed for %s: %s", name, exc)
        tau_hat = None
    return NetworkSummary(name=name, n=g.n, m=g.m, tau_hat=tau_hat, x_min=x_min)


def reference_tau(tau_hat: Optional[float]) -> Fraction:
    """Fitted tau as a simple fraction, clamped into (2, 3)."""
    if tau_hat is None:
        return DEFAULT_REFERENCE_TAU
    tau = Fraction(tau_hat).limit_denominator(100)
    return min(max(tau, TAU_CLAMP[0]), TAU_CLAMP[1])


def predicted_order(tau: Fraction) -> List[str]:
    """
    Graphlets by decreasing typical exponent at tau. A log factor wins a
    tie, then the graphlet with fewer edges, then catalog order.
    """
    exponents: Dict[str, TauExponent] = {
        name: optimize(parse_motif(name), VariationMode.TYPICAL_GRAPHLET, tau).exponent for name in GRAPHLETS_4
    }
    return sorted(
        GRAPHLETS_4,
        key=lambda name: (
            -exponents[name].evaluate(tau),
            -exponents[name].log_power,
            parse_motif(name).m,
            GRAPHLETS_4.index(name),
        ),
    )


def observed_order(counts: Dict[str, int], predicted: List[str]) -> List[str]:
    """Graphlets by decreasing count; ties keep the predicted order."""
    return sorted(counts, key=lambda name: (-counts[name], predicted.index(name)))


def graphlet_report(g: HostGraph, name: str = "network", x_min: float = DEFAULT_X_MIN) -> dict:
    """
    Build the JSON-ready graphlet report of g.

    Args:
        g: Observed network
        name: Label used in the report
        x_min: Tail cutoff for the exponent fit

    Returns:
        dict with the summary, graphlet counts, vertex-type degrees and the
        predicted and observed frequency orders
    """
    summary = network_summary(g, name, x_min)
    tau = reference_tau(summary.tau_hat)
    counts = {graphlet: census_count(g, parse_motif(graphlet), induced=True) for graphlet in GRAPHLETS_4}
    log_n = log(g.n) if g.n > 1 else None

    orbit_counts = vertex_orbit_counts(g, 4, induced=True)
    degrees = g.degrees
    orbit_rows = []
    for label, graphlet, orbit in vertex_types(4):
        weight = orbit_counts[label].to_numpy()
        occurrences = int(weight.sum())
        mean_degree = float((weight * degrees).sum() / occurrences) if occurrences else None
        orbit_rows.append({
            "vertex_type": label,
            "graphlet": graphlet,
            "orbit": list(orbit),
            "occurrences": occurrences,
            "mean_degree": mean_degree,
            "log_mean_degree": log(mean_degree) / log_n if mean_degree and log_n else None,
        })

    predicted = predicted_order(tau)
    observed = observed_order(counts, predicted)
    if observed != predicted:
        logger.warning("%s: observed graphlet order %s differs from prediction %s", name, observed, predicted)
    return {
        "name": summary.name,
        "n": summary.n,
        "m": summary.m,
        "tau_hat": summary.tau_hat,
        "x_min": summary.x_min,
        "reference_tau": str(tau),
        "counts": counts,
        "log_normalized": {
            graphlet: (log(value) / log_n if value > 0 and log_n else None) for graphlet, value in counts.items()
        },
        "vertex_types": orbit_rows,
        "ordering": {
            "predicted": predicted,
            "observed": observed,
            "matches": observed == predicted,
        },
    }
