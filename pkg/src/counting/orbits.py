# src/counting/orbits.py
"""
Per-vertex orbit counts and orbit degree statistics.

For three- and four-vertex graphlets every vertex gets the number of copies
in which it sits in each orbit (vertex types t1, t2, ...). The non-induced
counts have closed forms; induced counts follow per vertex from the
orbit-level containment matrix. Larger motifs fall back to enumerating
embeddings, keeping a reservoir sample once there are too many.
"""

import logging
from dataclasses import dataclass, field
from math import log
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.config import DEFAULT_ORBIT_SAMPLE_CAP, DEFAULT_SEED
from src.counting.census import choose2, choose3, census_inputs
from src.counting.subgraph_counter import iter_embeddings
from src.exceptions import CountingError
from src.motifs.catalog import alias_for, display_name, orbit_containment, parse_motif, vertex_types
from src.motifs.graph import SmallGraph, canonical_form, symmetry_info
from src.storage.buffer import ReservoirBuffer
from src.storage.host_graph import HostGraph

logger = logging.getLogger(__name__)


def _noninduced_orbits(g: HostGraph, k: int) -> np.ndarray:
    inputs = census_inputs(g)
    d, rows, cols = inputs.degrees, inputs.rows, inputs.cols
    t = inputs.triangles_per_vertex
    if k == 3:
        # triangle, wedge end, wedge centre
        return np.column_stack([t, inputs.neighbor_sum(d[cols] - 1), choose2(d)])
    c = inputs.common
    spread = inputs.neighbor_sum(d[cols] - 1)  # S(u) = sum over w in N(u) of (d_w - 1)
    path_end = inputs.neighbor_sum(spread[cols]) - d * (d - 1) - 2 * t
    path_middle = inputs.neighbor_sum((d[rows] - 1) * (d[cols] - 1) - c)
    return np.column_stack([
        inputs.k4_per_vertex,  # t1 k4
        inputs.diamond_corners,  # t2 diamond, degree 2
        inputs.neighbor_sum(choose2(c)),  # t3 diamond, degree 3
        inputs.square_pairs,  # t4 square
        inputs.neighbor_sum(t[cols] - c),  # t5 paw, degree 1
        inputs.neighbor_sum(c * (d[cols] - 2)),  # t6 paw, degree 2
        t * (d - 2),  # t7 paw, degree 3
        inputs.neighbor_sum(choose2(d[cols] - 1)),  # t8 claw, leaves
        choose3(d),  # t9 claw, centre
        path_end,  # t10 path, ends
        path_middle,  # t11 path, middle
    ])


def vertex_orbit_counts(g: HostGraph, k: int = 4, induced: bool = True) -> pd.DataFrame:
    """
    Per-vertex orbit counts, one column per vertex type (t1, t2, ...).

    Args:
        g: Host graph
        k: Graphlet size, 3 or 4
        induced: Induced copies (graphlet degree vectors) or all copies

    Returns:
        DataFrame indexed by vertex
    """
    if k not in (3, 4):
        raise CountingError(f"vertex orbit counts are available for k=3 and k=4, got {k}")
    types = vertex_types(k)
    counts = _noninduced_orbits(g, k).astype(np.int64)
    if induced:
        containment = orbit_containment(k)
        edges = [parse_motif(name).m for _, name, _ in types]
        solved = np.zeros_like(counts)
        for r in sorted(range(len(types)), key=lambda i: -edges[i]):
            value = counts[:, r].copy()
            for col in range(len(types)):
                if col != r and containment[r, col]:
                    value -= containment[r, col] * solved[:, col]
            solved[:, r] = value
        counts = solved
    return pd.DataFrame(counts, columns=[label for label, _, _ in types])


@dataclass(frozen=True)
class OrbitDegreeRow:
    orbit: Tuple[int, ...]  # motif vertices in this orbit
    vertex_type: Optional[str]  # t1.. for three- and four-vertex graphlets
    occurrences: int  # copies times orbit size
    mean_degree: float
    log_mean: Optional[float]  # log(mean degree) / log(n)


@dataclass
class OrbitDegreeStats:
    motif: str
    induced: bool
    n: int
    rows: List[OrbitDegreeRow] = field(default_factory=list)
    capped: bool = False  # degree means come from a reservoir sample
    sampled_embeddings: int = 0

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([
            {
                "orbit": ",".join(map(str, r.orbit)),
                "vertex_type": r.vertex_type,
                "occurrences": r.occurrences,
                "mean_degree": r.mean_degree,
                "log_mean": r.log_mean,
            }
            for r in self.rows
        ])


def _log_mean(mean_degree: float, n: int) -> Optional[float]:
    if n < 2 or mean_degree <= 0:
        return None
    return log(mean_degree) / log(n)


def _alias_to_motif(h: SmallGraph, alias: str) -> Dict[int, int]:
    """Isomorphism from the alias graph's vertices to h's vertices."""
    reference = parse_motif(alias)
    to_canonical = canonical_form(reference).relabeling
    from_canonical = {new: old for old, new in enumerate(canonical_form(h).relabeling)}
    return {v: from_canonical[to_canonical[v]] for v in range(h.k)}


def orbit_degree_stats(
    g: HostGraph,
    h: SmallGraph,
    induced: bool = True,
    sample_cap: int = DEFAULT_ORBIT_SAMPLE_CAP,
    seed: int = DEFAULT_SEED,
) -> OrbitDegreeStats:
    """
    Mean host degree of the vertices filling each orbit of h, over all
    occurrences of h in g.
    """
    if not h.is_connected:
        raise CountingError(f"motif {h} is not connected")
    degrees = g.degrees
    stats = OrbitDegreeStats(motif=display_name(h), induced=induced, n=g.n)
    alias = alias_for(h)
    if h.k in (3, 4) and alias in {name for _, name, _ in vertex_types(h.k)}:
        counts = vertex_orbit_counts(g, h.k, induced)
        mapping = _alias_to_motif(h, alias)
        for label, name, orbit in vertex_types(h.k):
            if name != alias:
                continue
            weight = counts[label].to_numpy()
            occurrences = int(weight.sum())
            mean = float((weight * degrees).sum() / occurrences) if occurrences else 0.0
            stats.rows.append(OrbitDegreeRow(
                orbit=tuple(sorted(mapping[v] for v in orbit)),
                vertex_type=label,
                occurrences=occurrences,
                mean_degree=mean,
                log_mean=_log_mean(mean, g.n),
            ))
        return stats
    info = symmetry_info(h)
    buffer: ReservoirBuffer[Tuple[int, ...]] = ReservoirBuffer(sample_cap, seed)
    for embedding in iter_embeddings(g, h, induced):
        buffer.append(embedding)
    sample = np.array(buffer.all(), dtype=np.int64).reshape(-1, h.k)
    copies = buffer.seen // info.automorphism_count
    for orbit in info.orbits:
        mean = float(degrees[sample[:, list(orbit)]].mean()) if len(sample) else 0.0
        stats.rows.append(OrbitDegreeRow(
            orbit=orbit,
            vertex_type=None,
            occurrences=copies * len(orbit),
            mean_degree=mean,
            log_mean=_log_mean(mean, g.n),
        ))
    stats.capped = buffer.capped
    if stats.capped:
        logger.warning(
            "%s: %d embeddings, degree means from a sample of %d", stats.motif, buffer.seen, len(buffer)
        )
    stats.sampled_embeddings = len(buffer)
    return stats
