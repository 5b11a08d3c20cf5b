# src/counting/subgraph_counter.py
"""
Exact subgraph and graphlet counting in host graphs.

Motifs with up to four vertices go through closed-form census formulas
(see census.py). Larger motifs use backtracking over embeddings: motif
vertices are placed in a connected order, each new vertex is drawn from the
neighbors of an already placed one, and copies = embeddings / |Aut(H)|.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from src.config import MAX_COUNT_VERTICES, resolve_threads
from src.exceptions import CountingError
from src.motifs.catalog import display_name
from src.motifs.graph import SmallGraph, canonical_form, spanning_copies, symmetry_info
from src.storage.host_graph import HostGraph


@dataclass(frozen=True)
class CountResult:
    motif: str
    induced: bool
    count: int
    method: str  # "census" or "backtracking"


@dataclass(frozen=True)
class _Step:
    vertex: int
    anchor: int  # position of an already placed neighbor, -1 for the root
    adjacent: Tuple[int, ...]  # positions that must be neighbors
    non_adjacent: Tuple[int, ...]  # positions that must not be (induced only)
    degree: int


def search_plan(h: SmallGraph) -> List[_Step]:
    """
    Placement order: highest-degree vertex first, then always the vertex
    with most placed neighbors (ties: higher degree, then lower id).
    """
    degrees = h.degrees
    nbrs = h.neighbors
    order = [max(range(h.k), key=lambda v: (degrees[v], -v))]
    while len(order) < h.k:
        placed = set(order)
        order.append(max(
            (v for v in range(h.k) if v not in placed),
            key=lambda v: (sum(1 for w in nbrs[v] if w in placed), degrees[v], -v),
        ))
    position = {v: i for i, v in enumerate(order)}
    steps = []
    for i, v in enumerate(order):
        earlier = [position[w] for w in nbrs[v] if position[w] < i]
        missing = [j for j in range(i) if order[j] not in nbrs[v]]
        steps.append(_Step(v, min(earlier) if earlier else -1, tuple(sorted(earlier)), tuple(missing), degrees[v]))
    return steps


def _check(h: SmallGraph) -> None:
    if not h.is_connected:
        raise CountingError(f"motif {h} is not connected")
    if h.k > MAX_COUNT_VERTICES:
        raise CountingError(f"counting supports motifs up to {MAX_COUNT_VERTICES} vertices, got {h.k}")


def iter_embeddings(
    g: HostGraph,
    h: SmallGraph,
    induced: bool = False,
    roots: Optional[Sequence[int]] = None,
) -> Iterator[Tuple[int, ...]]:
    """
    Yield every embedding as a tuple image[v] for motif vertex v.
    """
    steps = search_plan(h)
    adj = g.adjacency_sets
    degrees = g.degrees
    image = [0] * len(steps)
    used = set()

    def extend(depth: int) -> Iterator[Tuple[int, ...]]:
        if depth == len(steps):
            out = [0] * h.k
            for step, x in zip(steps, image):
                out[step.vertex] = x
            yield tuple(out)
            return
        step = steps[depth]
        candidates = adj[image[step.anchor]]
        for p in step.adjacent:
            if p != step.anchor:
                candidates = candidates & adj[image[p]]
        for x in candidates:
            if x in used or degrees[x] < step.degree:
                continue
            if induced and any(x in adj[image[p]] for p in step.non_adjacent):
                continue
            image[depth] = x
            used.add(x)
            yield from extend(depth + 1)
            used.discard(x)

    root_step = steps[0]
    for r in range(g.n) if roots is None else roots:
        if degrees[r] < root_step.degree:
            continue
        image[0] = r
        used.add(r)
        yield from extend(1)
        used.discard(r)


def count_embeddings(
    g: HostGraph,
    h: SmallGraph,
    induced: bool = False,
    roots: Optional[Sequence[int]] = None,
) -> int:
    return sum(1 for _ in iter_embeddings(g, h, induced, roots))


def count_backtracking(g: HostGraph, h: SmallGraph, induced: bool = False, threads: Optional[int] = None) -> int:
    """
    Copies of h in g by backtracking, split over root chunks when threads > 1.
    """
    _check(h)
    aut = symmetry_info(h).automorphism_count
    n_jobs = resolve_threads(threads)
    if n_jobs == 1 or g.n < 2 * n_jobs:
        embeddings = count_embeddings(g, h, induced)
    else:
        chunks = [chunk.tolist() for chunk in np.array_split(np.arange(g.n), n_jobs * 4)]
        embeddings = sum(Parallel(n_jobs=n_jobs)(
            delayed(count_embeddings)(g, h, induced, chunk) for chunk in chunks
        ))
    if embeddings % aut:
        raise CountingError(f"embedding count {embeddings} not divisible by |Aut| = {aut}")
    return embeddings // aut


def count(g: HostGraph, h: SmallGraph, induced: bool = False, threads: Optional[int] = None) -> CountResult:
    """
    Number of copies of h in g (induced copies when induced is set).

    Args:
        g: Host graph
        h: Connected motif with at most MAX_COUNT_VERTICES vertices
        induced: Count induced copies only
        threads: Worker count for backtracking

    Returns:
        CountResult with the exact count and the method used
    """
    from src.counting.census import census_count, supports_census

    _check(h)
    if supports_census(h):
        return CountResult(display_name(h), induced, census_count(g, h, induced), "census")
    return CountResult(display_name(h), induced, count_backtracking(g, h, induced, threads), "backtracking")


def count_exhaustive(g: HostGraph, h: SmallGraph, induced: bool = False) -> int:
    """
    Reference count over all k-subsets of vertices; only for small hosts.

    Each subset's induced subgraph is classified once by canonical form and
    the spanning copies of h in that class are counted by permutations.
    """
    _check(h)
    if g.n > 40:
        raise CountingError(f"exhaustive counting is limited to 40 vertices, got {g.n}")
    target = canonical_form(h).code
    adj = g.adjacency_sets
    per_class: Dict[str, int] = {}
    total = 0
    for subset in itertools.combinations(range(g.n), h.k):
        edges = [(i, j) for i, j in itertools.combinations(range(h.k), 2) if subset[j] in adj[subset[i]]]
        if len(edges) < h.m:
            continue
        sub = SmallGraph.from_edges(h.k, edges)
        code = canonical_form(sub).code
        if induced:
            total += code == target
            continue
        if code not in per_class:
            per_class[code] = spanning_copies(h, sub)
        total += per_class[code]
    return total
