# src/motifs/catalog.py
"""
Named motifs, enumeration of connected graphs, and containment tables.

Aliases cover every connected graph on two to five vertices that the
exponent atlas reports. Five-vertex edge lists use vertices a..e = 0..4.
"""

import itertools
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.config import MAX_MOTIF_VERTICES
from src.exceptions import MotifError
from src.motifs.graph import (
    SmallGraph,
    canonical_form,
    canonical_graph,
    orbit_placements,
    parse_edge_literal,
    spanning_copies,
    symmetry_info,
)


ALIASES: Dict[str, str] = {
    # two and three vertices
    "edge": "0-1",
    "wedge": "0-1,1-2",
    "triangle": "0-1,1-2,0-2",
    # four vertices
    "k4": "0-1,0-2,0-3,1-2,1-3,2-3",
    "diamond": "0-1,0-2,1-2,1-3,2-3",
    "square": "0-1,1-3,2-3,0-2",
    "paw": "1-2,2-3,1-3,0-2",
    "claw": "0-1,0-2,0-3",
    "path": "0-1,1-2,2-3",
    # five vertices
    "k5": "0-1,0-2,0-3,0-4,1-2,1-3,1-4,2-3,2-4,3-4",
    "k5e": "0-1,0-2,0-3,0-4,1-2,1-3,1-4,2-4,3-4",
    "k4_fan": "0-1,1-2,1-3,0-2,0-3,2-4,3-4,2-3",
    "wheel": "0-1,0-2,1-4,0-4,1-3,2-4,3-4,2-3",
    "k4_pendant": "0-1,0-2,0-3,1-2,1-3,2-3,2-4",
    "wheel_spoke": "0-1,0-2,1-4,1-3,2-4,2-3,3-4",
    "gem": "0-1,1-2,1-3,0-2,2-4,3-4,2-3",
    "book3": "1-3,1-2,0-2,0-3,2-4,3-4,2-3",
    "bowtie": "0-1,0-4,1-4,3-4,2-4,2-3",
    "kite": "0-1,1-3,0-2,0-3,2-4,2-3",
    "dart": "0-1,1-3,0-2,1-2,2-4,2-3",
    "house": "0-1,1-3,0-2,3-4,2-4,2-3",
    "k23": "0-1,0-2,1-4,1-3,2-4,2-3",
    "tadpole": "0-1,0-4,1-4,2-4,2-3",
    "c5": "0-1,1-2,2-3,0-4,3-4",
    "cricket": "0-1,0-4,1-4,3-4,2-4",
    "bull": "0-1,0-4,1-4,1-3,0-2",
    "banner": "0-1,1-3,0-2,2-4,2-3",
    "path5": "0-1,1-3,0-2,2-4",
    "fork": "1-3,0-2,2-4,2-3",
    "star4": "0-4,1-4,3-4,2-4",
}

# Atlas order: the eight small motifs, then the 21 connected five-vertex graphs
ATLAS_SMALL: Tuple[str, ...] = ("triangle", "wedge", "k4", "diamond", "square", "paw", "claw", "path")
ATLAS_FIVE: Tuple[str, ...] = (
    "k5", "k5e", "k4_fan", "wheel", "k4_pendant", "wheel_spoke", "gem", "book3",
    "bowtie", "kite", "dart", "house", "k23", "tadpole", "c5", "cricket", "bull",
    "banner", "path5", "fork", "star4",
)
ATLAS: Tuple[str, ...] = ATLAS_SMALL + ATLAS_FIVE

# Four-vertex graphlets in the order the data report lists them
GRAPHLETS_4: Tuple[str, ...] = ("k4", "diamond", "square", "paw", "claw", "path")


def parse_motif(spec: str) -> SmallGraph:
    """
    Resolve an alias (case-insensitive) or an edge literal like '0-1,1-2'.
    """
    if spec is None or not str(spec).strip():
        raise MotifError("empty motif specification")
    text = str(spec).strip()
    alias = text.lower()
    if alias in ALIASES:
        return parse_edge_literal(ALIASES[alias], name=alias)
    if "-" not in text:
        raise MotifError(f"unknown motif alias '{text}' (see `catalog` for known names)")
    graph = parse_edge_literal(text)
    if graph.k > MAX_MOTIF_VERTICES:
        raise MotifError(f"motif has {graph.k} vertices; at most {MAX_MOTIF_VERTICES} supported")
    if not graph.is_connected:
        raise MotifError(f"motif '{text}' is not connected")
    return graph.with_name(alias_for(graph) or "")


@lru_cache(maxsize=1)
def _alias_codes() -> Dict[str, str]:
    return {
        canonical_form(parse_edge_literal(literal)).code: name
        for name, literal in ALIASES.items()
    }


def alias_for(g: SmallGraph) -> Optional[str]:
    """Alias of the isomorphism class of g, if it has one."""
    if g.k > 5:
        return None
    return _alias_codes().get(canonical_form(g).code)


def display_name(g: SmallGraph) -> str:
    return alias_for(g) or g.literal()


@lru_cache(maxsize=None)
def enumerate_connected(k: int) -> Tuple[SmallGraph, ...]:
    """
    One canonical representative per connected class on k vertices,
    ordered by edge count and then canonical code.
    """
    if not 1 <= k <= 6:
        raise MotifError(f"enumeration supports 1..6 vertices, got {k}")
    pairs = list(itertools.combinations(range(k), 2))
    classes: Dict[str, SmallGraph] = {}
    for mask in range(1 << len(pairs)):
        chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(chosen) < k - 1:
            continue
        g = SmallGraph.from_edges(k, chosen)
        if not g.is_connected:
            continue
        code = canonical_form(g).code
        if code not in classes:
            classes[code] = canonical_graph(g)
    ordered = sorted(classes.items(), key=lambda item: (item[1].m, item[0]))
    return tuple(g.with_name(alias_for(g) or "") for _, g in ordered)


@lru_cache(maxsize=None)
def containment_matrix(k: int) -> Tuple[Tuple[SmallGraph, ...], np.ndarray]:
    """
    matrix[i, j]: non-induced copies of class i inside class j, spanning all
    k vertices. Rows and columns follow enumerate_connected(k).
    """
    classes = enumerate_connected(k)
    matrix = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for i, pattern in enumerate(classes):
        for j, host in enumerate(classes):
            if pattern.m <= host.m:
                matrix[i, j] = spanning_copies(pattern, host)
    return classes, matrix


def orbit_labels(g: SmallGraph) -> List[Tuple[int, ...]]:
    """Orbits ordered by degree, then smallest member."""
    info = symmetry_info(g)
    return sorted(info.orbits, key=lambda orbit: (g.degrees[orbit[0]], orbit[0]))


@lru_cache(maxsize=None)
def vertex_types(k: int = 4) -> Tuple[Tuple[str, str, Tuple[int, ...]], ...]:
    """
    Vertex types t1, t2, ... as (type label, graphlet alias, orbit vertices).

    For k=4 the order is k4, diamond, square, paw, claw, path; inside a
    graphlet, orbits go by increasing degree.
    """
    if k == 4:
        names: Sequence[str] = GRAPHLETS_4
    elif k == 3:
        names = ("triangle", "wedge")
    else:
        raise MotifError(f"vertex types are defined for k=3 and k=4, got {k}")
    types = []
    for name in names:
        g = parse_motif(name)
        for orbit in orbit_labels(g):
            types.append((f"t{len(types) + 1}", name, orbit))
    return tuple(types)


@lru_cache(maxsize=None)
def orbit_containment(k: int) -> np.ndarray:
    """
    Orbit-level containment between vertex types of size k.

    matrix[r, c]: non-induced copies of type r's graphlet inside type c's
    graphlet that put a fixed vertex of type c into the orbit of type r.
    """
    return _orbit_containment(k).copy()


@lru_cache(maxsize=None)
def _orbit_containment(k: int) -> np.ndarray:
    types = vertex_types(k)
    matrix = np.zeros((len(types), len(types)), dtype=np.int64)
    for r, (_, pattern_name, pattern_orbit) in enumerate(types):
        pattern = parse_motif(pattern_name)
        orbit_row = symmetry_info(pattern).orbits.index(pattern_orbit)
        for c, (_, host_name, host_orbit) in enumerate(types):
            host = parse_motif(host_name)
            if pattern.m > host.m:
                continue
            matrix[r, c] = orbit_placements(pattern, host)[orbit_row, host_orbit[0]]
    return matrix
