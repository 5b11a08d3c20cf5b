# src/motifs/graph.py
"""
Small labeled graphs (motifs and graphlets) and their symmetry.

A SmallGraph is immutable and hashable, so results computed from it can be
cached. Canonical labeling uses individualization-refinement without
automorphism pruning: every leaf of the search tree is visited, which keeps
the form exact and lets the same pass count automorphisms.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from src.config import MAX_MOTIF_VERTICES, MAX_OPTIMIZE_VERTICES
from src.exceptions import MotifError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class SmallGraph:
    """
    Simple undirected graph on vertices 0..k-1.
    """
    k: int
    edges: Tuple[Edge, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_edges(cls, k: int, edges: Iterable[Sequence[int]], name: str = "") -> "SmallGraph":
        if k < 1:
            raise MotifError(f"motif needs at least one vertex, got k={k}")
        normalized = set()
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if u == v:
                raise MotifError(f"self-loop {u}-{v} in motif")
            if not (0 <= u < k and 0 <= v < k):
                raise MotifError(f"edge {u}-{v} outside vertex range 0..{k - 1}")
            normalized.add((min(u, v), max(u, v)))
        return cls(k=k, edges=tuple(sorted(normalized)), name=name)

    @property
    def edge_set(self) -> FrozenSet[Edge]:
        return _edge_set(self)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        return _neighbors(self)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(nb) for nb in self.neighbors)

    @property
    def adjacency(self) -> np.ndarray:
        mat = np.zeros((self.k, self.k), dtype=bool)
        for u, v in self.edges:
            mat[u, v] = mat[v, u] = True
        return mat

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def non_edges(self) -> List[Edge]:
        present = self.edge_set
        return [pair for pair in itertools.combinations(range(self.k), 2) if pair not in present]

    @property
    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            for w in self.neighbors[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.k

    def relabel(self, perm: Sequence[int]) -> "SmallGraph":
        """Return the graph with vertex v renamed perm[v]."""
        return SmallGraph.from_edges(self.k, [(perm[u], perm[v]) for u, v in self.edges], self.name)

    def with_name(self, name: str) -> "SmallGraph":
        return SmallGraph(k=self.k, edges=self.edges, name=name)

    def literal(self) -> str:
        """Edge-list literal such as '0-1,1-2,0-2'."""
        if not self.edges:
            return f"k={self.k}"
        return ",".join(f"{u}-{v}" for u, v in self.edges)

    def __str__(self) -> str:
        return self.name or self.literal()


@lru_cache(maxsize=None)
def _edge_set(g: SmallGraph) -> FrozenSet[Edge]:
    return frozenset(g.edges)


@lru_cache(maxsize=None)
def _neighbors(g: SmallGraph) -> Tuple[Tuple[int, ...], ...]:
    nbrs: List[List[int]] = [[] for _ in range(g.k)]
    for u, v in g.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    return tuple(tuple(sorted(nb)) for nb in nbrs)


def parse_edge_literal(text: str, name: str = "") -> SmallGraph:
    """
    Parse '0-1,1-2,0-2'. The vertex count is one more than the largest id.
    """
    pairs = []
    for token in text.replace(" ", "").split(","):
        if not token:
            continue
        parts = token.split("-")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise MotifError(f"malformed edge '{token}' in motif literal '{text}'")
        pairs.append((int(parts[0]), int(parts[1])))
    if not pairs:
        raise MotifError(f"motif literal '{text}' has no edges")
    k = max(max(p) for p in pairs) + 1
    return SmallGraph.from_edges(k, pairs, name=name)


# Canonical form
@dataclass(frozen=True)
class CanonicalForm:
    code: str  # "<k>:<upper-triangle bits in canonical order>"
    relabeling: Tuple[int, ...]  # relabeling[old] = new

    @property
    def k(self) -> int:
        return int(self.code.split(":", 1)[0])

    def edge_count(self) -> int:
        return self.code.split(":", 1)[1].count("1")


@dataclass(frozen=True)
class SymmetryInfo:
    automorphism_count: int
    orbits: Tuple[Tuple[int, ...], ...]
    degree_sequence: Tuple[int, ...]
    degree1_count: int

    def orbit_of(self, v: int) -> int:
        for index, orbit in enumerate(self.orbits):
            if v in orbit:
                return index
        raise KeyError(v)


def _refine(nbrs: Sequence[Sequence[int]], colors: List[int]) -> List[int]:
    """Equitable refinement; colors are ranks, refined stably."""
    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[w] for w in nbrs[v])))
            for v in range(len(colors))
        ]
        ranking = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
        refined = [ranking[sig] for sig in signatures]
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def _encode(adjacency: np.ndarray, order: Sequence[int]) -> str:
    # order[i] is the old vertex placed at canonical position i
    permuted = adjacency[np.ix_(order, order)]
    rows, cols = np.triu_indices(len(order), k=1)
    return "".join("1" if bit else "0" for bit in permuted[rows, cols])


def _search_leaves(g: SmallGraph) -> List[Tuple[str, Tuple[int, ...]]]:
    nbrs = g.neighbors
    adjacency = g.adjacency
    leaves: List[Tuple[str, Tuple[int, ...]]] = []

    def descend(colors: List[int]) -> None:
        colors = _refine(nbrs, colors)
        if len(set(colors)) == g.k:
            order = tuple(sorted(range(g.k), key=lambda v: colors[v]))
            leaves.append((_encode(adjacency, order), order))
            return
        cells: Dict[int, List[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = min(c for c, members in cells.items() if len(members) > 1)
        for v in cells[target]:
            individualized = [2 * c + (0 if c != target or u == v else 1) for u, c in enumerate(colors)]
            descend(individualized)

    descend([0] * g.k)
    return leaves


@lru_cache(maxsize=200_000)
def _canonical_leaves(g: SmallGraph) -> Tuple[str, Tuple[Tuple[int, ...], ...]]:
    leaves = _search_leaves(g)
    best = max(code for code, _ in leaves)
    orders = tuple(order for code, order in leaves if code == best)
    return best, orders


def canonical_form(g: SmallGraph) -> CanonicalForm:
    """
    Isomorphism-invariant form; equal for two graphs iff they are isomorphic.
    """
    if not 1 <= g.k <= MAX_OPTIMIZE_VERTICES:
        raise MotifError(f"canonical form supports 1..{MAX_OPTIMIZE_VERTICES} vertices, got {g.k}")
    bits, orders = _canonical_leaves(SmallGraph(g.k, g.edges))
    order = orders[0]
    relabeling = [0] * g.k
    for new, old in enumerate(order):
        relabeling[old] = new
    return CanonicalForm(code=f"{g.k}:{bits}", relabeling=tuple(relabeling))


def canonical_graph(g: SmallGraph) -> SmallGraph:
    form = canonical_form(g)
    return g.relabel(form.relabeling)


def symmetry_info(g: SmallGraph) -> SymmetryInfo:
    if g.k > MAX_MOTIF_VERTICES:
        raise MotifError(f"symmetry analysis supports up to {MAX_MOTIF_VERTICES} vertices")
    if not g.is_connected:
        raise MotifError(f"motif {g} is not connected")
    _, orders = _canonical_leaves(SmallGraph(g.k, g.edges))
    # Leaves with the best code differ by exactly one automorphism each
    base = orders[0]
    parent = list(range(g.k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for order in orders[1:]:
        for position in range(g.k):
            a, b = find(base[position]), find(order[position])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = {}
    for v in range(g.k):
        groups.setdefault(find(v), []).append(v)
    orbits = tuple(sorted(tuple(sorted(members)) for members in groups.values()))
    degrees = g.degrees
    return SymmetryInfo(
        automorphism_count=len(orders),
        orbits=orbits,
        degree_sequence=degrees,
        degree1_count=sum(1 for d in degrees if d == 1),
    )


def is_isomorphic(g1: SmallGraph, g2: SmallGraph) -> bool:
    return g1.k == g2.k and g1.m == g2.m and canonical_form(g1).code == canonical_form(g2).code


def spanning_copies(pattern: SmallGraph, host: SmallGraph, induced: bool = False) -> int:
    """
    Copies of pattern using every vertex of host (both on k vertices).
    """
    if pattern.k != host.k:
        return 0
    embeddings = 0
    host_edges = host.edge_set
    for perm in itertools.permutations(range(host.k)):
        mapped = {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in pattern.edges}
        if induced:
            embeddings += mapped == host_edges
        else:
            embeddings += mapped <= host_edges
    return embeddings // symmetry_info(pattern).automorphism_count if embeddings else 0


def orbit_placements(pattern: SmallGraph, host: SmallGraph) -> np.ndarray:
    """
    placements[o, v]: non-induced spanning copies of pattern in host that put
    host vertex v in pattern orbit o.
    """
    info = symmetry_info(pattern)
    orbit_index = [info.orbit_of(v) for v in range(pattern.k)]
    counts = np.zeros((len(info.orbits), host.k), dtype=np.int64)
    host_edges = host.edge_set
    for perm in itertools.permutations(range(host.k)):
        mapped = {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in pattern.edges}
        if mapped <= host_edges:
            for x in range(pattern.k):
                counts[orbit_index[x], perm[x]] += 1
    return counts // info.automorphism_count
