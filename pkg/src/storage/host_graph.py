# src/storage/host_graph.py
"""
Host graphs in compressed sparse row form.

Neighbor lists are sorted by vertex id. Hidden-variable samples also carry
their weights and the mean weight used to build them.
"""

import json
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np
import pandas as pd
import scipy.sparse as sp


class HostGraph:
    """
    Simple undirected graph on vertices 0..n-1.
    """

    def __init__(
        self,
        n: int,
        indptr: np.ndarray,
        indices: np.ndarray,
        weights: Optional[np.ndarray] = None,
        mu: Optional[float] = None,
        original_ids: Optional[np.ndarray] = None,
    ):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.weights = None if weights is None else np.asarray(weights, dtype=float)
        self.mu = mu
        self.original_ids = original_ids

    @classmethod
    def from_edges(
        cls,
        n: int,
        us: np.ndarray,
        vs: np.ndarray,
        weights: Optional[np.ndarray] = None,
        mu: Optional[float] = None,
        original_ids: Optional[np.ndarray] = None,
    ) -> "HostGraph":
        """Build from edge arrays; drops self-loops and duplicate edges."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        keep = us != vs
        us, vs = us[keep], vs[keep]
        rows = np.concatenate([us, vs])
        cols = np.concatenate([vs, us])
        matrix = sp.csr_matrix((np.ones(len(rows), dtype=np.int32), (rows, cols)), shape=(n, n))
        matrix.sum_duplicates()
        matrix.sort_indices()
        return cls(n, matrix.indptr, matrix.indices, weights, mu, original_ids)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def m(self) -> int:
        return int(len(self.indices) // 2)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def adjacency_sets(self) -> List[FrozenSet[int]]:
        return [frozenset(self.neighbors(v).tolist()) for v in range(self.n)]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        position = np.searchsorted(row, v)
        return bool(position < len(row) and row[position] == v)

    def edges(self) -> Tuple[np.ndarray, np.ndarray]:
        """Each undirected edge once, as (u, v) arrays with u < v."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = rows < self.indices
        return rows[keep], self.indices[keep]

    def to_csr(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def relabel(self, perm: np.ndarray) -> "HostGraph":
        """Vertex v becomes perm[v]."""
        perm = np.asarray(perm, dtype=np.int64)
        us, vs = self.edges()
        weights = None
        if self.weights is not None:
            weights = np.empty_like(self.weights)
            weights[perm] = self.weights
        return HostGraph.from_edges(self.n, perm[us], perm[vs], weights, self.mu)

    def induced_subgraph(self, vertices: np.ndarray) -> "HostGraph":
        vertices = np.asarray(vertices, dtype=np.int64)
        position = np.full(self.n, -1, dtype=np.int64)
        position[vertices] = np.arange(len(vertices))
        us, vs = self.edges()
        keep = (position[us] >= 0) & (position[vs] >= 0)
        return HostGraph.from_edges(len(vertices), position[us[keep]], position[vs[keep]])

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        us, vs = self.edges()
        g.add_edges_from(zip(us.tolist(), vs.tolist()))
        return g

    def __repr__(self) -> str:
        return f"HostGraph(n={self.n}, m={self.m})"


def export_graph(g: HostGraph, directory: Path, metadata: Optional[Dict] = None) -> Dict[str, Path]:
    """
    Write edges.txt (one 'u v' per line), weights.tsv and metadata.json.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    us, vs = g.edges()
    paths = {
        "edges": directory / "edges.txt",
        "weights": directory / "weights.tsv",
        "metadata": directory / "metadata.json",
    }
    pd.DataFrame({"u": us, "v": vs}).to_csv(paths["edges"], sep=" ", header=False, index=False)
    frame = pd.DataFrame({"vertex": np.arange(g.n), "degree": g.degrees})
    if g.weights is not None:
        frame["weight"] = g.weights
    frame.to_csv(paths["weights"], sep="\t", index=False)
    payload = {"n": g.n, "m": g.m, "mu": g.mu}
    payload.update(metadata or {})
    paths["metadata"].write_text(json.dumps(payload, indent=2, default=str))
    return paths
