# src/counting/census.py
"""
Closed-form subgraph census for motifs with up to four vertices.

Non-induced counts come from degrees, per-edge common-neighbor counts c_e,
squares of A^2 entries and a K4 loop over triangles:

    wedge    = sum C(d, 2)            triangle = sum c_e / 3
    claw     = sum C(d, 3)            path     = sum_E (d_u - 1)(d_v - 1) - 3T
    paw      = sum_v t_v (d_v - 2)    square   = sum_{u != w} C(P_uw, 2) / 4
    diamond  = sum_E C(c_e, 2)        k4       = sum_v K4_v / 4

Induced counts follow by back-substitution through the containment matrix.
"""

import weakref
from functools import cached_property
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from src.exceptions import CountingError
from src.motifs.catalog import alias_for, containment_matrix, display_name, enumerate_connected
from src.motifs.graph import SmallGraph
from src.storage.host_graph import HostGraph

ROW_BLOCK = 1024


def choose2(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.int64)
    return x * (x - 1) // 2


def choose3(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.int64)
    return x * (x - 1) * (x - 2) // 6


class CensusInputs:
    """
    Per-graph quantities shared by the census formulas, computed on demand.
    """

    def __init__(self, g: HostGraph):
        self.g = g
        self.degrees = g.degrees.astype(np.int64)
        self.rows = np.repeat(np.arange(g.n, dtype=np.int64), self.degrees)
        self.cols = g.indices

    def neighbor_sum(self, values: np.ndarray) -> np.ndarray:
        """out[v] = sum over u in N(v) of values aligned with CSR entries."""
        out = np.zeros(self.g.n, dtype=np.int64)
        np.add.at(out, self.rows, values.astype(np.int64))
        return out

    @cached_property
    def _block_products(self):
        csr = self.g.to_csr()
        common: List[np.ndarray] = []
        squares = np.zeros(self.g.n, dtype=np.int64)
        for start in range(0, self.g.n, ROW_BLOCK):
            stop = min(start + ROW_BLOCK, self.g.n)
            block = csr[start:stop]
            product = (block @ csr).tocsr()
            # c_e aligned with the block's CSR entries; adding the block keeps its pattern
            aligned = (block + product.multiply(block)).tocsr()
            aligned.sort_indices()
            common.append(aligned.data.astype(np.int64) - 1)
            product = product.tocoo()
            off_diagonal = product.row + start != product.col
            pairs = choose2(product.data[off_diagonal])
            np.add.at(squares, product.row[off_diagonal] + start, pairs)
        c = np.concatenate(common) if common else np.empty(0, dtype=np.int64)
        return c, squares

    @property
    def common(self) -> np.ndarray:
        """c_e for every directed CSR entry (v, u): common neighbors of v and u."""
        return self._block_products[0]

    @property
    def square_pairs(self) -> np.ndarray:
        """sum over w != v of C(P_vw, 2): 4-cycles through v."""
        return self._block_products[1]

    @cached_property
    def triangles_per_vertex(self) -> np.ndarray:
        return self.neighbor_sum(self.common) // 2

    @cached_property
    def triangles(self) -> int:
        return int(self.triangles_per_vertex.sum() // 3)

    @cached_property
    def _triangle_scan(self):
        """K4s per vertex and diamond corner counts per vertex."""
        adj = self.g.adjacency_sets
        n = self.g.n
        k4 = np.zeros(n, dtype=np.int64)
        corners = np.zeros(n, dtype=np.int64)
        common = {}
        for (v, u), c in zip(zip(self.rows.tolist(), self.cols.tolist()), self.common.tolist()):
            if v < u and c:
                common[(v, u)] = c
        for (u, v), c_uv in common.items():
            shared = adj[u] & adj[v]
            for w in shared:
                if w <= v:
                    continue
                # triangle u < v < w
                corners[u] += common[(v, w)] - 1
                corners[v] += common[(u, w)] - 1
                corners[w] += c_uv - 1
                for x in shared & adj[w]:
                    if x > w:
                        k4[[u, v, w, x]] += 1
        return k4, corners

    @property
    def k4_per_vertex(self) -> np.ndarray:
        return self._triangle_scan[0]

    @property
    def diamond_corners(self) -> np.ndarray:
        return self._triangle_scan[1]

    def noninduced(self, name: str) -> int:
        d, c = self.degrees, None
        if name == "vertex":
            return self.g.n
        if name == "edge":
            return self.g.m
        if name == "wedge":
            return int(choose2(d).sum())
        if name == "claw":
            return int(choose3(d).sum())
        if name == "triangle":
            return self.triangles
        c = self.common
        if name == "path":
            directed = ((d[self.rows] - 1) * (d[self.cols] - 1)).sum()
            return int(directed // 2 - 3 * self.triangles)
        if name == "paw":
            return int((self.triangles_per_vertex * (d - 2)).sum())
        if name == "square":
            return int(self.square_pairs.sum() // 4)
        if name == "diamond":
            return int(choose2(c).sum() // 2)
        if name == "k4":
            return int(self.k4_per_vertex.sum() // 4)
        raise CountingError(f"no census formula for '{name}'")


_INPUTS: "weakref.WeakKeyDictionary[HostGraph, CensusInputs]" = weakref.WeakKeyDictionary()


def census_inputs(g: HostGraph) -> CensusInputs:
    if g not in _INPUTS:
        _INPUTS[g] = CensusInputs(g)
    return _INPUTS[g]


def supports_census(h: SmallGraph) -> bool:
    return h.k <= 4


def induced_from_noninduced(k: int, noninduced: Dict[str, int]) -> Dict[str, int]:
    """
    Solve noninduced = M @ induced over the connected classes on k vertices.
    Classes come ordered by edge count, so back-substitution from the
    densest class is exact in integers.
    """
    classes, matrix = containment_matrix(k)
    names = [display_name(c) for c in classes]
    induced: Dict[str, int] = {}
    for j in range(len(classes) - 1, -1, -1):
        value = int(noninduced[names[j]])
        for l in range(j + 1, len(classes)):
            value -= int(matrix[j, l]) * induced[names[l]]
        induced[names[j]] = value
    return induced


def census_count(g: HostGraph, h: SmallGraph, induced: bool = False) -> int:
    if h.k == 1:
        return g.n
    name = alias_for(h)
    if name is None or h.k > 4:
        raise CountingError(f"no census formula for motif {h}")
    inputs = census_inputs(g)
    if not induced or h.k <= 2:
        return inputs.noninduced(name)
    noninduced = {display_name(c): inputs.noninduced(display_name(c)) for c in enumerate_connected(h.k)}
    return induced_from_noninduced(h.k, noninduced)[name]


def count_all(g: HostGraph, k: int, induced: bool = False, threads: Optional[int] = None) -> pd.DataFrame:
    """
    Counts of every connected class on k vertices, in enumeration order.
    """
    from src.counting.subgraph_counter import count

    rows = []
    for h in enumerate_connected(k):
        result = count(g, h, induced, threads)
        rows.append({
            "motif": display_name(h),
            "vertices": h.k,
            "edges": h.m,
            "induced": induced,
            "count": result.count,
            "method": result.method,
        })
    return pd.DataFrame(rows)
