# src/motifs/merge.py
"""
Merged graphs: all ways two copies of a motif can overlap.

Each labeled identification map picks r >= 1 vertices of the first copy,
r vertices of the second and a bijection between them. Maps that produce
isomorphic merged graphs are grouped; the group size is the constant
that multiplies the pair count of that merged graph in the variance.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Tuple

from src.exceptions import MotifError
from src.motifs.catalog import display_name
from src.motifs.graph import SmallGraph, canonical_form, canonical_graph


@dataclass(frozen=True)
class MergeEntry:
    merged: SmallGraph
    constant: int
    overlap: int

    @property
    def vertices(self) -> int:
        return self.merged.k

    @property
    def name(self) -> str:
        return display_name(self.merged)


@dataclass(frozen=True)
class MergeFamily:
    base: SmallGraph
    induced: bool
    entries: Tuple[MergeEntry, ...]

    @property
    def total_constant(self) -> int:
        return sum(entry.constant for entry in self.entries)

    def constants_by_name(self) -> Dict[str, int]:
        return {entry.name: entry.constant for entry in self.entries}


def identification_map_total(k: int) -> int:
    """Labeled identification maps between two k-vertex copies."""
    return sum(comb(k, r) ** 2 * factorial(r) for r in range(1, k + 1))


def _merge(base: SmallGraph, left: Tuple[int, ...], right: Tuple[int, ...]) -> Tuple[SmallGraph, Dict[int, int]]:
    k = base.k
    # second copy: identified vertices map into the first copy, the rest get k, k+1, ...
    image: Dict[int, int] = dict(zip(right, left))
    next_label = k
    for v in range(k):
        if v not in image:
            image[v] = next_label
            next_label += 1
    edges = set(base.edges)
    for u, v in base.edges:
        a, b = image[u], image[v]
        edges.add((min(a, b), max(a, b)))
    return SmallGraph.from_edges(next_label, edges), image


def _copies_induced(base: SmallGraph, merged: SmallGraph, image: Dict[int, int]) -> bool:
    first = {(u, v) for u, v in merged.edges if u < base.k and v < base.k}
    if first != set(base.edges):
        return False
    second = {
        (min(image[u], image[v]), max(image[u], image[v]))
        for u, v in itertools.combinations(range(base.k), 2)
        if merged.has_edge(image[u], image[v])
    }
    expected = {(min(image[u], image[v]), max(image[u], image[v])) for u, v in base.edges}
    return second == expected


@lru_cache(maxsize=None)
def merge_enumerate(base: SmallGraph, induced: bool = False) -> MergeFamily:
    """
    Group every identification map of two copies of base by the isomorphism
    class of the merged graph.

    In induced mode a map only counts when both copies stay induced in the
    merged graph. Entries are ordered by vertex count (largest first), then
    canonical code.
    """
    if base.k < 2:
        raise MotifError(f"merging needs a motif with at least one edge, got k={base.k}")
    if not base.is_connected:
        raise MotifError(f"motif {base} is not connected")
    if 2 * base.k - 1 > 9:
        raise MotifError(f"merging supports motifs up to 5 vertices, got {base.k}")
    groups: Dict[str, List] = {}
    form_cache: Dict[Tuple[int, Tuple], str] = {}
    for r in range(1, base.k + 1):
        for left in itertools.combinations(range(base.k), r):
            for right_set in itertools.combinations(range(base.k), r):
                for right in itertools.permutations(right_set):
                    merged, image = _merge(base, left, right)
                    if induced and not _copies_induced(base, merged, image):
                        continue
                    key = (merged.k, merged.edges)
                    code = form_cache.get(key)
                    if code is None:
                        code = form_cache[key] = canonical_form(merged).code
                    if code not in groups:
                        groups[code] = [merged, 0, r]
                    groups[code][1] += 1
    entries = [
        MergeEntry(merged=canonical_graph(merged), constant=count, overlap=r)
        for merged, count, r in groups.values()
    ]
    entries.sort(key=lambda e: (-e.merged.k, canonical_form(e.merged).code))
    return MergeFamily(base=base, induced=induced, entries=tuple(entries))
