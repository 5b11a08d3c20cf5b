# src/ingestion/edge_list.py
"""
Edge-list reader.

One edge per line as two non-negative integer ids separated by whitespace.
Lines starting with '#' or '%' and blank lines are skipped; extra columns
(weights, timestamps) are ignored. Ids are compacted to 0..n-1 in sorted
order; self-loops and duplicate or reversed edges are dropped.
"""

import gzip
import logging
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from src.exceptions import EdgeListParseError
from src.storage.host_graph import HostGraph

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")


def _bad_line(message: str, number: int) -> EdgeListParseError:
    logger.error("edge list line %d: %s", number, message)
    return EdgeListParseError(message, number)


def parse_edge_list(lines: Iterable[str]) -> HostGraph:
    """
    Build a HostGraph from edge-list lines.

    Raises:
        EdgeListParseError: with the 1-based line number of the bad line
    """
    us, vs = [], []
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise _bad_line("expected two vertex ids", number)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise _bad_line(f"non-integer vertex id in '{line}'", number) from exc
        if u < 0 or v < 0:
            raise _bad_line(f"negative vertex id in '{line}'", number)
        us.append(u)
        vs.append(v)
    raw_u = np.array(us, dtype=np.int64)
    raw_v = np.array(vs, dtype=np.int64)
    ids, compact = np.unique(np.concatenate([raw_u, raw_v]), return_inverse=True)
    compact = compact.reshape(-1)
    half = len(raw_u)
    return HostGraph.from_edges(len(ids), compact[:half], compact[half:], original_ids=ids)


def read_edge_list(path: Union[str, Path]) -> HostGraph:
    """Read a plain or gzip-compressed edge list."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"edge list not found: {path}")
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rt", encoding="utf-8") as handle:
        g = parse_edge_list(handle)
    logger.info("read %s: n=%d, m=%d", path.name, g.n, g.m)
    return g
