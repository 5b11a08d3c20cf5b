import networkx as nx
import numpy as np
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from src.config import COLLAB_FIXTURE_PATH, HUB_FIXTURE_PATH
from src.counting.census import census_count, count_all, induced_from_noninduced
from src.counting.orbits import orbit_degree_stats, vertex_orbit_counts
from src.counting.subgraph_counter import (
    count,
    count_backtracking,
    count_exhaustive,
    iter_embeddings,
)
from src.exceptions import CountingError
from src.ingestion.edge_list import read_edge_list
from src.motifs.catalog import GRAPHLETS_4, display_name, enumerate_connected, parse_motif, vertex_types
from src.motifs.graph import SmallGraph, symmetry_info
from src.storage.host_graph import HostGraph


def _host(nx_graph: nx.Graph) -> HostGraph:
    edges = np.array(list(nx_graph.edges()), dtype=np.int64).reshape(-1, 2)
    return HostGraph.from_edges(nx_graph.number_of_nodes(), edges[:, 0], edges[:, 1])


def _random_host(n: int, p: float, seed: int) -> HostGraph:
    return _host(nx.gnp_random_graph(n, p, seed=seed))


def _nx_count(g: HostGraph, h: SmallGraph, induced: bool) -> int:
    pattern = nx.Graph()
    pattern.add_nodes_from(range(h.k))
    pattern.add_edges_from(h.edges)
    matcher = GraphMatcher(g.to_networkx(), pattern)
    found = matcher.subgraph_isomorphisms_iter() if induced else matcher.subgraph_monomorphisms_iter()
    return sum(1 for _ in found) // symmetry_info(h).automorphism_count


@pytest.fixture(scope="module")
def collab():
    return read_edge_list(COLLAB_FIXTURE_PATH)


@pytest.fixture(scope="module")
def hub_tree():
    return read_edge_list(HUB_FIXTURE_PATH)


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("induced", [False, True])
def test_census_matches_networkx(seed, induced):
    g = _random_host(14, 0.35, seed)
    for k in (3, 4):
        for h in enumerate_connected(k):
            assert census_count(g, h, induced) == _nx_count(g, h, induced), (str(h), induced)


@pytest.mark.parametrize("seed", range(3))
def test_census_matches_exhaustive(seed):
    g = _random_host(16, 0.3, 100 + seed)
    for h in enumerate_connected(4):
        assert census_count(g, h) == count_exhaustive(g, h)
        assert census_count(g, h, induced=True) == count_exhaustive(g, h, induced=True)


@pytest.mark.parametrize("name", ["bowtie", "house", "c5", "star4", "path5", "k5e"])
@pytest.mark.parametrize("induced", [False, True])
def test_backtracking_matches_exhaustive(name, induced):
    g = _random_host(11, 0.45, 7)
    h = parse_motif(name)
    assert count_backtracking(g, h, induced) == count_exhaustive(g, h, induced)


def test_backtracking_agrees_across_threads():
    g = _random_host(30, 0.2, 3)
    h = parse_motif("house")
    assert count_backtracking(g, h, threads=1) == count_backtracking(g, h, threads=2)


def test_count_picks_a_method():
    g = _random_host(10, 0.4, 1)
    assert count(g, parse_motif("paw")).method == "census"
    result = count(g, parse_motif("bowtie"), induced=True)
    assert result.method == "backtracking"
    assert result.motif == "bowtie" and result.induced


def test_count_rejects_large_and_disconnected():
    g = _random_host(10, 0.4, 1)
    with pytest.raises(CountingError):
        count(g, parse_motif("0-1,1-2,2-3,3-4,4-5"))
    with pytest.raises(CountingError):
        count(g, SmallGraph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(CountingError):
        vertex_orbit_counts(g, 5)


def test_collab_fixture_counts(collab):
    assert (collab.n, collab.m) == (81, 140)
    induced = {name: census_count(collab, parse_motif(name), induced=True) for name in GRAPHLETS_4}
    assert induced == {"k4": 20, "diamond": 0, "square": 0, "paw": 60, "claw": 1140, "path": 1140}
    assert census_count(collab, parse_motif("triangle")) == 80
    assert census_count(collab, parse_motif("wedge"), induced=True) == 250


def test_hub_tree_fixture_counts(hub_tree):
    assert (hub_tree.n, hub_tree.m) == (61, 60)
    assert census_count(hub_tree, parse_motif("triangle")) == 0
    assert census_count(hub_tree, parse_motif("claw"), induced=True) == 320
    assert census_count(hub_tree, parse_motif("path"), induced=True) == 450


def test_count_all_frame(collab):
    frame = count_all(collab, 4, induced=True)
    assert list(frame.columns) == ["motif", "vertices", "edges", "induced", "count", "method"]
    assert len(frame) == 6
    counts = dict(zip(frame["motif"], frame["count"]))
    assert counts["claw"] == 1140 and counts["k4"] == 20
    assert set(frame["method"]) == {"census"}


def _orbit_counts_by_embeddings(g: HostGraph, k: int, induced: bool) -> np.ndarray:
    types = vertex_types(k)
    out = np.zeros((g.n, len(types)), dtype=np.int64)
    for column, (_, name, orbit) in enumerate(types):
        h = parse_motif(name)
        for embedding in iter_embeddings(g, h, induced):
            for v in orbit:
                out[embedding[v], column] += 1
        out[:, column] //= symmetry_info(h).automorphism_count
    return out


@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("induced", [False, True])
def test_vertex_orbit_counts_match_embeddings(k, induced):
    g = _random_host(15, 0.3, 21)
    frame = vertex_orbit_counts(g, k, induced)
    assert list(frame.columns) == [label for label, _, _ in vertex_types(k)]
    np.testing.assert_array_equal(frame.to_numpy(), _orbit_counts_by_embeddings(g, k, induced))


def test_orbit_column_sums_are_counts_times_orbit_size(collab):
    frame = vertex_orbit_counts(collab, 4, induced=True)
    for label, name, orbit in vertex_types(4):
        expected = census_count(collab, parse_motif(name), induced=True) * len(orbit)
        assert frame[label].sum() == expected, label


def _star(leaves: int) -> HostGraph:
    return HostGraph.from_edges(leaves + 1, np.zeros(leaves, dtype=np.int64), np.arange(1, leaves + 1))


def test_orbit_degree_stats_on_a_star():
    stats = orbit_degree_stats(_star(8), parse_motif("claw"))
    rows = {row.vertex_type: row for row in stats.rows}
    assert rows["t8"].occurrences == 3 * 56 and rows["t8"].mean_degree == pytest.approx(1.0)
    assert rows["t9"].occurrences == 56 and rows["t9"].mean_degree == pytest.approx(8.0)
    assert not stats.capped


def test_orbit_degree_stats_sampling_keeps_exact_occurrences():
    h = parse_motif("star4")
    stats = orbit_degree_stats(_star(8), h, induced=False, sample_cap=100)
    assert stats.capped and stats.sampled_embeddings == 100
    centre = max(range(h.k), key=lambda v: h.degrees[v])
    rows = {row.orbit: row for row in stats.rows}
    assert rows[(centre,)].occurrences == 70
    assert rows[(centre,)].mean_degree == pytest.approx(8.0)
    leaves = tuple(v for v in range(h.k) if v != centre)
    assert rows[leaves].occurrences == 280
    assert rows[leaves].mean_degree == pytest.approx(1.0)
    assert list(stats.to_frame().columns) == ["orbit", "vertex_type", "occurrences", "mean_degree", "log_mean"]


@pytest.mark.parametrize("seed", range(5))
def test_square_motifs_split_into_induced_graphlets(seed):
    g = _random_host(14, 0.4, 300 + seed)
    noninduced = {display_name(h): count_exhaustive(g, h) for h in enumerate_connected(4)}
    induced = induced_from_noninduced(4, noninduced)
    for h in enumerate_connected(4):
        assert induced[display_name(h)] == count_exhaustive(g, h, induced=True)
    # each diamond holds one 4-cycle, each K4 three
    assert noninduced["square"] == induced["square"] + induced["diamond"] + 3 * induced["k4"]
    assert census_count(g, parse_motif("square")) == noninduced["square"]


@pytest.mark.slow
def test_count_matches_exhaustive_on_random_hosts():
    rng = np.random.default_rng(2024)
    motifs = [h for k in (3, 4, 5) for h in enumerate_connected(k)]
    for trial in range(100):
        n = int(rng.integers(6, 12))
        g = _random_host(n, float(rng.uniform(0.2, 0.6)), 1000 + trial)
        for h in motifs:
            for induced in (False, True):
                assert count(g, h, induced).count == count_exhaustive(g, h, induced), (trial, str(h), induced)
