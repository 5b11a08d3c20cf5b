import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import MotifError
from src.motifs.catalog import (
    ALIASES,
    ATLAS,
    ATLAS_FIVE,
    alias_for,
    containment_matrix,
    enumerate_connected,
    orbit_containment,
    parse_motif,
    vertex_types,
)
from src.motifs.graph import (
    SmallGraph,
    canonical_form,
    is_isomorphic,
    parse_edge_literal,
    spanning_copies,
    symmetry_info,
)


def _to_nx(g: SmallGraph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.k))
    out.add_edges_from(g.edges)
    return out


@st.composite
def small_graphs(draw, max_k=6):
    k = draw(st.integers(min_value=2, max_value=max_k))
    pairs = list(itertools.combinations(range(k), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True))
    return SmallGraph.from_edges(k, chosen)


def test_parse_literal_and_alias():
    g = parse_edge_literal("0-1, 1-2,0-2")
    assert g.k == 3
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert parse_motif("Triangle").name == "triangle"
    assert parse_motif("0-1,1-2,2-0").name == "triangle"


@pytest.mark.parametrize("text", ["", "hexagon", "0-1,2-3", "0-0", "a-b"])
def test_parse_motif_rejects(text):
    with pytest.raises(MotifError):
        parse_motif(text)


def test_parse_motif_rejects_too_many_vertices():
    path9 = ",".join(f"{i}-{i + 1}" for i in range(8))
    with pytest.raises(MotifError):
        parse_motif(path9)


def test_every_alias_is_connected_and_distinct():
    codes = set()
    for name, literal in ALIASES.items():
        g = parse_motif(name)
        assert g.is_connected, name
        codes.add(canonical_form(g).code)
    assert len(codes) == len(ALIASES)


def test_atlas_covers_all_five_vertex_classes():
    assert len(ATLAS_FIVE) == 21
    assert {alias_for(g) for g in enumerate_connected(5)} == set(ATLAS_FIVE)
    assert len(ATLAS) == 29


@pytest.mark.parametrize("k,expected", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)])
def test_connected_class_counts(k, expected):
    assert len(enumerate_connected(k)) == expected


@given(small_graphs(), st.randoms())
@settings(max_examples=60, deadline=None)
def test_canonical_form_is_relabeling_invariant(g, rnd):
    perm = list(range(g.k))
    rnd.shuffle(perm)
    assert canonical_form(g).code == canonical_form(g.relabel(perm)).code


@given(small_graphs(max_k=5), small_graphs(max_k=5))
@settings(max_examples=80, deadline=None)
def test_isomorphism_agrees_with_networkx(g1, g2):
    assert is_isomorphic(g1, g2) == (g1.k == g2.k and nx.is_isomorphic(_to_nx(g1), _to_nx(g2)))


@pytest.mark.parametrize("name,aut,orbit_sizes", [
    ("triangle", 6, [3]),
    ("wedge", 2, [1, 2]),
    ("k4", 24, [4]),
    ("diamond", 4, [2, 2]),
    ("square", 8, [4]),
    ("paw", 2, [1, 1, 2]),
    ("claw", 6, [1, 3]),
    ("path", 2, [2, 2]),
    ("k5", 120, [5]),
    ("star4", 24, [1, 4]),
    ("bowtie", 8, [1, 4]),
    ("c5", 10, [5]),
])
def test_symmetry_info(name, aut, orbit_sizes):
    info = symmetry_info(parse_motif(name))
    assert info.automorphism_count == aut
    assert sorted(len(o) for o in info.orbits) == orbit_sizes


@given(small_graphs(max_k=5))
@settings(max_examples=40, deadline=None)
def test_automorphism_count_matches_networkx(g):
    if not g.is_connected:
        return
    graph = _to_nx(g)
    expected = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(graph, graph).isomorphisms_iter())
    assert symmetry_info(g).automorphism_count == expected


def test_degree_one_count():
    assert symmetry_info(parse_motif("claw")).degree1_count == 3
    assert symmetry_info(parse_motif("square")).degree1_count == 0


def test_containment_matrix_four_vertices():
    classes, matrix = containment_matrix(4)
    names = [alias_for(c) for c in classes]
    index = {name: i for i, name in enumerate(names)}
    assert matrix[index["square"], index["k4"]] == 3
    assert matrix[index["square"], index["diamond"]] == 1
    assert matrix[index["path"], index["k4"]] == 12
    assert matrix[index["claw"], index["k4"]] == 4
    assert matrix[index["paw"], index["diamond"]] == 4
    assert np.all(np.diag(matrix) == 1)


def test_spanning_copies_induced_is_identity():
    square = parse_motif("square")
    assert spanning_copies(square, parse_motif("k4"), induced=True) == 0
    assert spanning_copies(square, square, induced=True) == 1


def test_vertex_types_order():
    types = vertex_types(4)
    assert [label for label, _, _ in types] == [f"t{i}" for i in range(1, 12)]
    assert [name for _, name, _ in types] == [
        "k4", "diamond", "diamond", "square", "paw", "paw", "paw", "claw", "claw", "path", "path",
    ]
    assert [len(orbit) for _, _, orbit in types] == [4, 2, 2, 4, 1, 2, 1, 3, 1, 2, 2]


def test_orbit_containment_diagonal_and_known_entries():
    matrix = orbit_containment(4)
    assert np.all(np.diag(matrix) == 1)
    # a K4 vertex centres one claw and is a leaf of three
    assert matrix[8, 0] == 1
    assert matrix[7, 0] == 3
    assert matrix[9, 0] == 6 and matrix[10, 0] == 6


def _permutation_search(g: SmallGraph):
    """Largest adjacency code over all k! labelings, automorphisms and orbits."""
    edges = g.edge_set
    pairs = list(itertools.combinations(range(g.k), 2))
    best = None
    automorphisms = []
    for perm in itertools.permutations(range(g.k)):
        relabeled = {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges}
        code = tuple((u, v) in relabeled for u, v in pairs)
        best = code if best is None else max(best, code)
        if relabeled == edges:
            automorphisms.append(perm)
    orbits = {tuple(sorted({perm[v] for perm in automorphisms})) for v in range(g.k)}
    return best, len(automorphisms), tuple(sorted(orbits))


def test_canonical_form_matches_permutation_search_on_the_atlas():
    graphs = [parse_motif(name) for name in ATLAS]
    searched = [_permutation_search(g) for g in graphs]
    rng = np.random.default_rng(5)
    for g, (_, aut, orbits) in zip(graphs, searched):
        info = symmetry_info(g)
        assert info.automorphism_count == aut, g.name
        assert info.orbits == orbits, g.name
        for _ in range(5):
            shuffled = g.relabel([int(v) for v in rng.permutation(g.k)])
            assert canonical_form(shuffled).code == canonical_form(g).code
    for (g1, s1), (g2, s2) in itertools.combinations(zip(graphs, searched), 2):
        if g1.k == g2.k:
            assert (canonical_form(g1).code == canonical_form(g2).code) == (s1[0] == s2[0])
