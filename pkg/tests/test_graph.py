import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prodbook import Graph, bipartition, generate, graph_from_edge_list, random_pathwidth, vertex_separation
from prodbook.graph import (
    BLACK,
    WHITE,
    GraphFormatError,
    cycle,
    graph_to_edge_list,
    is_path_graph,
    load_graph,
    path_vertex_sequence,
)


def test_edge_list_path():
    g = graph_from_edge_list("n=3; 0 1; 1 2")
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))


def test_edge_list_duplicates_collapse():
    g = graph_from_edge_list("n=2; 0 1; 0 1")
    assert g.m == 1


def test_edge_list_reversed_duplicate_collapses():
    assert graph_from_edge_list("n=2\n0 1\n1 0\n").m == 1


@pytest.mark.parametrize(
    "text",
    ["n=2; 0 0", "n=2; 0 2", "n=3; 0 x", "n=3; 0 1 2", "0 1", "n=-1", "n=3; -1 2"],
)
def test_edge_list_rejects(text):
    with pytest.raises(GraphFormatError):
        graph_from_edge_list(text)


def test_edge_list_comments_and_blank_lines():
    g = graph_from_edge_list("# a triangle\nn=3\n\n0 1  # first\n1 2\n2 0\n")
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_edge_list_roundtrip():
    g = generate("caterpillar", 3, 2)
    assert graph_from_edge_list(graph_to_edge_list(g)) == g


def test_json_roundtrip_and_sniffing():
    g = generate("cycle", 5)
    text = json.dumps(g.to_json())
    assert Graph.from_json(json.loads(text)) == g
    assert load_graph(text) == g
    assert load_graph(graph_to_edge_list(g)) == g


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(2, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 5)])


def test_generate_examples():
    p5 = generate("path", 5)
    assert (p5.n, p5.m) == (5, 4)
    k4 = generate("complete", 4)
    assert (k4.n, k4.m) == (4, 6)
    assert generate("star", 3).degrees() == [3, 1, 1, 1]
    assert generate("complete_bipartite", 2, 3).m == 6
    assert generate("caterpillar", 3, 2).n == 9


@pytest.mark.parametrize("bad", [("nope", 3), ("path",), ("path", 0), ("cycle", 2), ("complete_bipartite", 2)])
def test_generate_rejects(bad):
    with pytest.raises(ValueError):
        generate(*bad)


@pytest.mark.parametrize("n", range(1, 12))
def test_path_shape(n):
    g = generate("path", n)
    assert g.m == n - 1
    assert g.max_degree() <= 2
    assert is_path_graph(g)


@pytest.mark.parametrize("seed", range(10))
def test_random_pathwidth_witness(seed):
    g, order = random_pathwidth(2, 10, seed)
    assert vertex_separation(g, order).max_cut <= 2
    assert generate("random_pathwidth", 2, 10, seed) == g


def test_random_pathwidth_reproducible():
    assert random_pathwidth(3, 12, 7) == random_pathwidth(3, 12, 7)
    assert random_pathwidth(3, 12, 7)[0] != random_pathwidth(3, 12, 8)[0]


def test_bipartition_examples():
    assert bipartition(generate("path", 4)) == (WHITE, BLACK, WHITE, BLACK)
    assert bipartition(generate("complete", 3)) is None
    assert bipartition(cycle(6)) == (WHITE, BLACK, WHITE, BLACK, WHITE, BLACK)


def test_bipartition_roots_white():
    g = Graph(5, [(1, 2), (3, 4)])
    col = bipartition(g)
    assert col[0] == col[1] == col[3] == WHITE
    assert col[2] == col[4] == BLACK


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


@given(graphs())
def test_bipartition_has_no_monochromatic_edge(g):
    col = bipartition(g)
    if col is not None:
        assert all(col[u] != col[v] for u, v in g.edges)


def test_path_vertex_sequence():
    g = Graph(4, [(2, 0), (0, 3), (3, 1)])
    assert path_vertex_sequence(g) == [1, 3, 0, 2]
    with pytest.raises(ValueError):
        path_vertex_sequence(cycle(4))
