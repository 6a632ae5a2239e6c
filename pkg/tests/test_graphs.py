from fractions import Fraction

import pytest

from pstlab.graphs import (
    Graph,
    GraphError,
    GraphParseError,
    bfs_distances,
    bridges,
    connected_components,
    delete_vertices,
    double_star,
    eccentricity,
    hypercube,
    is_connected,
    laplacian_form,
    load_graph_text,
    parse_graph,
    parse_graph6,
    path,
    separating_cut_edge,
    star,
)


def test_from_edges_normalizes_orientation():
    G = Graph.from_edges(3, [(2, 0, 1), (1, 2, "1/2")])
    assert G.edges == ((0, 2, Fraction(1)), (1, 2, Fraction(1, 2)))
    assert G.weight(0, 2) == 1
    assert G.weight(2, 0) == 1
    assert G.weight(0, 1) == 0


def test_zero_weight_edges_dropped():
    G = Graph.from_edges(2, [(0, 1, 0)])
    assert G.edges == ()


def test_conflicting_weights_rejected():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1, 1), (1, 0, 2)])


def test_graph_is_hashable_and_equal_by_value():
    a = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
    b = Graph.from_edges(3, [(1, 2, 1), (0, 1, 1)])
    assert a == b
    assert hash(a) == hash(b)


def test_out_of_range_edge():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2, 1)])


# -- parsing ----------------------------------------------------------------


def test_parse_edge_list_with_weights_and_comments():
    text = """
    # triangle with one rational weight
    3
    0 1
    1 2 2
    0 2 1/3
    """
    G = parse_graph(text)
    assert G.n == 3
    assert G.weight(0, 2) == Fraction(1, 3)
    assert G.weight(1, 2) == 2


def test_parse_rejects_garbage():
    for bad in ["", "x", "2\n0 1 2 3", "2\n0 5", "2\n0 1 1/0"]:
        with pytest.raises(GraphParseError):
            parse_graph(bad)


def test_parse_graph6_small():
    # "D?{" encodes the star K_{1,4} with center 4
    G = parse_graph6("D?{")
    assert G.n == 5
    assert sorted((u, v) for u, v, _ in G.edges) == [(0, 4), (1, 4), (2, 4), (3, 4)]
    # "Ch" is the path on 4 vertices
    P = parse_graph6("Ch")
    assert P.n == 4
    assert sorted((u, v) for u, v, _ in P.edges) == [(0, 1), (1, 2), (2, 3)]


def test_parse_graph6_header_prefix():
    G = parse_graph6(">>graph6<<A_")
    assert G.n == 2 and G.has_edge(0, 1)


def test_load_graph_text_dispatch():
    assert load_graph_text("2\n0 1").n == 2
    assert load_graph_text("A_").n == 2
    with pytest.raises(GraphParseError):
        load_graph_text("   \n# nothing\n")


# -- structure --------------------------------------------------------------


def test_delete_vertices_relabels_in_order():
    P = path(5)
    H = delete_vertices(P, {2})
    assert H.n == 4
    # remaining path pieces 0-1 and 3-4 become 0-1 and 2-3
    assert sorted((u, v) for u, v, _ in H.edges) == [(0, 1), (2, 3)]
    assert not is_connected(H)


def test_connected_components():
    G = Graph.from_edges(5, [(0, 1, 1), (3, 4, 1)])
    assert connected_components(G) == [[0, 1], [2], [3, 4]]


def test_bfs_and_eccentricity():
    P = path(5)
    assert bfs_distances(P, 0) == [0, 1, 2, 3, 4]
    assert eccentricity(P, 2) == 2
    assert eccentricity(P, 0) == 4
    with pytest.raises(GraphError):
        eccentricity(Graph.from_edges(3, [(0, 1, 1)]), 0)


def test_bridges_on_tree_and_cycle():
    P = path(4)
    assert bridges(P) == {(0, 1), (1, 2), (2, 3)}
    C = Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
    assert bridges(C) == set()
    # tadpole: triangle plus pendant
    T = Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1)])
    assert bridges(T) == {(2, 3)}


def test_separating_cut_edge():
    P = path(4)
    assert separating_cut_edge(P, (1, 2), 0, 3)
    assert not separating_cut_edge(P, (0, 1), 1, 3)
    C = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert not separating_cut_edge(C, (0, 1), 0, 1)
    with pytest.raises(GraphError):
        separating_cut_edge(P, (0, 2), 0, 3)


# -- generators -------------------------------------------------------------


def test_generators_shapes():
    assert path(1).n == 1
    assert len(star(5).edges) == 4
    D = double_star(2, 3)
    assert D.n == 7
    assert D.degree_sequence() == (1, 1, 1, 1, 1, 3, 4)
    Q = hypercube(3)
    assert Q.n == 8
    assert all(len(Q.neighbors(v)) == 3 for v in range(8))


def test_laplacian_form():
    P = path(3)
    L = laplacian_form(P)
    assert L.weight(0, 0) == 1
    assert L.weight(1, 1) == 2
    assert L.weight(0, 1) == -1
    assert L.weight(0, 2) == 0
    with pytest.raises(GraphError):
        laplacian_form(L)  # has loops
