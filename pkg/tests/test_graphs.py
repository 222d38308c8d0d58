import pytest

from qecsearch.graphs import (
    ConnectivityGraph,
    complete_bipartite_graph,
    complete_graph,
    line_graph,
    ring_graph,
    select_logical_qubits,
    star_graph,
)


def test_ring_edges():
    g = ring_graph(5)
    assert g.n == 5
    assert set(g.edges) == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}


def test_ring_of_two_has_single_edge():
    assert ring_graph(2).edges == ((0, 1),)


def test_star_edges():
    g = star_graph(4)
    assert set(g.edges) == {(0, 1), (0, 2), (0, 3)}


def test_complete_edge_count():
    g = complete_graph(6)
    assert len(g.edges) == 15
    assert all(a < b for a, b in g.edges)


def test_line_edges():
    assert line_graph(4).edges == ((0, 1), (1, 2), (2, 3))


def test_complete_bipartite_structure():
    g = complete_bipartite_graph(2, 3)
    assert g.n == 5
    assert len(g.edges) == 6
    left, right = {0, 1}, {2, 3, 4}
    for a, b in g.edges:
        assert (a in left) != (b in left)
        assert (a in right) != (b in right)


def test_graph_validation():
    with pytest.raises(ValueError):
        ConnectivityGraph(3, ((0, 3),))
    with pytest.raises(ValueError):
        ConnectivityGraph(3, ((1, 1),))
    with pytest.raises(ValueError):
        ConnectivityGraph(3, ((0, 1), (1, 0)))


def test_edges_are_canonicalized():
    g = ConnectivityGraph(3, ((2, 0), (1, 0)))
    assert g.edges == ((0, 1), (0, 2))


def test_degree_and_neighbors():
    g = star_graph(5)
    assert g.degree(0) == 4
    assert g.degree(3) == 1
    assert set(g.neighbors(0)) == {1, 2, 3, 4}


def test_select_logical_qubits_disperses():
    ring = ring_graph(6)
    chosen = select_logical_qubits(ring, 2)
    assert len(chosen) == 2
    a, b = chosen
    dist = min(abs(a - b), 6 - abs(a - b))
    assert dist == 3
    bip = complete_bipartite_graph(2, 3)
    assert set(select_logical_qubits(bip, 2)) == {0, 1}


def test_select_logical_qubits_bounds():
    with pytest.raises(ValueError):
        select_logical_qubits(ring_graph(4), 5)
