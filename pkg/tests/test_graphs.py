"""Graph constructors, metrics, connectivity, Eulerian circuits, bounds."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import (
    brute_edge_connectivity,
    brute_vertex_connectivity,
)
from gengraph.generating import delta_of
from gengraph.graphs import (
    Coloring,
    DominatingSet,
    EdgeCut,
    EulerCircuit,
    Graph,
    HamCycle,
    MultipartiteParams,
    VertexCut,
    basic_metrics,
    certificate_from_json,
    certificate_to_json,
    complete_multipartite,
    direct_product,
    edge_connectivity,
    eulerian_circuit,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    kappa_product_formula,
    lex_product,
    td_bounds,
    vertex_connectivity,
    verify_certificate,
)


def _random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    adj = rng.random((n, n)) < p
    adj = np.triu(adj, 1)
    return Graph(adj | adj.T)


# ---------------------------------------------------------------------------
# constructors


def test_complete_multipartite():
    k3 = complete_multipartite([1, 1, 1])
    assert k3.is_complete() and k3.n == 3
    g = complete_multipartite([2, 2, 2, 2])
    assert g.n == 8 and set(g.degrees.tolist()) == {6}
    null4 = complete_multipartite([4])
    assert null4.edge_count == 0 and null4.n == 4


def test_direct_product():
    two_edges = direct_product(Graph.complete(2), Graph.complete(2))
    assert two_edges.edge_count == 2 and basic_metrics(two_edges).component_count == 2
    k33 = direct_product(Graph.complete(3), Graph.complete(3))
    assert k33.n == 9 and set(k33.degrees.tolist()) == {4}
    null = direct_product(Graph.complete(3), Graph.empty(2))
    assert null.edge_count == 0


def test_lex_product():
    k22 = lex_product(Graph.complete(2), Graph.empty(2))
    assert k22.n == 4 and sorted(k22.degrees.tolist()) == [2, 2, 2, 2]
    k333 = lex_product(Graph.complete(3), Graph.empty(3))
    assert set(k333.degrees.tolist()) == {6}
    two_edges = lex_product(Graph.empty(2), Graph.complete(2))
    assert two_edges.edge_count == 2


def test_lex_product_definition_unfold():
    rng = np.random.default_rng(3)
    a, b = _random_graph(rng, 4, 0.5), _random_graph(rng, 3, 0.5)
    prod = lex_product(a, b)
    for (u1, v1) in itertools.product(range(4), range(3)):
        for (u2, v2) in itertools.product(range(4), range(3)):
            expect = bool(a.adj[u1, u2] or (u1 == u2 and b.adj[v1, v2]))
            assert bool(prod.adj[u1 * 3 + v1, u2 * 3 + v2]) == expect


# ---------------------------------------------------------------------------
# metrics


def test_basic_metrics_examples(group):
    m = basic_metrics(Graph.complete(5))
    assert (m.min_degree, m.is_connected, m.diameter) == (4, True, 1)
    d6 = delta_of(group("C6"))
    m6 = basic_metrics(d6.graph)
    assert (m6.min_degree, m6.is_connected, m6.diameter) == (2, True, 2)
    two = direct_product(Graph.complete(2), Graph.complete(2))
    assert basic_metrics(two).component_count == 2
    empty = basic_metrics(Graph.empty(0))
    assert empty.min_degree is None and not empty.is_connected
    assert empty.diameter is None


# ---------------------------------------------------------------------------
# connectivity


def test_vertex_connectivity_examples(group):
    assert vertex_connectivity(Graph.complete(4)).value == 3
    assert vertex_connectivity(Graph.complete(4)).complete
    assert vertex_connectivity(complete_multipartite([2, 2, 2, 2])).value == 6
    d6 = delta_of(group("C6"))
    res = vertex_connectivity(d6.graph)
    assert res.value == 2  # phi(6)
    assert verify_certificate(d6.graph, res.cut)


def test_edge_connectivity_examples(group):
    assert edge_connectivity(Graph.complete(1))[0] == 0
    c5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    lam, cut = edge_connectivity(c5)
    assert lam == 2 and verify_certificate(c5, cut)
    dk = delta_of(group("C2^2 x C9"))
    lam, _ = edge_connectivity(dk.graph)
    assert lam == 12  # equals the minimum degree


def test_disconnected_conventions():
    two = direct_product(Graph.complete(2), Graph.complete(2))
    vc = vertex_connectivity(two)
    assert vc.value == 0 and vc.cut.vertices == ()
    assert verify_certificate(two, vc.cut)
    lam, cut = edge_connectivity(two)
    assert lam == 0 and cut.edges == ()


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 8))
def test_connectivity_matches_brute_force(seed, n):
    rng = np.random.default_rng(seed)
    graph = _random_graph(rng, n, 0.55)
    vc = vertex_connectivity(graph)
    assert vc.value == brute_vertex_connectivity(graph)
    if vc.cut is not None:
        assert len(vc.cut.vertices) == vc.value
        assert verify_certificate(graph, vc.cut)
    lam, cut = edge_connectivity(graph)
    assert lam == brute_edge_connectivity(graph)
    if lam > 0:
        assert len(cut.edges) == lam
        assert verify_certificate(graph, cut)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 9))
def test_whitney_inequalities(seed, n):
    rng = np.random.default_rng(seed)
    graph = _random_graph(rng, n, 0.5)
    kappa = vertex_connectivity(graph).value
    lam, _ = edge_connectivity(graph)
    delta = int(graph.degrees.min())
    assert kappa <= lam <= delta


# ---------------------------------------------------------------------------
# Eulerian circuits


def test_euler_k3():
    res = eulerian_circuit(Graph.complete(3))
    assert res.circuit is not None and len(res.circuit.vertices) == 4
    assert verify_certificate(Graph.complete(3), res.circuit)


def test_euler_refusals(group):
    d6 = delta_of(group("C6"))
    res = eulerian_circuit(d6.graph)
    assert res.circuit is None and "odd degree" in res.reason
    two = direct_product(Graph.complete(2), Graph.complete(2))
    assert eulerian_circuit(two).circuit is None
    assert eulerian_circuit(Graph.empty(0)).circuit is None


def test_euler_delta_c9(group):
    d9 = delta_of(group("C9"))
    assert set(d9.graph.degrees.tolist()) <= {6, 8}
    res = eulerian_circuit(d9.graph)
    assert res.circuit is not None
    assert verify_certificate(d9.graph, res.circuit)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(3, 9))
def test_euler_criterion_matches_construction(seed, n):
    rng = np.random.default_rng(seed)
    graph = _random_graph(rng, n, 0.6)
    m = basic_metrics(graph)
    should = m.is_connected and bool((graph.degrees % 2 == 0).all())
    res = eulerian_circuit(graph)
    assert (res.circuit is not None) == should
    if res.circuit is not None:
        assert verify_certificate(graph, res.circuit)


# ---------------------------------------------------------------------------
# certificates and serialization


def test_verify_certificate_negatives():
    from gengraph.graphs import Clique

    k3 = Graph.complete(3)
    assert verify_certificate(k3, HamCycle((0, 1, 2)))
    assert not verify_certificate(k3, HamCycle((0, 1, 1)))
    assert not verify_certificate(k3, HamCycle((0, 1)))
    assert not verify_certificate(k3, Clique((0, 3)))
    assert not verify_certificate(k3, VertexCut((0, 1, 2)))
    assert not verify_certificate(k3, Coloring((0, 0, 1)))
    assert verify_certificate(k3, Coloring((0, 1, 2)))
    assert not verify_certificate(k3, DominatingSet((0,)))
    assert verify_certificate(k3, DominatingSet((0, 1)))
    assert not verify_certificate(k3, EulerCircuit((0, 1, 2)))
    assert verify_certificate(k3, EulerCircuit((0, 1, 2, 0)))


def test_certificate_json_round_trip():
    certs = [
        VertexCut((1, 2)),
        EdgeCut(((0, 1), (2, 3))),
        EulerCircuit((0, 1, 2, 0)),
        HamCycle((0, 1, 2)),
        DominatingSet((0, 4)),
        Coloring((0, 1, 0)),
    ]
    for c in certs:
        assert certificate_from_json(certificate_to_json(c)) == c


def test_graph_json_round_trip(group):
    d6 = delta_of(group("C6"))
    text = graph_to_json(d6.graph, d6.labels)
    g2, labels = graph_from_json(text)
    assert np.array_equal(g2.adj, d6.graph.adj)
    assert tuple(labels) == d6.labels
    assert g2.marks == d6.graph.marks
    assert graph_to_json(g2, labels) == text  # deterministic bytes


def test_graph_dot_deterministic(group):
    d6 = delta_of(group("C6"))
    a = graph_to_dot(d6.graph, d6.labels)
    b = graph_to_dot(d6.graph, d6.labels)
    assert a == b and a.startswith("graph")


# ---------------------------------------------------------------------------
# bound formulas


def test_td_bounds_examples():
    assert td_bounds(MultipartiteParams((3, 4, 6))) == (5, 6, 1)
    assert td_bounds(MultipartiteParams((3, 4))) == (3, 3, 0)
    lower, upper, t = td_bounds(MultipartiteParams((2, 2)))
    assert (lower, upper) == (4, 4)
    assert t == 1  # least t with a_i > s-t for all i > t
    with pytest.raises(ValueError):
        td_bounds(MultipartiteParams((1, 2)))


def test_td_bounds_lower_at_least_s_plus_1():
    for parts in [(2, 2), (2, 3), (3, 4), (3, 4, 6), (2, 2, 2), (4, 4, 4),
                  (2, 3, 5, 7)]:
        lower, upper, _ = td_bounds(MultipartiteParams(parts))
        assert lower >= len(parts) + 1
        assert lower <= upper


def test_kappa_product_formula_examples():
    assert kappa_product_formula(4, 4, MultipartiteParams((2, 2, 2))) == 16
    assert kappa_product_formula(1, 1, MultipartiteParams((1, 1, 1))) == 2
    with pytest.raises(ValueError):
        kappa_product_formula(1, 1, MultipartiteParams((1, 2)))
    with pytest.raises(ValueError):
        kappa_product_formula(1, 1, MultipartiteParams((1, 1, 3)))


def test_kappa_formula_against_flow_small():
    # Gamma = K2 (kappa = delta = 1), parts (1,1,1): K2 x K3 = C6
    got = kappa_product_formula(1, 1, MultipartiteParams((1, 1, 1)))
    measured = vertex_connectivity(
        direct_product(Graph.complete(2), complete_multipartite([1, 1, 1]))).value
    assert got == measured == 2


def test_multipartite_params_validation():
    with pytest.raises(ValueError):
        MultipartiteParams(())
    with pytest.raises(ValueError):
        MultipartiteParams((2, 1))
    with pytest.raises(ValueError):
        MultipartiteParams((0, 1))
    assert MultipartiteParams((2, 2, 3)).t == 2
    assert MultipartiteParams((4, 4, 4)).t == 0
