from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from flowpoly.errors import EnumerationCapError, ValidationError
from flowpoly.eulerent import distance_graph
from flowpoly.families import enumerate_spinal_graphs
from flowpoly.flows import IntegerFlow, count_vertices, enumerate_flows, indegree_netflow, kostant, polytope_dimension, unit_netflow
from flowpoly.graphmat import SpinalGraph, path_graph, reverse_graph

from oracles import plain_kostant

SMALL = list(enumerate_spinal_graphs(4, 3))
FIVE = list(enumerate_spinal_graphs(5, 4, min_vertices=5))


def netflows(n, lo=-4, hi=4):
    for head in product(range(lo, hi + 1), repeat=n - 1):
        last = -sum(head)
        if lo <= last <= hi:
            yield head + (last,)


def test_kostant_examples(ex_graph):
    assert kostant(distance_graph(2, 4), (1, 1, 1, -3)) == 5
    assert kostant(ex_graph, (0, 0, 2, 1, -3)) == 16
    for g in SMALL[:20]:
        assert kostant(g, (0,) * g.vertex_count) == 1


def test_kostant_input_errors(ex_graph):
    with pytest.raises(ValidationError, match="length"):
        kostant(ex_graph, (1, -1))
    with pytest.raises(ValidationError, match="sum"):
        kostant(ex_graph, (1, 0, 0, 0, 0))


@pytest.mark.parametrize("g", SMALL, ids=str)
def test_kostant_against_both_oracles_small(g):
    for a in netflows(g.vertex_count):
        k = kostant(g, a)
        assert k == plain_kostant(g, a), a
        assert k == sum(1 for _ in enumerate_flows(g, a)), a


@given(st.sampled_from(FIVE), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
@settings(max_examples=400, deadline=None)
def test_kostant_against_oracles_five_vertices(g, head):
    a = tuple(head) + (-sum(head),)
    k = kostant(g, a)
    assert k == plain_kostant(g, a)
    assert k == sum(1 for _ in enumerate_flows(g, a))


def test_enumeration_is_lexicographic_and_valid(ex_graph):
    a = (0, 0, 2, 1, -3)
    flows = list(enumerate_flows(ex_graph, a))
    keys = [f.edge_values() for f in flows]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys) == 16
    assert all(f.netflow == a for f in flows)
    reference = IntegerFlow(ex_graph, (0, 0, 0, 1), (0, 0, 0, 1, 1, 0), a)
    assert reference in flows


def test_enumeration_small_examples():
    g = SpinalGraph(2, ((1, 2),))
    flows = [(f.slack_flows[0], f.nonslack_flows[0]) for f in enumerate_flows(g, (2, -2))]
    assert flows == [(0, 2), (1, 1), (2, 0)]
    (only,) = enumerate_flows(path_graph(5), unit_netflow(path_graph(5)))
    assert only.slack_flows == (1, 1, 1, 1)
    assert list(enumerate_flows(path_graph(3), (-1, 0, 1))) == []


def test_enumeration_cap(monkeypatch):
    g = distance_graph(1, 6)
    with pytest.raises(EnumerationCapError) as info:
        enumerate_flows(g, unit_netflow(g, 3), cap=10)
    assert info.value.needed == kostant(g, unit_netflow(g, 3))
    monkeypatch.setenv("FLOWPOLY_ENUM_CAP", "5")
    with pytest.raises(EnumerationCapError):
        enumerate_flows(g, unit_netflow(g, 1))
    monkeypatch.setenv("FLOWPOLY_ENUM_CAP", "1000")
    assert len(list(enumerate_flows(g, unit_netflow(g, 1)))) == kostant(g, unit_netflow(g))


def test_flow_validation(ex_graph):
    with pytest.raises(ValidationError, match="conservation at vertex 3"):
        IntegerFlow(ex_graph, (0, 0, 0, 1), (0, 0, 0, 1, 1, 0), (0, 0, 1, 2, -3))
    with pytest.raises(ValidationError, match="negative"):
        IntegerFlow(ex_graph, (0, 0, 0, -1), (0, 0, 0, 1, 1, 0))
    with pytest.raises(ValidationError, match="expected 4 slack"):
        IntegerFlow(ex_graph, (0, 0, 0), (0, 0, 0, 1, 1, 0))


@pytest.mark.parametrize("g", SMALL[::3] + FIVE[::40], ids=str)
def test_monotone_in_t(g):
    vals = [kostant(g, unit_netflow(g, t)) for t in range(8)]
    assert vals == sorted(vals)
    assert vals[0] == 1


@given(st.sampled_from(SMALL + FIVE), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
@settings(max_examples=300, deadline=None)
def test_reversal_identity(g, head):
    head = head[: g.vertex_count - 1]
    a = tuple(head) + (-sum(head),)
    rev = tuple(-x for x in reversed(a))
    assert kostant(g, a) == kostant(reverse_graph(g), rev)


@given(st.sampled_from(FIVE), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
@settings(max_examples=300, deadline=None)
def test_negative_prefix_gives_zero(g, head):
    a = tuple(head) + (-sum(head),)
    prefix = 0
    negative = False
    for x in a:
        prefix += x
        negative |= prefix < 0
    if negative:
        assert kostant(g, a) == 0


def test_count_vertices():
    assert count_vertices(distance_graph(2, 5)) == 5
    for d in range(1, 8):
        assert count_vertices(distance_graph(1, d + 1)) == 2 ** d
    assert count_vertices(path_graph(6)) == 1
    fib = [2, 3]
    for _ in range(10):
        fib.append(fib[-1] + fib[-2])
    for d in range(1, 10):
        assert count_vertices(distance_graph(2, d + 2)) == fib[d - 1]


def test_vertex_count_matches_zero_one_unit_flows():
    # 0/1 unit flows in an acyclic graph are exactly the 1 -> n+1 paths
    for g in SMALL + FIVE[::10]:
        flows = enumerate_flows(g, unit_netflow(g))
        assert count_vertices(g) == sum(1 for f in flows if max(f.edge_values()) <= 1)


def test_polytope_dimension(nn_graph):
    assert polytope_dimension(nn_graph) == 7
    assert polytope_dimension(path_graph(4)) == 0
    assert polytope_dimension(distance_graph(3, 9)) == 6


def test_indegree_netflow(ex_graph):
    assert indegree_netflow(ex_graph) == (0, 0, 2, 1, -3)
    assert indegree_netflow(SpinalGraph(1, ())) == (0,)
