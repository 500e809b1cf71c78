import json
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from flowpoly.errors import ValidationError
from flowpoly.eulerent import distance_graph
from flowpoly.families import enumerate_spinal_graphs
from flowpoly.flows import indegree_netflow, kostant
from flowpoly.graphmat import (SpinalGraph, ZeroOneMatrix, contract_slack_edge, graph_to_matrix,
                               intervals_to_graph, is_non_nested, is_non_redundant, matrix_to_graph,
                               path_graph, remove_redundant_rows, reverse_graph)
from flowpoly.volume import volume_compact

from oracles import all_column_convex, maximal_supports

G310_ROWS = [(1, 1), (1, 2), (1, 3), (2, 4), (3, 5), (4, 6), (5, 7), (6, 7), (7, 7)]


def rows_from_intervals(ivs, d):
    return ZeroOneMatrix(tuple(tuple(1 if lo <= c <= hi else 0 for c in range(1, d + 1)) for lo, hi in ivs))


def test_example_matrix_gives_example_graph(ex_matrix, ex_graph):
    g = matrix_to_graph(ex_matrix)
    assert g == ex_graph
    assert g.n + g.d == 10 - 1 + 1 - 1 + 1  # 4 slack + 6 non-slack edges
    assert graph_to_matrix(ex_graph) == ex_matrix


def test_single_entry_matrix():
    g = matrix_to_graph(ZeroOneMatrix(((1,),)))
    assert g.vertex_count == 2
    assert g.slack_edges == ((1, 2),)
    assert g.nonslack_edges == ((1, 2),)


def test_non_nested_example_matrix():
    m = ZeroOneMatrix.from_text("1100000\n0111000\n0011110\n0000111\n")
    assert m.is_doubly_convex()
    g = matrix_to_graph(m)
    assert g.nonslack_edges == ((1, 2), (1, 3), (2, 4), (2, 4), (3, 5), (3, 5), (4, 5))
    assert is_non_nested(g)


def test_empty_matrix_of_path():
    m = graph_to_matrix(path_graph(4))
    assert (m.rows, m.cols) == (3, 0)


def test_distance_graph_matrix():
    m = graph_to_matrix(distance_graph(3, 10))
    assert m == rows_from_intervals(G310_ROWS, 7)


def test_column_permutation_recorded():
    m = ZeroOneMatrix.from_text("011\n110\n")
    g, perm = matrix_to_graph(m, with_permutation=True)
    assert g.nonslack_edges == ((1, 2), (1, 3), (2, 3))
    assert perm == (2, 1, 0)


def test_rejects_non_convex_and_zero_columns():
    with pytest.raises(ValidationError, match="column 1 is not convex"):
        matrix_to_graph(ZeroOneMatrix.from_text("10\n00\n11\n"))
    with pytest.raises(ValidationError, match="column 1 is identically zero"):
        matrix_to_graph(ZeroOneMatrix.from_text("01\n01\n"))


def test_matrix_text_errors():
    with pytest.raises(ValidationError, match="line 2"):
        ZeroOneMatrix.from_text("10\n1x\n")
    with pytest.raises(ValidationError, match="differing"):
        ZeroOneMatrix.from_text("10\n1\n")


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("d", range(0, 5))
def test_round_trip_exhaustive(n, d):
    for rows in all_column_convex(n, d):
        m = ZeroOneMatrix(rows) if d else ZeroOneMatrix(tuple(() for _ in range(n)))
        g, perm = matrix_to_graph(m, with_permutation=True)
        back = graph_to_matrix(g)
        # columns come back in canonical order; undoing the permutation restores m
        restored = [[None] * d for _ in range(n)]
        for p, col in enumerate(perm):
            for i in range(n):
                restored[i][col] = back.entries[i][p]
        assert tuple(map(tuple, restored)) == m.entries
        assert matrix_to_graph(back) == g
        if list(perm) == sorted(perm):
            assert back == m
        if is_non_nested(g):
            assert back.is_doubly_convex()


def test_remove_redundant_rows_distance_example():
    m = rows_from_intervals(G310_ROWS, 7)
    red = remove_redundant_rows(m)
    assert red.matrix == rows_from_intervals(G310_ROWS[2:7], 7)
    assert red.kept_rows == (2, 3, 4, 5, 6)
    assert red.dropped_columns == ()


def test_remove_redundant_rows_small():
    assert remove_redundant_rows(ZeroOneMatrix.from_text("10\n01\n")).matrix == ZeroOneMatrix.from_text("10\n01\n")
    # {1} and {2} both sit inside {1,2}
    red = remove_redundant_rows(ZeroOneMatrix.from_text("10\n11\n01\n"))
    assert red.matrix == ZeroOneMatrix.from_text("11\n")
    assert red.kept_rows == (1,)


matrices = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda d: st.lists(st.lists(st.integers(0, 1), min_size=d, max_size=d), min_size=n, max_size=n)
    )
)


@given(matrices)
@settings(max_examples=300, deadline=None)
def test_remove_redundant_rows_matches_oracle(rows):
    m = ZeroOneMatrix(tuple(map(tuple, rows)))
    red = remove_redundant_rows(m)
    assert list(red.kept_rows) == maximal_supports(rows)
    again = remove_redundant_rows(red.matrix)
    assert again.matrix == red.matrix


def test_contract_distance_graph():
    g = distance_graph(3, 10)
    flags = []
    for i in (9, 8, 2, 1):  # highest first keeps the original labels valid
        g, ok = contract_slack_edge(g, i)
        flags.append(ok)
    assert all(flags)
    assert g == SpinalGraph(6, ((1, 2), (1, 3), (1, 4), (2, 5), (3, 6), (4, 6), (5, 6)))
    m_prime = rows_from_intervals(G310_ROWS[2:7], 7)
    assert graph_to_matrix(g) == m_prime


def test_contract_flag_false_on_multiedge():
    g = SpinalGraph(3, ((1, 2), (2, 3)))
    h, ok = contract_slack_edge(g, 1)
    assert not ok
    assert h == SpinalGraph(2, ((1, 2),))


def test_contract_path():
    g, ok = contract_slack_edge(path_graph(4), 2)
    assert ok and g == path_graph(3)
    with pytest.raises(ValidationError):
        contract_slack_edge(path_graph(4), 4)


def test_contraction_flag_preserves_counts():
    for g in enumerate_spinal_graphs(5, 3):
        for i in range(1, g.vertex_count):
            h, ok = contract_slack_edge(g, i)
            if not ok:
                continue
            for k in (1, 2, 3):
                a = (k,) + (0,) * (g.vertex_count - 2) + (-k,)
                b = (k,) + (0,) * (h.vertex_count - 2) + (-k,) if h.vertex_count > 1 else (0,)
                assert kostant(g, a) == kostant(h, b), (g, i, k)


def test_reverse_examples():
    middle = SpinalGraph(6, ((1, 3), (1, 6), (2, 3), (3, 4), (5, 6), (5, 6)))
    right = SpinalGraph(6, ((1, 2), (1, 2), (1, 6), (3, 4), (4, 5), (4, 6)))
    left = SpinalGraph(6, ((1, 2), (1, 3), (1, 6), (3, 4), (3, 4), (4, 5)))
    assert reverse_graph(middle) == right
    assert volume_compact(middle) == volume_compact(right) == volume_compact(left)
    one = SpinalGraph(2, ((1, 2),))
    assert reverse_graph(one) == one
    for k in (1, 2, 3):
        for d in (1, 4, 6):
            g = distance_graph(k, d + k)
            assert reverse_graph(g) == g


def test_reverse_preserves_indegree_count():
    for g in enumerate_spinal_graphs(5, 3):
        r = reverse_graph(g)
        assert reverse_graph(r) == g
        assert kostant(g, indegree_netflow(g)) == kostant(r, indegree_netflow(r))


def test_intervals_to_graph(nn_graph):
    assert intervals_to_graph([[1, 2], [2, 4], [3, 6], [5, 7]]) == nn_graph
    assert intervals_to_graph([[1, 5]]) == SpinalGraph(2, ((1, 2),) * 5)
    with pytest.raises(ValidationError):
        intervals_to_graph([])
    with pytest.raises(ValidationError, match="not covered"):
        intervals_to_graph([[1, 2]], d=3)


def test_intervals_with_redundant_ends():
    k, d = 3, 7
    core = [(i, i + k - 1) for i in range(1, d - k + 2)]
    ends = [(1, i) for i in range(1, k)] + [(d - i + 1, d) for i in range(1, k)]
    assert intervals_to_graph(core + ends, d, keep_redundant=True) == distance_graph(k, d + k)
    contracted = intervals_to_graph(core + ends, d)
    assert contracted == intervals_to_graph(core, d)
    assert contracted.vertex_count == d - k + 2


def test_doubly_convex_without_redundant_rows_is_non_nested():
    nested_redundant = 0
    for n in range(1, 5):
        for d in range(1, 5):
            for rows in all_column_convex(n, d):
                m = ZeroOneMatrix(rows)
                if not m.is_doubly_convex():
                    continue
                g = matrix_to_graph(m)
                if len(remove_redundant_rows(m).kept_rows) == n:
                    assert is_non_nested(g), rows
                elif not is_non_nested(g):
                    nested_redundant += 1
    # redundant rows are needed for nesting: rows 10/11/10 give edges (1,4),(2,3)
    assert nested_redundant > 0
    assert not is_non_nested(matrix_to_graph(ZeroOneMatrix.from_text("10\n11\n10\n")))


def test_non_nested(ex_graph, nn_graph):
    assert is_non_nested(nn_graph)
    assert not is_non_nested(ex_graph)
    assert is_non_nested(path_graph(5))


def test_non_redundant_matches_row_reduction():
    for g in enumerate_spinal_graphs(5, 3):
        m = graph_to_matrix(g)
        if m.cols == 0:
            continue
        assert is_non_redundant(g) == (len(remove_redundant_rows(m).kept_rows) == m.rows)


def test_parallel_edge_order_irrelevant():
    # listing order of parallel or unsorted edges never changes the canonical form
    edges = [(3, 5), (1, 3), (3, 5), (1, 4)]
    forms = {SpinalGraph(5, tuple(p)) for p in permutations(edges)}
    assert len(forms) == 1


def test_graph_json_round_trip(ex_graph):
    text = ex_graph.to_json()
    assert json.loads(text) == {"vertices": 5, "edges": [[1, 3], [1, 4], [2, 3], [3, 5], [3, 5], [4, 5]]}
    assert SpinalGraph.from_json(text) == ex_graph


@pytest.mark.parametrize("text,msg", [
    ('{"edges": []}', "missing field 'vertices'"),
    ('{"vertices": 3, "edges": [[1]]}', r"edges\[0\]"),
    ('{"vertices": 3, "edges": [[2, 2]]}', "tail < head"),
    ('{"vertices": 3,', "line 1"),
])
def test_graph_json_errors(text, msg):
    with pytest.raises(ValidationError, match=msg):
        SpinalGraph.from_json(text)


def test_from_multigraph_designates_first_spine_copy():
    g = SpinalGraph.from_multigraph(3, [(1, 2), (1, 2), (2, 3), (1, 3)])
    assert g.nonslack_edges == ((1, 2), (1, 3))
    with pytest.raises(ValidationError, match=r"\(2,3\)"):
        SpinalGraph.from_multigraph(3, [(1, 2), (1, 3)])
