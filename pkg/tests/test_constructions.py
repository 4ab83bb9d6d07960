import math

import pytest

from dichoose.constructions import (
    TournamentSpec,
    bidirected,
    complete_bipartite,
    complete_graph,
    vertex_label,
    semidegree_tournament,
    random_bipartite,
    random_graph,
)
from dichoose.dicolour import dicolour_via_backedge, is_dicolouring
from dichoose.graphs import Graph, backedge_graph, is_star_forest, min_in_degree, min_out_degree


def _rederived_arcs(d):
    """Independent re-derivation of the tournament with 1-based labels."""
    n = 2 * d * (d + 1)
    block = lambda i: range(1 + d * (i - 1), d * i + 1)  # noqa: E731
    arcs = set()
    for i in range(1, d + 1):
        for v in block(1 + d + i):
            arcs.add((v, i))
        for v in block(1 + i):
            arcs.add((n + 1 - i, v))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (i, j) not in arcs and (j, i) not in arcs:
                arcs.add((i, j))
    return {(u - 1, v - 1) for u, v in arcs}


def test_smallest_tournament_arcs():
    T = semidegree_tournament(1)
    assert T.n == 4
    # u3->u1, u4->u2, u1->u2, u1->u4, u2->u3, u3->u4
    assert T.arcs == {(2, 0), (3, 1), (0, 1), (0, 3), (1, 2), (2, 3)}
    for v in range(4):
        assert T.in_degree(v) >= 1 and T.out_degree(v) >= 1
    assert [vertex_label(v) for v in range(4)] == ["u1", "u2", "u3", "u4"]


@pytest.mark.parametrize("d", range(1, 6))
def test_tournament_structure(d):
    spec = TournamentSpec(d)
    T = semidegree_tournament(d)
    assert T.n == spec.n == 2 * d * (d + 1) and spec.num_blocks == 2 * (d + 1)
    assert T.arcs == _rederived_arcs(d)
    for u in range(T.n):
        for v in range(u + 1, T.n):
            assert T.has_arc(u, v) + T.has_arc(v, u) == 1
    assert T.m == math.comb(T.n, 2)
    assert min(min_in_degree(T), min_out_degree(T)) >= d
    into_first, from_last = spec.special_arcs()
    assert not into_first & from_last
    assert not {frozenset(a) for a in into_first} & {frozenset(a) for a in from_last}
    fill = T.arcs - into_first - from_last
    assert all(u < v for u, v in fill)
    B = backedge_graph(T, range(T.n))
    assert is_star_forest(B)
    colours = dicolour_via_backedge(T, range(T.n))
    assert is_dicolouring(T, colours) and len(set(colours)) <= 2


def test_blocks_partition_vertices():
    spec = TournamentSpec(3)
    seen = [v for i in range(1, spec.num_blocks + 1) for v in spec.block(i)]
    assert seen == list(range(spec.n))
    with pytest.raises(ValueError):
        TournamentSpec(0)
    with pytest.raises(ValueError):
        semidegree_tournament(0)


def test_complete_bipartite_examples():
    K = complete_bipartite(2, 2)
    assert K.n == 4 and K.m == 4
    star = complete_bipartite(1, 3)
    assert star.degree(0) == 3 and star.m == 3
    assert complete_bipartite(0, 5).m == 0


def test_bidirected_examples():
    assert bidirected(Graph(2, frozenset({(0, 1)}))).arcs == {(0, 1), (1, 0)}
    assert bidirected(complete_graph(3)).m == 6
    assert bidirected(Graph(0, frozenset())).m == 0


def test_random_graph_examples():
    assert random_graph(6, 0, 1).m == 0
    assert random_graph(4, 1, 1) == complete_graph(4)
    assert random_graph(10, "1/3", 5) == random_graph(10, "1/3", 5)
    B = random_bipartite(4, 5, 1, 0)
    assert B == complete_bipartite(4, 5)
    assert all(u < 4 <= v for u, v in random_bipartite(4, 5, "1/2", 3).edges)
    with pytest.raises(ValueError):
        random_graph(3, 2, 0)


@pytest.mark.slow
def test_random_graph_mean_edge_count():
    trials, pairs = 10_000, 4950
    mean = sum(random_graph(100, "1/2", s).m for s in range(trials)) / trials
    sigma = math.sqrt(pairs / 4 / trials)
    assert abs(mean - pairs / 2) <= 3 * sigma
