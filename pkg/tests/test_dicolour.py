import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import all_digraphs
from strategies import digraphs, graphs
from dichoose.config import CapExceeded
from dichoose.constructions import (
    bidirected,
    complete_graph,
    cycle_graph,
    directed_cycle,
    path_graph,
    semidegree_tournament,
    transitive_tournament,
)
from dichoose.dicolour import (
    as_colour_list,
    chromatic_number,
    dichromatic_number,
    dichromatic_number_bruteforce,
    dicolour_via_backedge,
    is_dicolouring,
    is_proper_colouring,
    max_dichromatic_over_orientations,
    set_partitions,
)
from dichoose.graphs import Digraph, underlying_graph

DIGON = Digraph(2, frozenset({(0, 1), (1, 0)}))


def test_is_dicolouring_examples():
    C3 = directed_cycle(3)
    assert not is_dicolouring(C3, [1, 1, 1])
    assert is_dicolouring(C3, [1, 1, 2])
    assert not is_dicolouring(DIGON, [1, 1])
    assert is_dicolouring(C3, {0: 1, 1: 1, 2: 2})


def test_partial_colouring_is_an_error():
    with pytest.raises(ValueError):
        is_dicolouring(directed_cycle(3), {0: 1, 1: 2})
    with pytest.raises(ValueError):
        as_colour_list(3, [1, 2])
    with pytest.raises(ValueError):
        as_colour_list(2, [0, 1])


def test_dichromatic_examples():
    assert dichromatic_number(bidirected(complete_graph(4)))[0] == 4
    assert dichromatic_number(directed_cycle(5))[0] == 2
    assert dichromatic_number(transitive_tournament(5))[0] == 1
    assert dichromatic_number(Digraph(0, frozenset()))[0] == 0


def test_small_tournament_needs_two_colours():
    T1 = semidegree_tournament(1)
    # independent check: every 1- and 2-colouring by brute force
    assert not is_dicolouring(T1, [1] * 4)
    assert any(is_dicolouring(T1, list(c)) for c in itertools.product((1, 2), repeat=4))
    k, witness = dichromatic_number(T1)
    assert k == 2 and is_dicolouring(T1, witness) and len(set(witness)) == 2


def test_witness_is_lexicographically_least():
    D = directed_cycle(5)
    k, witness = dichromatic_number(D)
    smallest = min(c for c in itertools.product(range(1, k + 1), repeat=5) if is_dicolouring(D, list(c)))
    assert tuple(witness) == smallest


def test_cap_enforced():
    with pytest.raises(CapExceeded):
        dichromatic_number(transitive_tournament(5), cap=4)
    with pytest.raises(CapExceeded):
        dichromatic_number_bruteforce(transitive_tournament(9))


def test_set_partitions_are_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_backedge_examples():
    assert set(dicolour_via_backedge(transitive_tournament(5), range(5))) == {1}
    T1 = semidegree_tournament(1)
    colours = dicolour_via_backedge(T1, range(4))
    assert is_dicolouring(T1, colours) and len(set(colours)) <= 2
    C3 = directed_cycle(3)
    for order in itertools.permutations(range(3)):
        colours = dicolour_via_backedge(C3, order)
        assert is_dicolouring(C3, colours) and len(set(colours)) == 2
    with pytest.raises(ValueError):
        dicolour_via_backedge(DIGON, [0, 1])


def test_max_dichromatic_examples():
    assert max_dichromatic_over_orientations(path_graph(5))[0] == 1
    assert max_dichromatic_over_orientations(complete_graph(3))[0] == 2
    k, D = max_dichromatic_over_orientations(cycle_graph(4))
    assert k == 2 and dichromatic_number(D)[0] == 2


def test_chromatic_number_examples():
    assert chromatic_number(complete_graph(5))[0] == 5
    assert chromatic_number(cycle_graph(5))[0] == 3
    assert chromatic_number(cycle_graph(6))[0] == 2
    k, colours = chromatic_number(cycle_graph(7))
    assert is_proper_colouring(cycle_graph(7), colours) and len(set(colours)) == k


@pytest.mark.parametrize("n", range(5))
def test_dichromatic_at_most_chromatic_exhaustive(n):
    for D in all_digraphs(n):
        assert dichromatic_number(D)[0] <= chromatic_number(underlying_graph(D))[0]


@given(digraphs(max_n=6))
def test_dichromatic_at_most_chromatic_sampled(D):
    k, witness = dichromatic_number(D)
    assert is_dicolouring(D, witness) and len(set(witness)) == k
    assert k <= chromatic_number(underlying_graph(D))[0]


@given(graphs(max_n=6))
def test_bidirected_identity_sampled(G):
    assert dichromatic_number(bidirected(G))[0] == chromatic_number(G)[0]


@given(digraphs(min_n=2, max_n=6), st.data())
def test_adding_an_arc_never_decreases(D, data):
    missing = [(u, v) for u in range(D.n) for v in range(D.n) if u != v and not D.has_arc(u, v)]
    if not missing:
        return
    extra = data.draw(st.sampled_from(missing))
    bigger = Digraph(D.n, D.arcs | {extra})
    assert dichromatic_number(bigger)[0] >= dichromatic_number(D)[0]


@pytest.mark.parametrize("n", range(5))
def test_backedge_colouring_exhaustive(n):
    orders = list(itertools.permutations(range(n)))
    for D in all_digraphs(n, digons=False):
        for order in orders:
            assert is_dicolouring(D, dicolour_via_backedge(D, order))


@given(digraphs(max_n=7, digons=False), st.randoms(use_true_random=False))
def test_backedge_colouring_sampled(D, rnd):
    order = list(range(D.n))
    rnd.shuffle(order)
    assert is_dicolouring(D, dicolour_via_backedge(D, order))


@given(digraphs(max_n=5, digons=False))
def test_branch_and_bound_matches_oracle_sampled(D):
    assert dichromatic_number(D)[0] == dichromatic_number_bruteforce(D)
