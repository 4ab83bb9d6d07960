import itertools

from hypothesis import strategies as st

from dichoose.graphs import Digraph, Graph


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, frozenset(chosen))


@st.composite
def digraphs(draw, min_n=0, max_n=6, digons=True):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    arcs = set()
    for u, v in pairs:
        s = draw(st.integers(0, 3 if digons else 2))
        if s in (1, 3):
            arcs.add((u, v))
        if s in (2, 3):
            arcs.add((v, u))
    return Digraph(n, frozenset(arcs))
