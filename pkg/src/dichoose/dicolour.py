"""Dicolourings, the dichromatic number and the backedge-graph colouring."""

from __future__ import annotations

from typing import Mapping, Sequence

from .config import CapExceeded, get_caps
from .graphs import (
    Digraph,
    Graph,
    backedge_graph,
    bipartition,
    check_ordering,
    enumerate_orientations,
    is_acyclic_within,
    iter_bits,
    reaches,
)


def as_colour_list(n: int, colouring: Mapping[int, int] | Sequence[int]) -> list[int]:
    """Normalise a vertex->colour map to a list; a partial map is an error."""
    if isinstance(colouring, Mapping):
        missing = [v for v in range(n) if v not in colouring]
        if missing:
            raise ValueError(f"colouring is not defined on vertices {missing}")
        extra = [v for v in colouring if not 0 <= v < n]
        if extra:
            raise ValueError(f"colouring names vertices outside the graph: {extra}")
        colours = [colouring[v] for v in range(n)]
    else:
        colours = list(colouring)
        if len(colours) != n:
            raise ValueError(f"colouring has {len(colours)} entries for {n} vertices")
    for c in colours:
        if not isinstance(c, int) or c < 1:
            raise ValueError(f"colours must be positive integers, got {c!r}")
    return colours


def colour_classes(colours: Sequence[int]) -> dict[int, int]:
    classes: dict[int, int] = {}
    for v, c in enumerate(colours):
        classes[c] = classes.get(c, 0) | 1 << v
    return classes


def is_dicolouring(D: Digraph, colouring) -> bool:
    colours = as_colour_list(D.n, colouring)
    return all(is_acyclic_within(D.out_adj, mask) for mask in colour_classes(colours).values())


def is_proper_colouring(G: Graph, colouring) -> bool:
    colours = as_colour_list(G.n, colouring)
    return all(colours[u] != colours[v] for u, v in G.edges)


# --- exact dichromatic number ------------------------------------------------------


def _dicolour_with(out_adj: Sequence[int], n: int, k: int) -> list[int] | None:
    """Lexicographically least dicolouring with at most k colours, new colours
    introduced in first-occurrence order, or None."""
    colours = [0] * n
    classes = [0] * (k + 1)

    def place(v: int, used: int) -> bool:
        if v == n:
            return True
        for c in range(1, min(used + 1, k) + 1):
            cls = classes[c]
            if cls and reaches(out_adj, v, v, cls):
                continue
            colours[v] = c
            classes[c] = cls | 1 << v
            if place(v + 1, max(used, c)):
                return True
            classes[c] = cls
        colours[v] = 0
        return False

    return colours if place(0, 0) else None


def dichromatic_number(D: Digraph, cap: int | None = None) -> tuple[int, list[int]]:
    """Exact dichromatic number with an optimal witness.

    Branch and bound over colour-class partitions: vertices are coloured in
    index order, a colour is pruned as soon as it closes a directed cycle in its
    class, and new colours only appear in first-occurrence order.  Trying
    k = 1, 2, ... makes the first witness found the lexicographically least one.
    """
    cap = get_caps().max_dichromatic_vertices if cap is None else cap
    if D.n > cap:
        raise CapExceeded(f"{D.n} vertices exceed the dichromatic search cap ({cap})")
    if D.n == 0:
        return 0, []
    for k in range(1, D.n + 1):
        witness = _dicolour_with(D.out_adj, D.n, k)
        if witness is not None:
            return k, witness
    raise AssertionError("n colours always suffice")


def set_partitions(n: int):
    """All restricted growth strings of length n (colours 1-based)."""
    if n == 0:
        yield []
        return
    word = [1] * n

    def grow(i: int, top: int):
        if i == n:
            yield list(word)
            return
        for c in range(1, top + 2):
            word[i] = c
            yield from grow(i + 1, max(top, c))

    word[0] = 1
    yield from grow(1, 1)


def dichromatic_number_bruteforce(D: Digraph, cap: int | None = None) -> int:
    """Oracle: minimum class count over every partition of V(D) into acyclic sets."""
    cap = get_caps().max_bruteforce_vertices if cap is None else cap
    if D.n > cap:
        raise CapExceeded(f"{D.n} vertices exceed the brute-force oracle cap ({cap})")
    if D.n == 0:
        return 0
    acyclic = [is_acyclic_within(D.out_adj, s) for s in range(1 << D.n)]
    best = D.n
    for word in set_partitions(D.n):
        k = max(word)
        if k >= best:
            continue
        masks = [0] * (k + 1)
        for v, c in enumerate(word):
            masks[c] |= 1 << v
        if all(acyclic[m] for m in masks[1:]):
            best = k
    return best


def max_dichromatic_over_orientations(G: Graph) -> tuple[int, Digraph]:
    """Maximum dichromatic number over all orientations of G, with a witness."""
    best, witness = -1, None
    upper = chromatic_number(G)[0]
    for D in enumerate_orientations(G):
        k, _ = dichromatic_number(D)
        if k > best:
            best, witness = k, D
            if best == upper:
                break
    return best, witness


# --- proper colourings -------------------------------------------------------------


def greedy_colouring(G: Graph, order: Sequence[int] | None = None) -> list[int]:
    order = range(G.n) if order is None else order
    colours = [0] * G.n
    for v in order:
        taken = {colours[w] for w in iter_bits(G.adj[v])}
        c = 1
        while c in taken:
            c += 1
        colours[v] = c
    return colours


def _proper_with(G: Graph, k: int) -> list[int] | None:
    n = G.n
    colours = [0] * n
    classes = [0] * (k + 1)

    def place(v: int, used: int) -> bool:
        if v == n:
            return True
        for c in range(1, min(used + 1, k) + 1):
            if classes[c] & G.adj[v]:
                continue
            colours[v] = c
            classes[c] |= 1 << v
            if place(v + 1, max(used, c)):
                return True
            classes[c] &= ~(1 << v)
        colours[v] = 0
        return False

    return colours if place(0, 0) else None


def chromatic_number(G: Graph) -> tuple[int, list[int]]:
    if G.n == 0:
        return 0, []
    upper = max(greedy_colouring(G))
    for k in range(1, upper):
        found = _proper_with(G, k)
        if found is not None:
            return k, found
    return upper, greedy_colouring(G)


def dicolour_via_backedge(D: Digraph, order: Sequence[int]) -> list[int]:
    """Dicolouring obtained from a proper colouring of the backedge graph.

    Independent sets of the backedge graph induce acyclic subdigraphs, so any
    proper colouring of it is a dicolouring of D.
    """
    if D.has_digon():
        raise ValueError("backedge colouring needs a digon-free digraph")
    order = check_ordering(D.n, order)
    B = backedge_graph(D, order)
    colours = greedy_colouring(B, order)
    used = max(colours, default=0)
    if used > 2:
        sides = bipartition(B)
        if sides is not None:
            colours = [1] * D.n
            for v in sides[1]:
                colours[v] = 2
            used = 2
    if used > 2 and B.n <= get_caps().exact_backedge_colouring:
        k, exact = chromatic_number(B)
        if k < used:
            colours = exact
    return colours
