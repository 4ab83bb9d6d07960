"""List assignments, list (di)colouring, choosability and dichoosability.

Choosability-type quantities are decided over exact-size lists: enlarging a
list can only help the colourer.  Colourability is invariant under injective
renaming of colours, so an r-uniform assignment on n vertices is determined
(up to renaming) by the multiset of *colour columns*, i.e. for each colour the
set of vertices whose list contains it.  Enumerating those multisets gives one
representative per renaming class.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from typing import Callable, Iterable, Iterator, Sequence

from .config import CapExceeded, get_caps
from .dicolour import chromatic_number, dichromatic_number, is_dicolouring
from .graphs import (
    Digraph,
    Graph,
    connected_components,
    degeneracy,
    enumerate_orientations,
    induced_subdigraph,
    induced_subgraph,
    is_acyclic_within,
    iter_bits,
    orientation_from_bits,
    reaches,
    underlying_graph,
)


@dataclasses.dataclass(frozen=True)
class ListAssignment:
    """``lists[v]`` is the set of allowed colours of vertex ``v``."""

    lists: tuple

    def __post_init__(self):
        lists = tuple(frozenset(int(c) for c in lst) for lst in self.lists)
        for v, lst in enumerate(lists):
            if not lst:
                raise ValueError(f"vertex {v} has an empty list")
            if min(lst) < 1:
                raise ValueError(f"vertex {v} has a non-positive colour")
        object.__setattr__(self, "lists", lists)

    @classmethod
    def uniform(cls, n: int, colours: Iterable[int]) -> "ListAssignment":
        colours = frozenset(colours)
        return cls(tuple(colours for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.lists)

    @property
    def uniform_size(self) -> int | None:
        sizes = {len(lst) for lst in self.lists}
        return sizes.pop() if len(sizes) == 1 else None

    def min_size(self) -> int:
        return min((len(lst) for lst in self.lists), default=0)

    def __getitem__(self, v: int) -> frozenset:
        return self.lists[v]

    def restrict(self, vertices: Sequence[int]) -> "ListAssignment":
        return ListAssignment(tuple(self.lists[v] for v in vertices))

    def count_colourings(self) -> int:
        return math.prod(len(lst) for lst in self.lists)


def _check_lists(n: int, L: ListAssignment):
    if L.n != n:
        raise ValueError(f"list assignment covers {L.n} vertices, graph has {n}")


class _NodeBudget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.cap:
            raise CapExceeded(f"list-colouring search exceeded {self.cap} nodes")


def _search_order(n: int, degree: Callable[[int], int]) -> list[int]:
    return sorted(range(n), key=lambda v: (-degree(v), v))


def exists_L_dicolouring(D: Digraph, L: ListAssignment, node_cap: int | None = None) -> list[int] | None:
    """An L-dicolouring of D, or None once the search is exhausted."""
    _check_lists(D.n, L)
    budget = _NodeBudget(get_caps().max_list_nodes if node_cap is None else node_cap)
    order = _search_order(D.n, lambda v: D.in_degree(v) + D.out_degree(v))
    options = [sorted(L[v]) for v in order]
    colours = [0] * D.n
    classes: dict[int, int] = {}
    out_adj = D.out_adj

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in options[i]:
            budget.tick()
            cls = classes.get(c, 0)
            if cls and reaches(out_adj, v, v, cls):
                continue
            classes[c] = cls | 1 << v
            colours[v] = c
            if place(i + 1):
                return True
            classes[c] = cls
        return False

    return colours if place(0) else None


def exists_L_proper_colouring(G: Graph, L: ListAssignment, node_cap: int | None = None) -> list[int] | None:
    _check_lists(G.n, L)
    budget = _NodeBudget(get_caps().max_list_nodes if node_cap is None else node_cap)
    order = _search_order(G.n, G.degree)
    options = [sorted(L[v]) for v in order]
    colours = [0] * G.n
    classes: dict[int, int] = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in options[i]:
            budget.tick()
            cls = classes.get(c, 0)
            if cls & G.adj[v]:
                continue
            classes[c] = cls | 1 << v
            colours[v] = c
            if place(i + 1):
                return True
            classes[c] = cls
        return False

    return colours if place(0) else None


# --- canonical enumeration -----------------------------------------------------------


def _columns_to_lists(n: int, columns: Sequence[int]) -> ListAssignment:
    lists = [set() for _ in range(n)]
    for colour, col in enumerate(columns, start=1):
        for v in iter_bits(col):
            lists[v].add(colour)
    return ListAssignment(tuple(lists))


def canonical_list_assignments(n: int, r: int, cap: int | None = None) -> Iterator[ListAssignment]:
    """One r-uniform list assignment per colour-renaming class.

    Colours are numbered by the order in which their columns are emitted, so
    vertex 0 always receives ``{1, ..., r}`` and no colour exceeds ``n * r``.
    """
    cap = get_caps().max_list_universe if cap is None else cap
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    if n * r > cap:
        raise CapExceeded(f"n*r = {n * r} exceeds the canonical enumeration cap ({cap})")
    for columns in _column_multisets(n, r):
        yield _columns_to_lists(n, columns)


def _column_multisets(n: int, r: int) -> Iterator[list[int]]:
    cover = [0] * n
    columns: list[int] = []

    def extend() -> Iterator[list[int]]:
        v = next((u for u in range(n) if cover[u] < r), None)
        if v is None:
            yield list(columns)
            return
        higher = [u for u in range(v + 1, n) if cover[u] < r]
        bound = None
        if columns and (columns[-1] & -columns[-1]) == 1 << v:
            bound = columns[-1]
        # subsets of the still-open higher vertices, largest mask first
        for size_bits in range((1 << len(higher)) - 1, -1, -1):
            col = 1 << v
            for i, u in enumerate(higher):
                if size_bits >> i & 1:
                    col |= 1 << u
            if bound is not None and col > bound:
                continue
            members = iter_bits(col)
            for u in members:
                cover[u] += 1
            columns.append(col)
            yield from extend()
            columns.pop()
            for u in members:
                cover[u] -= 1

    if n == 0:
        yield []
        return
    yield from extend()


def raw_list_assignments(n: int, r: int, universe: int | None = None) -> Iterator[ListAssignment]:
    """Every r-uniform assignment over ``{1..universe}`` (default ``n * r``)."""
    universe = n * r if universe is None else universe
    subsets = [frozenset(c) for c in itertools.combinations(range(1, universe + 1), r)]
    for combo in itertools.product(subsets, repeat=n):
        yield ListAssignment(combo)


# --- choosability ------------------------------------------------------------------------


def find_uncolourable_assignment(D: Digraph, k: int) -> ListAssignment | None:
    """First canonical k-uniform assignment admitting no L-dicolouring."""
    for L in canonical_list_assignments(D.n, k):
        if exists_L_dicolouring(D, L) is None:
            return L
    return None


def find_unchoosable_assignment(G: Graph, k: int) -> ListAssignment | None:
    for L in canonical_list_assignments(G.n, k):
        if exists_L_proper_colouring(G, L) is None:
            return L
    return None


def _pad_witness(n: int, part: Sequence[int], lists: ListAssignment, size: int) -> ListAssignment:
    full = [frozenset(range(1, size + 1))] * n
    for i, v in enumerate(part):
        full[v] = lists[i]
    return ListAssignment(tuple(full))


def choosability(G: Graph) -> tuple[int, ListAssignment | None]:
    """Choosability of G and a (k-1)-assignment with no proper L-colouring.

    Computed per connected component: lists on different components are
    independent, so the graph's value is the maximum.
    """
    if G.n == 0:
        return 0, None
    best, witness = 0, None
    for comp in connected_components(G):
        H = induced_subgraph(G, comp)
        k, bad = _choosability_connected(H)
        if k > best:
            best = k
            witness = None if bad is None else _pad_witness(G.n, comp, bad, k - 1)
    return best, witness


def _choosability_connected(H: Graph):
    lower = chromatic_number(H)[0]
    upper = degeneracy(H) + 1
    bad = ListAssignment.uniform(H.n, range(1, lower)) if lower > 1 else None
    for k in range(lower, upper):
        found = find_unchoosable_assignment(H, k)
        if found is None:
            return k, bad
        bad = found
    return upper, bad


def di_degeneracy(D: Digraph) -> int:
    """Largest value of min(in, out) at the vertex peeled by greedy min(in, out) peeling.

    Every digraph is (di_degeneracy + 1)-dichoosable.
    """
    remaining = (1 << D.n) - 1
    best = 0
    while remaining:
        def key(x):
            return (min((D.in_adj[x] & remaining).bit_count(), (D.out_adj[x] & remaining).bit_count()), x)

        v = min(iter_bits(remaining), key=key)
        best = max(best, key(v)[0])
        remaining &= ~(1 << v)
    return best


def weak_components(D: Digraph) -> list[list[int]]:
    return connected_components(underlying_graph(D))


def dichoosability(D: Digraph) -> tuple[int, ListAssignment | None]:
    """Dichoosability of D and a (k-1)-assignment with no L-dicolouring."""
    if D.n == 0:
        return 0, None
    best, witness = 0, None
    for comp in weak_components(D):
        H = induced_subdigraph(D, comp)
        k, bad = _dichoosability_connected(H)
        if k > best:
            best = k
            witness = None if bad is None else _pad_witness(D.n, comp, bad, k - 1)
    return best, witness


def _dichoosability_connected(H: Digraph):
    lower = dichromatic_number(H)[0]
    upper = di_degeneracy(H) + 1
    bad = ListAssignment.uniform(H.n, range(1, lower)) if lower > 1 else None
    for k in range(lower, upper):
        found = find_uncolourable_assignment(H, k)
        if found is None:
            return k, bad
        bad = found
    return max(upper, lower), bad


# --- certificates ----------------------------------------------------------------------------

TRANSCRIPT_STATEMENT = "all L-colourings checked: none is a dicolouring"


class CertificateError(ValueError):
    """A certificate is malformed; ``check`` names the failed check."""

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


@dataclasses.dataclass(frozen=True)
class LowerBoundCertificate:
    """Orientation plus r-uniform lists with no L-dicolouring: dic_l >= r + 1."""

    graph: Graph
    orientation: Digraph
    lists: ListAssignment
    claimed_bound: int
    colourings_checked: int
    statement: str = TRANSCRIPT_STATEMENT


def _all_list_colourings(L: ListAssignment):
    return itertools.product(*(sorted(lst) for lst in L.lists))


def make_certificate(G: Graph, D: Digraph, L: ListAssignment) -> LowerBoundCertificate:
    """Replay all L-colourings of D and package the result; raises if one is a dicolouring."""
    size = L.uniform_size
    if size is None:
        raise ValueError("certificate lists must be uniform")
    count = 0
    for colouring in _all_list_colourings(L):
        count += 1
        if is_dicolouring(D, colouring):
            raise ValueError(f"L-dicolouring {list(colouring)} exists; no lower bound")
    return LowerBoundCertificate(G, D, L, size + 1, count)


def certificate_failures(cert: LowerBoundCertificate) -> list[str]:
    """Names of the failed checks (empty when the certificate is valid)."""
    G, D, L = cert.graph, cert.orientation, cert.lists
    if D.n != G.n or L.n != G.n:
        raise CertificateError("shape", "graph, orientation and lists disagree on the vertex count")
    if cert.claimed_bound < 2:
        raise CertificateError("claim", "a lower bound below 2 needs no certificate")
    failures = []
    if D.has_digon():
        failures.append("orientation-has-digon")
    if underlying_graph(D) != G:
        failures.append("underlying-graph-mismatch")
    if any(len(lst) != cert.claimed_bound - 1 for lst in L.lists):
        failures.append("list-size-mismatch")
    total = L.count_colourings()
    if total > get_caps().max_colouring_product:
        raise CertificateError("replay", f"{total} colourings exceed the replay cap")
    if total != cert.colourings_checked:
        failures.append("colouring-count-mismatch")
    classes_ok = _acyclic_table(D)
    for colouring in _all_list_colourings(L):
        masks: dict[int, int] = {}
        for v, c in enumerate(colouring):
            masks[c] = masks.get(c, 0) | 1 << v
        if all(classes_ok(m) for m in masks.values()):
            failures.append("dicolouring-exists")
            break
    return failures


def _acyclic_table(D: Digraph):
    cache: dict[int, bool] = {}

    def check(mask: int) -> bool:
        if mask not in cache:
            cache[mask] = is_acyclic_within(D.out_adj, mask)
        return cache[mask]

    return check


def verify_certificate(cert: LowerBoundCertificate) -> bool:
    return not certificate_failures(cert)


def dichoosability_of_graph(G: Graph) -> tuple[int, LowerBoundCertificate | None]:
    """Maximum dichoosability over the orientations of G, with a certificate.

    Reversing every arc preserves dichoosability, so only orientations whose
    last edge keeps its default direction are searched.
    """
    if G.n == 0:
        return 0, None
    if G.m == 0:
        return 1, None
    best, best_D, best_L = 0, None, None
    for bits in range(1 << (G.m - 1)):
        D = orientation_from_bits(G, bits)
        k, bad = dichoosability(D)
        if k > best:
            best, best_D, best_L = k, D, bad
    if best < 2:
        return best, None
    return best, make_certificate(G, best_D, best_L)


def dichoosability_all_orientations(G: Graph) -> list[int]:
    """Dichoosability of every orientation in enumeration order."""
    return [dichoosability(D)[0] for D in enumerate_orientations(G)]
