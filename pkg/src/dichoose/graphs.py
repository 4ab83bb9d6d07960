"""Graph and digraph representations plus the basic operations on them.

Vertices are dense integers ``0..n-1``.  Both types are immutable; adjacency
is also exposed as integer bitmasks, which is what the exhaustive searches
work on.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .config import CapExceeded, get_caps
from .rng import make_rng


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def iter_bits(mask: int) -> list[int]:
    return list(_bits(mask))


@dataclasses.dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``origin`` optionally maps each vertex to its index in a host graph (set by
    the subgraph operations); it does not take part in equality.
    """

    n: int
    edges: frozenset = frozenset()
    origin: tuple | None = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized = frozenset((u, v) if u < v else (v, u) for u, v in ((int(a), int(b)) for a, b in self.edges))
        for u, v in normalized:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u < 0 or v >= self.n:
                raise ValueError(f"edge {u} {v} out of range for n={self.n}")
        object.__setattr__(self, "edges", normalized)
        if self.origin is not None:
            object.__setattr__(self, "origin", tuple(self.origin))
            if len(self.origin) != self.n:
                raise ValueError("origin map must have one entry per vertex")

    @cached_property
    def adj(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbours(self, v: int) -> list[int]:
        return iter_bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_list})"


@dataclasses.dataclass(frozen=True)
class Digraph:
    """Directed graph without loops; digons (u->v and v->u) are allowed."""

    n: int
    arcs: frozenset = frozenset()
    origin: tuple | None = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        checked = set()
        for u, v in self.arcs:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc {u} {v} out of range for n={self.n}")
            checked.add((u, v))
        object.__setattr__(self, "arcs", frozenset(checked))
        if self.origin is not None:
            object.__setattr__(self, "origin", tuple(self.origin))
            if len(self.origin) != self.n:
                raise ValueError("origin map must have one entry per vertex")

    @cached_property
    def out_adj(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_adj(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def arc_list(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_adj[u] >> v & 1)

    def has_digon(self) -> bool:
        return any((v, u) in self.arcs for u, v in self.arcs)

    def digons(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, v in self.arcs if u < v and (v, u) in self.arcs)

    def out_degree(self, v: int) -> int:
        return self.out_adj[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_adj[v].bit_count()

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.arc_list})"


# --- acyclicity ---------------------------------------------------------------


def is_acyclic_within(out_adj: Sequence[int], subset: int) -> bool:
    """Whether the subdigraph induced by the bitmask ``subset`` is acyclic."""
    remaining = subset
    while remaining:
        # a sink of the remaining digraph can always be removed
        for v in _bits(remaining):
            if not out_adj[v] & remaining:
                remaining &= ~(1 << v)
                break
        else:
            return False
    return True


def reaches(out_adj: Sequence[int], source: int, target: int, within: int) -> bool:
    """Whether ``target`` is reachable from ``source`` through vertices of ``within``."""
    seen = 1 << source
    frontier = 1 << source
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= out_adj[v]
        if nxt >> target & 1:
            return True
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return False


def topological_order(D: Digraph) -> list[int] | None:
    """Kahn peeling; returns ``None`` when D has a directed cycle."""
    indeg = [D.in_degree(v) for v in range(D.n)]
    queue = deque(v for v in range(D.n) if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in _bits(D.out_adj[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order if len(order) == D.n else None


def is_acyclic(D: Digraph) -> bool:
    return topological_order(D) is not None


def find_cycle(D: Digraph) -> list[int] | None:
    """One directed cycle as a vertex list ``[v0, v1, ..., vk]`` (arc vk->v0 closes it)."""
    state = [0] * D.n  # 0 new, 1 on stack, 2 done
    for root in range(D.n):
        if state[root]:
            continue
        stack = [(root, iter(iter_bits(D.out_adj[root])))]
        path = [root]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if state[w] == 1:
                    return path[path.index(w):]
                if state[w] == 0:
                    state[w] = 1
                    path.append(w)
                    stack.append((w, iter(iter_bits(D.out_adj[w]))))
                    break
            else:
                state[v] = 2
                stack.pop()
                path.pop()
    return None


# --- structure ------------------------------------------------------------------


def underlying_graph(D: Digraph) -> Graph:
    return Graph(D.n, frozenset((min(u, v), max(u, v)) for u, v in D.arcs), origin=D.origin)


def degrees(G: Graph) -> list[int]:
    return [G.degree(v) for v in range(G.n)]


def average_degree(G: Graph) -> Fraction:
    if G.n == 0:
        raise ValueError("average degree of the empty graph is undefined")
    return Fraction(2 * G.m, G.n)


def min_degree(G: Graph) -> int:
    if G.n == 0:
        raise ValueError("minimum degree of the empty graph is undefined")
    return min(degrees(G))


def max_degree(G: Graph) -> int:
    return max(degrees(G), default=0)


def in_degrees(D: Digraph) -> list[int]:
    return [D.in_degree(v) for v in range(D.n)]


def out_degrees(D: Digraph) -> list[int]:
    return [D.out_degree(v) for v in range(D.n)]


def min_in_degree(D: Digraph) -> int:
    if D.n == 0:
        raise ValueError("empty digraph")
    return min(in_degrees(D))


def min_out_degree(D: Digraph) -> int:
    if D.n == 0:
        raise ValueError("empty digraph")
    return min(out_degrees(D))


def _check_subset(n: int, subset: Iterable[int]) -> list[int]:
    keep = sorted(set(int(v) for v in subset))
    for v in keep:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
    return keep


def _compose_origin(host_origin, keep):
    if host_origin is None:
        return tuple(keep)
    return tuple(host_origin[v] for v in keep)


def induced_subgraph(G: Graph, subset: Iterable[int]) -> Graph:
    """Subgraph induced by ``subset``, re-indexed; ``origin`` maps back to G."""
    keep = _check_subset(G.n, subset)
    index = {v: i for i, v in enumerate(keep)}
    edges = {(index[u], index[v]) for u, v in G.edges if u in index and v in index}
    return Graph(len(keep), frozenset(edges), origin=_compose_origin(G.origin, keep))


def induced_subdigraph(D: Digraph, subset: Iterable[int]) -> Digraph:
    keep = _check_subset(D.n, subset)
    index = {v: i for i, v in enumerate(keep)}
    arcs = {(index[u], index[v]) for u, v in D.arcs if u in index and v in index}
    return Digraph(len(keep), frozenset(arcs), origin=_compose_origin(D.origin, keep))


def connected_components(G: Graph) -> list[list[int]]:
    seen = 0
    components = []
    for root in range(G.n):
        if seen >> root & 1:
            continue
        comp = 1 << root
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= G.adj[v]
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        seen |= comp
        components.append(iter_bits(comp))
    return components


def bipartition(G: Graph) -> tuple[list[int], list[int]] | None:
    """2-colouring by BFS (lowest vertex of each component on the first side)."""
    side = [-1] * G.n
    for root in range(G.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in _bits(G.adj[v]):
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return [v for v in range(G.n) if side[v] == 0], [v for v in range(G.n) if side[v] == 1]


def degeneracy(G: Graph) -> int:
    """Largest minimum degree over all subgraphs."""
    remaining = (1 << G.n) - 1
    best = 0
    while remaining:
        v = min(_bits(remaining), key=lambda x: ((G.adj[x] & remaining).bit_count(), x))
        best = max(best, (G.adj[v] & remaining).bit_count())
        remaining &= ~(1 << v)
    return best


# --- orderings and orientations ---------------------------------------------------


def check_ordering(n: int, order: Sequence[int]) -> list[int]:
    order = [int(v) for v in order]
    if sorted(order) != list(range(n)):
        raise ValueError("ordering must be a permutation of the vertex set")
    return order


def backedge_graph(D: Digraph, order: Sequence[int]) -> Graph:
    """Edge uv for every arc u->v with v earlier than u in ``order``."""
    order = check_ordering(D.n, order)
    rank = {v: i for i, v in enumerate(order)}
    return Graph(D.n, frozenset((u, v) for u, v in D.arcs if rank[v] < rank[u]))


def is_star_forest(G: Graph) -> bool:
    for comp in connected_components(G):
        size = len(comp)
        if size <= 2:
            continue
        n_edges = sum(G.degree(v) for v in comp) // 2
        if n_edges != size - 1 or max(G.degree(v) for v in comp) != size - 1:
            return False
    return True


def orientation_from_bits(G: Graph, bits: int) -> Digraph:
    """Bit i of ``bits`` reverses the i-th edge of ``G.edge_list`` (default u->v, u<v)."""
    arcs = []
    for i, (u, v) in enumerate(G.edge_list):
        arcs.append((v, u) if bits >> i & 1 else (u, v))
    return Digraph(G.n, frozenset(arcs))


def orientation_bits(m: int, seed: int, *stream: int) -> int:
    """The reversal bits of the seeded random orientation of an m-edge graph."""
    flips = make_rng(seed, *stream).integers(0, 2, size=m)
    bits = 0
    for i, f in enumerate(flips):
        if f:
            bits |= 1 << i
    return bits


def random_orientation(G: Graph, seed: int, *stream: int) -> Digraph:
    """Each edge independently u->v or v->u with probability 1/2."""
    return orientation_from_bits(G, orientation_bits(G.m, seed, *stream))


def enumerate_orientations(G: Graph, cap: int | None = None) -> Iterator[Digraph]:
    cap = get_caps().max_orientation_edges if cap is None else cap
    if G.m > cap:
        raise CapExceeded(
            f"{G.m} edges exceed the exhaustive orientation cap ({cap}); use sampling mode"
        )
    for bits in range(1 << G.m):
        yield orientation_from_bits(G, bits)
