"""Subgraph extraction: max-cut bipartite subgraphs, minimum-degree cores,
the Kuhn-Osthus style extraction and the monochromatic subgraph."""

from __future__ import annotations

import dataclasses
from collections import deque
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .config import get_caps
from .dicolour import as_colour_list
from .graphs import Graph, average_degree, induced_subgraph, iter_bits


@dataclasses.dataclass(frozen=True)
class BipartiteWitness:
    """Two disjoint vertex sets of ``host``; the witness graph keeps the cross edges."""

    host: Graph
    side_a: tuple
    side_b: tuple

    def __post_init__(self):
        a, b = tuple(sorted(set(self.side_a))), tuple(sorted(set(self.side_b)))
        if set(a) & set(b):
            raise ValueError("sides must be disjoint")
        if any(not 0 <= v < self.host.n for v in a + b):
            raise ValueError("side vertex out of range")
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    @property
    def cross_edges(self) -> list[tuple[int, int]]:
        a = set(self.side_a)
        b = set(self.side_b)
        return [(u, v) for u, v in self.host.edge_list if (u in a and v in b) or (u in b and v in a)]

    def subgraph(self) -> Graph:
        """Cross edges only, re-indexed over ``side_a + side_b`` (A first)."""
        keep = self.side_a + self.side_b
        index = {v: i for i, v in enumerate(keep)}
        edges = {(index[u], index[v]) for u, v in self.cross_edges}
        origin = keep if self.host.origin is None else tuple(self.host.origin[v] for v in keep)
        return Graph(len(keep), frozenset(edges), origin=origin)

    def degree_in(self, v: int) -> int:
        other = self.side_b if v in set(self.side_a) else self.side_a
        mask = sum(1 << w for w in other)
        return (self.host.adj[v] & mask).bit_count()


# --- max cut ------------------------------------------------------------------------


def _cut_size(G: Graph, side: Sequence[int]) -> int:
    return sum(1 for u, v in G.edges if side[u] != side[v])


def _local_search(G: Graph, side: list[int]) -> list[int]:
    improved = True
    while improved:
        improved = False
        for v in range(G.n):
            same = sum(1 for w in iter_bits(G.adj[v]) if side[w] == side[v])
            if same > G.degree(v) - same:
                side[v] ^= 1
                improved = True
    return side


def _bfs_layers(G: Graph) -> list[int]:
    side = [-1] * G.n
    for root in range(G.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in iter_bits(G.adj[v]):
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
    return side


def _exact_cut(G: Graph) -> list[int]:
    n = G.n
    if n <= 1 or G.m == 0:
        return [0] * n
    us = np.array([u for u, _ in G.edge_list], dtype=np.int64)
    vs = np.array([v for _, v in G.edge_list], dtype=np.int64)
    best_mask, best = 0, -1
    total = 1 << (n - 1)  # vertex n-1 stays on side 0
    chunk = 1 << 16
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cuts = np.zeros(len(masks), dtype=np.int64)
        for u, v in zip(us, vs):
            cuts += ((masks >> u) ^ (masks >> v)) & 1
        i = int(np.argmax(cuts))
        if cuts[i] > best:
            best, best_mask = int(cuts[i]), int(masks[i])
    return [best_mask >> v & 1 for v in range(n)]


def max_cut_bipartite(G: Graph, start: Sequence[int] | None = None, exact: bool | None = None) -> BipartiteWitness:
    """Bipartite subgraph keeping at least half of the edges.

    With ``start`` (a 0/1 side per vertex) the result is the local optimum
    reached from it.  Otherwise an exhaustive maximum cut is used for small
    graphs and BFS layering plus local search for larger ones; either way every
    vertex ends with at least half its neighbours across the cut.
    """
    if G.n < 1:
        raise ValueError("max cut needs at least one vertex")
    if start is not None:
        side = [int(s) for s in start]
        if len(side) != G.n or set(side) - {0, 1}:
            raise ValueError("start must give side 0 or 1 for every vertex")
    else:
        if exact is None:
            exact = G.n <= get_caps().max_exact_cut_vertices
        side = _exact_cut(G) if exact else _bfs_layers(G)
    side = _local_search(G, side)
    witness = BipartiteWitness(G, [v for v in range(G.n) if side[v] == 0], [v for v in range(G.n) if side[v] == 1])
    assert 2 * len(witness.cross_edges) >= G.m
    return witness


# --- cores ----------------------------------------------------------------------------


def core_vertices(G: Graph, t: int, order: Iterable[int] | None = None) -> list[int]:
    """Vertices of the maximal subgraph with minimum degree >= t.

    Peels the lowest-index vertex of degree < t first, or follows ``order`` as a
    priority when given; the surviving set does not depend on it.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    priority = list(range(G.n)) if order is None else list(order)
    alive = (1 << G.n) - 1
    deg = [G.degree(v) for v in range(G.n)]
    changed = True
    while changed:
        changed = False
        for v in priority:
            if alive >> v & 1 and deg[v] < t:
                alive &= ~(1 << v)
                for w in iter_bits(G.adj[v] & alive):
                    deg[w] -= 1
                changed = True
                break
    return iter_bits(alive)


def min_degree_core(G: Graph, t: int) -> Graph:
    return induced_subgraph(G, core_vertices(G, t))


# --- Kuhn-Osthus extraction -----------------------------------------------------------


class ExtractionFailed(RuntimeError):
    """The budgeted search found no witness meeting the contract."""

    def __init__(self, message: str, attempts: list[dict]):
        super().__init__(message)
        self.attempts = attempts


@dataclasses.dataclass(frozen=True)
class KOAudit:
    ratio_ok: bool
    degrees_ok: bool
    size_a: int
    size_b: int
    min_degree: int | None
    max_degree: int | None
    required_ratio: Fraction

    @property
    def passed(self) -> bool:
        return self.ratio_ok and self.degrees_ok and self.size_a > 0


def _bipartite_sides(G: Graph, side_a, side_b) -> tuple[list[int], list[int]]:
    a, b = sorted(set(side_a)), sorted(set(side_b))
    if set(a) & set(b) or set(a) | set(b) != set(range(G.n)):
        raise ValueError("sides must partition the vertex set")
    in_a = set(a)
    for u, v in G.edges:
        if (u in in_a) == (v in in_a):
            raise ValueError(f"edge {u} {v} lies inside one side")
    return a, b


def ko_audit(G: Graph, side_a, side_b, d, gamma=None) -> KOAudit:
    """Check |A*| >= gamma/(128 d) |B*| and 4d <= deg(a) <= 64d on G[A* u B*]."""
    d = Fraction(d)
    gamma = average_degree(G) if gamma is None else Fraction(gamma)
    a, b = list(side_a), list(side_b)
    bmask = sum(1 << v for v in b)
    degs = [(G.adj[v] & bmask).bit_count() for v in a]
    required = gamma / (128 * d)
    return KOAudit(
        ratio_ok=len(a) >= required * len(b),
        degrees_ok=all(4 * d <= x <= 64 * d for x in degs),
        size_a=len(a),
        size_b=len(b),
        min_degree=min(degs, default=None),
        max_degree=max(degs, default=None),
        required_ratio=required,
    )


def kuhn_osthus_extract(G: Graph, side_a, side_b, d, max_attempts: int = 64) -> tuple[BipartiteWitness, KOAudit]:
    """Induced G* = G[A* u B*] with |A*| >= (Gamma/128d)|B*| and 4d <= deg(a) <= 64d.

    Gamma is the average degree of G.  The search buckets A by degree class
    [2^j 4d, 2^j 8d) and, inside each bucket, repeatedly discards the B-vertex
    with most neighbours among the surviving A-candidates.  Every candidate is
    audited; only an audited witness is returned.
    """
    d = Fraction(d)
    a_all, b_all = _bipartite_sides(G, side_a, side_b)
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    gamma = average_degree(G)
    if not gamma > 16 * d:
        raise ValueError(f"need average degree {gamma} > 16d = {16 * d}")

    buckets: dict[int, list[int]] = {}
    for a in a_all:
        deg = G.degree(a)
        if deg < 4 * d:
            continue
        j = 0
        while deg >= 2 ** (j + 1) * 4 * d:
            j += 1
        buckets.setdefault(j, []).append(a)

    attempts = []
    for j in sorted(buckets)[:max_attempts]:
        cand = buckets[j]
        b_keep = sorted({w for a in cand for w in iter_bits(G.adj[a])})
        result = _trim(G, cand, b_keep, d, gamma, attempts, j)
        if result is not None:
            return result
    raise ExtractionFailed(f"no audited witness within {len(attempts)} bucket attempts", attempts)


def _trim(G, cand, b_keep, d, gamma, attempts, bucket):
    cand = list(cand)
    b_keep = set(b_keep)
    steps = 0
    while True:
        bmask = sum(1 << v for v in b_keep)
        deg = {a: (G.adj[a] & bmask).bit_count() for a in cand}
        cand = [a for a in cand if deg[a] >= 4 * d]
        if not cand:
            attempts.append({"bucket": bucket, "steps": steps, "outcome": "candidates exhausted"})
            return None
        a_star = [a for a in cand if deg[a] <= 64 * d]
        if a_star:
            amask = sum(1 << a for a in a_star)
            b_star = sorted(v for v in b_keep if G.adj[v] & amask)
            audit = ko_audit(G, a_star, b_star, d, gamma)
            if audit.passed:
                attempts.append({"bucket": bucket, "steps": steps, "outcome": "audited witness"})
                return BipartiteWitness(G, a_star, b_star), audit
        cmask = sum(1 << a for a in cand)
        drop = max(sorted(b_keep), key=lambda v: (G.adj[v] & cmask).bit_count())
        b_keep.discard(drop)
        steps += 1


# --- monochromatic subgraph -----------------------------------------------------------------


def monochromatic_subgraph(G: Graph, side_a, side_b, colouring: Mapping[int, int] | Sequence[int], k: int) -> tuple[Graph, list[int]]:
    """Graph on A' u B with the monochromatic edges, where A' are the A-vertices
    having at least k neighbours of their own colour.  Returns it with A'."""
    a, b = _bipartite_sides(G, side_a, side_b)
    colours = as_colour_list(G.n, colouring)
    a_prime = [
        v for v in a if sum(1 for w in iter_bits(G.adj[v]) if colours[w] == colours[v]) >= k
    ]
    keep = sorted(a_prime + b)
    index = {v: i for i, v in enumerate(keep)}
    edges = {
        (index[u], index[v])
        for u, v in G.edges
        if u in index and v in index and colours[u] == colours[v]
    }
    H = Graph(len(keep), frozenset(edges), origin=tuple(keep))
    return H, a_prime
