"""Generators: the large semi-degree tournament, complete bipartite graphs, bidirected
digraphs and seeded random instances."""

from __future__ import annotations

import dataclasses
from fractions import Fraction

import numpy as np

from .graphs import Digraph, Graph
from .rng import make_rng


@dataclasses.dataclass(frozen=True)
class TournamentSpec:
    """Block layout of the tournament for parameter ``d``.

    Vertex ``u_k`` (1-based, as in the construction) is index ``k - 1``.
    """

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be a positive integer")

    @property
    def n(self) -> int:
        return 2 * self.d * (self.d + 1)

    @property
    def num_blocks(self) -> int:
        return 2 * (self.d + 1)

    def block(self, i: int) -> list[int]:
        """0-based indices of block ``U_i`` for ``1 <= i <= num_blocks``."""
        if not 1 <= i <= self.num_blocks:
            raise ValueError(f"block index {i} out of range")
        return list(range(self.d * (i - 1), self.d * i))

    def special_arcs(self) -> tuple[set, set]:
        d, n = self.d, self.n
        into_first = {(v, i - 1) for i in range(1, d + 1) for v in self.block(1 + d + i)}
        from_last = {(n - i, v) for i in range(1, d + 1) for v in self.block(1 + i)}
        return into_first, from_last


def semidegree_tournament(d: int) -> Digraph:
    """Tournament on ``2d(d+1)`` vertices with min in/out-degree at least ``d``
    whose backedge graph under ``u_1 < ... < u_n`` is a star forest."""
    spec = TournamentSpec(d)
    into_first, from_last = spec.special_arcs()
    arcs = into_first | from_last
    adjacent = {frozenset(a) for a in arcs}
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            if frozenset((i, j)) not in adjacent:
                arcs.add((i, j))
    return Digraph(spec.n, frozenset(arcs))


def vertex_label(v: int) -> str:
    return f"u{v + 1}"


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise ValueError("part sizes must be non-negative")
    return Graph(a + b, frozenset((i, a + j) for i in range(a) for j in range(b)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise ValueError("a directed cycle needs at least 2 vertices")
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def transitive_tournament(n: int) -> Digraph:
    return Digraph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def bidirected(G: Graph) -> Digraph:
    return Digraph(G.n, frozenset(a for u, v in G.edges for a in ((u, v), (v, u))))


def _probability(p) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    return p


def _coin(rng, p: Fraction, count: int) -> np.ndarray:
    # exact rational threshold: edge iff U < p * 2^63 with U uniform on [0, 2^63)
    draws = rng.integers(0, 2**63, size=count, dtype=np.int64)
    threshold = -(-p.numerator * 2**63 // p.denominator)
    if threshold >= 2**63:
        return np.ones(count, dtype=bool)
    return draws < threshold


def random_graph(n: int, p, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), seed-deterministic."""
    p = _probability(p)
    rows, cols = np.triu_indices(n, 1)
    keep = _coin(make_rng(seed), p, len(rows))
    return Graph(n, frozenset(zip(rows[keep].tolist(), cols[keep].tolist())))


def random_bipartite(a: int, b: int, p, seed: int) -> Graph:
    """Random subgraph of K_{a,b} (parts ``0..a-1`` and ``a..a+b-1``)."""
    p = _probability(p)
    rows, cols = np.divmod(np.arange(a * b), b) if b else (np.zeros(0, int), np.zeros(0, int))
    keep = _coin(make_rng(seed), p, a * b)
    return Graph(a + b, frozenset(zip(rows[keep].tolist(), (cols[keep] + a).tolist())))
