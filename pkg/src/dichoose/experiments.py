"""Seeded Monte Carlo experiments: random orientations, saturated vertices,
orientation witnesses and the full extraction pipeline.

Trial ``i`` always draws from the stream ``(seed, i)``, so reports do not
depend on how trials are split across worker processes.  Experiments measure
and report; the only hard assertions are exactly checkable facts.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial
from typing import Callable, Mapping, Sequence

from .bounds import acyclic_orientation_bound, count_acyclic_orientations, pipeline_degree_threshold
from .config import CapExceeded, get_caps
from .extraction import ExtractionFailed, kuhn_osthus_extract, max_cut_bipartite
from .graphs import (
    Graph,
    average_degree,
    enumerate_orientations,
    induced_subgraph,
    is_acyclic_within,
    iter_bits,
    orientation_bits,
    random_orientation,
)
from .listcolour import ListAssignment, LowerBoundCertificate, exists_L_dicolouring, make_certificate
from .reports import ExperimentReport
from .rng import make_rng, random_subset


def run_trials(fn: Callable[[int], object], trials: int, workers: int = 1) -> list:
    """``[fn(0), ..., fn(trials - 1)]``, optionally spread over processes."""
    if trials < 0:
        raise ValueError("trials must be non-negative")
    if workers <= 1 or trials < 2:
        return [fn(i) for i in range(trials)]
    chunks = [range(lo, min(trials, lo + math.ceil(trials / workers))) for lo in range(0, trials, math.ceil(trials / workers))]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(partial(_run_chunk, fn), chunks))
    return [x for part in parts for x in part]


def _run_chunk(fn, indices):
    return [fn(i) for i in indices]


# --- acyclic orientations ----------------------------------------------------------


def _acyclic_trial(edges, n, seed, i) -> bool:
    bits = orientation_bits(len(edges), seed, i)
    out = [0] * n
    for j, (u, v) in enumerate(edges):
        if bits >> j & 1:
            out[v] |= 1 << u
        else:
            out[u] |= 1 << v
    return is_acyclic_within(out, (1 << n) - 1)


def mc_acyclic_probability(G: Graph, trials: int, seed: int, workers: int = 1, exact_edges: int = 20) -> ExperimentReport:
    """Fraction of seeded random orientations of G that are acyclic."""
    if trials < 1:
        raise ValueError("need at least one trial")
    fn = partial(_acyclic_trial, tuple(G.edge_list), G.n, seed)
    outcomes = [int(x) for x in run_trials(fn, trials, workers)]
    freq = Fraction(sum(outcomes), trials)
    p = float(freq)
    stderr = math.sqrt(p * (1 - p) / trials)
    stats = {"acyclic_count": sum(outcomes), "frequency": p, "standard_error": stderr}
    bounds = {}
    if G.n:
        gamma = average_degree(G)
        bounds["average_degree"] = gamma
        bounds["acyclicity_bound"] = acyclic_orientation_bound(gamma, G.n)
    if G.m <= exact_edges:
        exact = Fraction(count_acyclic_orientations(G), 2**G.m)
        bounds["exact_probability"] = exact
        bounds["deviation"] = p - float(exact)
    return ExperimentReport(
        "acyclic",
        {"n": G.n, "m": G.m},
        seed,
        trials,
        outcomes,
        stats,
        bounds,
    )


# --- saturation ------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class SaturationParams:
    """List size r over the universe {1..r^2}; neighbour threshold k."""

    r: int
    k: int

    def __post_init__(self):
        if self.r < 1 or self.k < 0:
            raise ValueError("need r >= 1 and k >= 0")

    @property
    def universe(self) -> int:
        return self.r * self.r

    @property
    def half(self) -> int:
        return self.universe // 2

    @property
    def threshold(self) -> Fraction:
        return Fraction(self.k * self.universe, 2)

    @property
    def ell(self) -> int:
        return (self.k * self.universe - 1) // 2

    def half_family(self):
        return itertools.combinations(range(1, self.universe + 1), self.half)

    def family_size(self) -> int:
        return math.comb(self.universe, self.half)

    def check_cap(self):
        cap = get_caps().max_saturation_r
        if self.r > cap:
            raise CapExceeded(f"r = {self.r} exceeds the saturation enumeration cap ({cap})")


def _mask(colours) -> int:
    m = 0
    for c in colours:
        m |= 1 << c
    return m


def is_saturated(G: Graph, a: int, lists_b: Mapping[int, frozenset], params: SaturationParams) -> bool:
    """Every half-size colour set contains the lists of >= k r^2 / 2 neighbours of a."""
    params.check_cap()
    neighbour_masks = [_mask(lists_b[b]) for b in iter_bits(G.adj[a]) if b in lists_b]
    for P in params.half_family():
        pm = _mask(P)
        inside = sum(1 for lm in neighbour_masks if lm & ~pm == 0)
        if inside < params.threshold:
            return False
    return True


def is_truly_saturated(G: Graph, a: int, list_a, colouring_b: Mapping[int, int], k: int) -> bool:
    """Each colour of a's list appears on at least k neighbours of a."""
    counts: dict[int, int] = {}
    for b in iter_bits(G.adj[a]):
        if b in colouring_b:
            counts[colouring_b[b]] = counts.get(colouring_b[b], 0) + 1
    return all(counts.get(c, 0) >= k for c in list_a)


def sample_lists(vertices: Sequence[int], params: SaturationParams, rng) -> dict[int, frozenset]:
    return {v: random_subset(rng, params.universe, params.r) for v in vertices}


def _non_saturation_bound(degree: int, params: SaturationParams) -> float:
    """Union bound over the half family for one vertex of the given degree."""
    ell = params.ell
    if degree <= ell:
        return 1.0
    p = 1 - 2.0 ** -(params.r + 2)
    log_value = (
        math.log(params.family_size())
        + math.log(math.comb(degree, ell))
        + (degree - ell) * math.log(p)
    )
    return min(1.0, math.exp(log_value))


def _saturation_trial(G, side_a, side_b, params, seed, fixed, i):
    lists = dict(fixed) if fixed is not None else sample_lists(side_b, params, make_rng(seed, i))
    saturated = sum(1 for a in side_a if is_saturated(G, a, lists, params))
    return Fraction(saturated, len(side_a))


def saturation_experiment(
    G: Graph,
    side_a: Sequence[int],
    side_b: Sequence[int],
    params: SaturationParams,
    trials: int,
    seed: int,
    fixed_lists: Mapping[int, frozenset] | None = None,
    workers: int = 1,
) -> ExperimentReport:
    """Fraction of saturated A-vertices under random r-subset lists on B."""
    side_a, side_b = sorted(side_a), sorted(side_b)
    if not side_a:
        raise ValueError("side A is empty")
    params.check_cap()
    fn = partial(_saturation_trial, G, tuple(side_a), tuple(side_b), params, seed,
                 None if fixed_lists is None else tuple(sorted(fixed_lists.items())))
    outcomes = run_trials(fn, trials, workers)
    half_or_more = sum(1 for f in outcomes if f >= Fraction(1, 2))
    containment = Fraction(math.comb(params.half, params.r), math.comb(params.universe, params.r))
    degrees = [G.degree(a) for a in side_a]
    per_vertex = [_non_saturation_bound(d, params) for d in degrees]
    stats = {
        "mean_fraction": float(sum(outcomes, Fraction(0)) / trials) if trials else None,
        "min_fraction": min(outcomes, default=None),
        "max_fraction": max(outcomes, default=None),
        "trials_with_half_saturated": half_or_more,
    }
    bounds = {
        "threshold": params.threshold,
        "ell": params.ell,
        "containment_probability": containment,
        "containment_lower_bound": Fraction(1, 2 ** (params.r + 2)),
        "mean_non_saturation_union_bound": sum(per_vertex) / len(per_vertex),
    }
    return ExperimentReport(
        "saturation",
        {"r": params.r, "k": params.k, "|A|": len(side_a), "|B|": len(side_b), "fixed_lists": fixed_lists is not None},
        seed,
        trials,
        outcomes,
        stats,
        bounds,
    )


def count_truly_saturated(G: Graph, side_a, lists_a: Mapping[int, frozenset], colouring_b: Mapping[int, int], k: int) -> int:
    """X_beta: number of A-vertices truly saturated with respect to the B-colouring."""
    total = 0
    for a in side_a:
        counts: dict[int, int] = {}
        for b in iter_bits(G.adj[a]):
            c = colouring_b.get(b)
            if c is not None:
                counts[c] = counts.get(c, 0) + 1
        if all(counts.get(c, 0) >= k for c in lists_a[a]):
            total += 1
    return total


def _b_colourings(side_b, lists_b, mode, samples, rng):
    if mode == "exhaustive":
        choices = [sorted(lists_b[b]) for b in side_b]
        for combo in itertools.product(*choices):
            yield dict(zip(side_b, combo))
    else:
        for _ in range(samples):
            yield {b: sorted(lists_b[b])[int(rng.integers(0, len(lists_b[b])))] for b in side_b}


def _truly_trial(G, side_a, side_b, params, lists_b, mode, samples, seed, i):
    rng = make_rng(seed, i)
    lists_a = sample_lists(side_a, params, rng)
    best, best_beta = None, None
    for beta in _b_colourings(side_b, lists_b, mode, samples, rng):
        x = count_truly_saturated(G, side_a, lists_a, beta, params.k)
        if best is None or x < best:
            best, best_beta = x, beta
    if best_beta is not None:
        direct = sum(1 for a in side_a if is_truly_saturated(G, a, lists_a[a], best_beta, params.k))
        assert direct == best, "X_beta disagrees with the per-vertex count"
    return best


def truly_saturated_experiment(
    G: Graph,
    side_a: Sequence[int],
    side_b: Sequence[int],
    params: SaturationParams,
    lists_b: Mapping[int, frozenset],
    trials: int,
    seed: int,
    mode: str = "exhaustive",
    samples: int = 256,
    workers: int = 1,
) -> ExperimentReport:
    """Minimum over B-colourings of X_beta, for random lists on A."""
    side_a, side_b = sorted(side_a), sorted(side_b)
    if mode not in ("exhaustive", "sampled"):
        raise ValueError("mode must be 'exhaustive' or 'sampled'")
    if mode == "exhaustive":
        total = math.prod(len(lists_b[b]) for b in side_b)
        cap = get_caps().max_colouring_product
        if total > cap:
            raise CapExceeded(f"{total} B-colourings exceed the cap ({cap}); use sampled mode")
    lists_b = {b: frozenset(lists_b[b]) for b in side_b}
    fn = partial(_truly_trial, G, tuple(side_a), tuple(side_b), params,
                 lists_b, mode, samples, seed)
    outcomes = run_trials(fn, trials, workers)
    target = Fraction(len(side_a), 2 ** (params.r + 4))
    attained = [x is not None and x >= target for x in outcomes]
    return ExperimentReport(
        "truly-saturated",
        {"r": params.r, "k": params.k, "|A|": len(side_a), "|B|": len(side_b), "mode": mode,
         "samples": samples if mode == "sampled" else None},
        seed,
        trials,
        outcomes,
        {"trials_attaining_target": sum(attained), "min_over_trials": min((x for x in outcomes if x is not None), default=None)},
        {"target": target},
    )


# --- orientation witnesses ----------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class WitnessSearch:
    """``status`` is 'found', 'none' (exhaustive non-existence) or 'budget-exhausted'."""

    status: str
    certificate: LowerBoundCertificate | None
    orientations_tried: int


def witness_orientation_search(
    G: Graph, L: ListAssignment, mode: str = "exhaustive", budget: int = 1000, seed: int = 0
) -> WitnessSearch:
    """Look for an orientation of G admitting no L-dicolouring."""
    if L.n != G.n:
        raise ValueError("list assignment does not match the graph")
    if mode == "exhaustive":
        candidates = enumerate_orientations(G)
    elif mode == "sampled":
        candidates = (random_orientation(G, seed, i) for i in range(budget))
    else:
        raise ValueError("mode must be 'exhaustive' or 'sampled'")
    tried = 0
    for D in candidates:
        tried += 1
        if exists_L_dicolouring(D, L) is None:
            return WitnessSearch("found", make_certificate(G, D, L), tried)
    return WitnessSearch("none" if mode == "exhaustive" else "budget-exhausted", None, tried)


# --- pipeline ----------------------------------------------------------------------------------


class HypothesisError(ValueError):
    """A strict run was asked for on a graph violating the stated hypotheses."""


def pipeline_run(G: Graph, r: int, relaxed: bool = True, seed: int = 0, budget: int = 256) -> ExperimentReport:
    """Max cut, extraction, two-stage random lists and an orientation witness.

    Every stage records whether its hypotheses held and whether its output was
    audited.  The pipeline's conclusion is only reported as established when all
    hypotheses held; otherwise certificates speak only for the subgraph found.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if G.n == 0:
        raise ValueError("empty graph")
    hypotheses: dict[str, bool] = {}
    notes: list[str] = []
    ad = average_degree(G)
    need = pipeline_degree_threshold(r)
    hypotheses["average_degree_at_least_r^7 2^(3r+17)"] = ad >= need
    if not relaxed and ad < need:
        raise HypothesisError(f"Ad(G) = {ad} < r^7 2^(3r+17) = {need}")

    cut = max_cut_bipartite(G)
    H = cut.subgraph()
    stats: dict = {"average_degree": ad, "cut_edges": len(cut.cross_edges)}
    stats["cut_average_degree"] = average_degree(H)
    stats["cut_keeps_half_the_degree"] = average_degree(H) >= ad / 2

    d = r**6 * 2 ** (2 * r + 6)
    a_pos = list(range(len(cut.side_a)))
    b_pos = list(range(len(cut.side_a), H.n))
    try:
        ko, audit = kuhn_osthus_extract(H, a_pos, b_pos, d)
        hypotheses["extraction_precondition"] = True
        stats["extraction_audit_passed"] = audit.passed
        keep = list(ko.side_a) + list(ko.side_b)
        sub = induced_subgraph(H, keep)
        side_a = list(range(len(ko.side_a)))
        side_b = list(range(len(ko.side_a), sub.n))
    except ValueError as exc:
        hypotheses["extraction_precondition"] = False
        notes.append(f"extraction skipped: {exc}")
        if not relaxed:
            raise HypothesisError(str(exc)) from exc
        sub = H
        if len(b_pos) > len(a_pos):
            a_pos, b_pos = b_pos, a_pos
        side_a, side_b = a_pos, b_pos
    except ExtractionFailed as exc:
        hypotheses["extraction_precondition"] = True
        stats["extraction_audit_passed"] = False
        notes.append(f"extraction failed: {exc}")
        sub = H
        side_a, side_b = a_pos, b_pos

    hypotheses["A_degrees_at_least_r^6 2^(2r+8)"] = all(sub.degree(a) >= r**6 * 2 ** (2 * r + 8) for a in side_a)
    hypotheses["A_at_least_r2^(r+3)_B"] = len(side_a) >= r * 2 ** (r + 3) * len(side_b)

    params = SaturationParams(r, r * 2 ** (r + 6))
    lists = {}
    lists.update(sample_lists(side_b, params, make_rng(seed, 0)))
    lists.update(sample_lists(side_a, params, make_rng(seed, 1)))
    L = ListAssignment(tuple(lists[v] for v in range(sub.n)))

    mode = "exhaustive" if sub.m <= get_caps().max_orientation_edges else "sampled"
    try:
        search = witness_orientation_search(sub, L, mode=mode, budget=budget, seed=seed)
    except CapExceeded as exc:
        notes.append(f"witness search skipped: {exc}")
        search = WitnessSearch("skipped", None, 0)
    stats["witness_status"] = search.status
    stats["orientations_tried"] = search.orientations_tried
    certificates = []
    if search.certificate is not None:
        certificates.append(search.certificate)
        stats["certified_lower_bound"] = search.certificate.claimed_bound
        notes.append(
            f"certificate holds for the extracted subgraph on {sub.n} vertices "
            "(and hence for G, since dichoosability is monotone under subgraphs)"
        )
    stats["conclusion_claimed"] = all(hypotheses.values()) and search.certificate is not None
    return ExperimentReport(
        "pipeline",
        {"r": r, "relaxed": relaxed, "n": G.n, "m": G.m, "budget": budget},
        seed,
        1,
        [search.status],
        {**stats, **{f"hypothesis {k}": v for k, v in hypotheses.items()}},
        {"pipeline_degree_threshold": need, "extraction_d": d},
        notes,
        certificates,
    )
