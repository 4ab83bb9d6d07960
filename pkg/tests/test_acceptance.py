"""Acceptance criteria 1-9, each at its stated tolerance and time budget."""

import io
import itertools
import math
import time
from fractions import Fraction

import pytest

from conftest import all_digraphs, all_graphs, record_criterion
from dichoose.bounds import (
    acyclic_bound_holds,
    acyclic_orientation_bound,
    check_binomial_inequalities,
    check_parameter_chain,
    exact_acyclic_probability,
)
from dichoose.cli import run
from dichoose.config import CapExceeded, set_caps
from dichoose.constructions import bidirected, complete_bipartite, complete_graph, cycle_graph, semidegree_tournament
from dichoose.dicolour import chromatic_number, dichromatic_number, dichromatic_number_bruteforce, dicolour_via_backedge, is_dicolouring
from dichoose.experiments import mc_acyclic_probability, saturation_experiment, SaturationParams
from dichoose.extraction import ko_audit, kuhn_osthus_extract, min_degree_core
from dichoose.graphs import (
    Digraph,
    backedge_graph,
    connected_components,
    enumerate_orientations,
    induced_subgraph,
    is_star_forest,
    min_in_degree,
    min_out_degree,
)
from dichoose.listcolour import (
    ListAssignment,
    canonical_list_assignments,
    choosability,
    exists_L_dicolouring,
    exists_L_proper_colouring,
    find_uncolourable_assignment,
    make_certificate,
    verify_certificate,
)
from dichoose.rng import make_rng, random_subset


def test_criterion_1_tournament():
    start = time.perf_counter()
    for d in range(1, 6):
        T = semidegree_tournament(d)
        assert T.n == 2 * d * (d + 1)
        assert all(T.has_arc(u, v) != T.has_arc(v, u) for u, v in itertools.combinations(range(T.n), 2))
        assert min(min_in_degree(T), min_out_degree(T)) >= d
    structure_time = time.perf_counter() - start
    assert structure_time < 1.0

    # d = 1: full exhaustive sweep of canonical 2-list assignments
    T1 = semidegree_tournament(1)
    assert is_star_forest(backedge_graph(T1, range(4)))
    count = sum(1 for _ in canonical_list_assignments(4, 2))
    assert find_uncolourable_assignment(T1, 2) is None
    assert find_uncolourable_assignment(T1, 1) is not None

    # d = 2: the full sweep exceeds the canonical cap, so the backedge certificate is used
    T2 = semidegree_tournament(2)
    with pytest.raises(CapExceeded):
        next(canonical_list_assignments(T2.n, 2))
    B = backedge_graph(T2, range(T2.n))
    assert is_star_forest(B)
    colours = dicolour_via_backedge(T2, range(T2.n))
    assert is_dicolouring(T2, colours) and len(set(colours)) <= 2
    for comp in connected_components(B):
        star = induced_subgraph(B, comp)
        assert all(exists_L_proper_colouring(star, L) is not None for L in canonical_list_assignments(star.n, 2))
    # any proper L-colouring of the backedge graph is an L-dicolouring of T2
    rng = make_rng(7)
    for _ in range(200):
        L = ListAssignment(tuple(random_subset(rng, 6, 2) for _ in range(T2.n)))
        proper = exists_L_proper_colouring(B, L)
        assert proper is not None and is_dicolouring(T2, proper)
        assert exists_L_dicolouring(T2, L) is not None
    record_criterion(1, True, f"T_1..T_5 audited in {structure_time:.3f}s; dic_l(T_1) <= 2 over {count} "
                              f"canonical assignments; dic_l(T_2) <= 2 via star-forest backedge certificate")


def test_criterion_2_acyclicity_bound():
    start = time.perf_counter()
    p = exact_acyclic_probability(complete_graph(9))
    assert p == Fraction(math.factorial(9), 2**36)
    assert abs(float(p) - 5.281e-6) < 5e-10
    assert acyclic_bound_holds(p, 8, 9)
    assert abs(acyclic_orientation_bound(8, 9) - 5.64e-3) < 5e-6
    report = mc_acyclic_probability(cycle_graph(4), 100_000, seed=0)
    estimate = report.stats["frequency"]
    assert abs(estimate - 7 / 8) <= 0.01
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    record_criterion(2, True, f"P(K_9 acyclic) = {p} <= (9/16)^9 exactly; MC C_4 = {estimate:.5f}; {elapsed:.1f}s")


def test_criterion_3_binomial_inequalities():
    start = time.perf_counter()
    assert all(check_binomial_inequalities(r).as_pair() == (True, True) for r in range(2, 201))
    r1 = check_binomial_inequalities(1)
    assert r1.ratio == 0 and not r1.ratio_ok
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    record_criterion(3, True, f"both inequalities hold for 2 <= r <= 200; r=1 second inequality fails "
                              f"(ratio {r1.ratio} < {r1.threshold}); {elapsed:.2f}s")


def test_criterion_4_k22():
    start = time.perf_counter()
    K = complete_bipartite(2, 2)
    four_cycle = Digraph(4, frozenset({(0, 2), (2, 1), (1, 3), (3, 0)}))
    cert = make_certificate(K, four_cycle, ListAssignment.uniform(4, {1}))
    assert cert.claimed_bound == 2 and verify_certificate(cert)
    orientations = list(enumerate_orientations(K))
    assert len(orientations) == 16
    canon = list(canonical_list_assignments(4, 2))
    for D in orientations:
        for L in canon:
            assert exists_L_dicolouring(D, L) is not None
    assert 2 <= math.log2(2) + 2
    elapsed = time.perf_counter() - start
    assert elapsed < 60
    record_criterion(4, True, f"dic_l(K_2,2) = 2: certificate verified, 16 orientations x {len(canon)} "
                              f"canonical 2-list assignments all dicolourable; {elapsed:.2f}s")


def test_criterion_5_oracle_equivalence():
    start = time.perf_counter()
    digraphs_checked = 0
    for n in range(6):
        for D in all_digraphs(n, digons=False):
            assert dichromatic_number(D)[0] == dichromatic_number_bruteforce(D)
            digraphs_checked += 1
    graphs_checked = 0
    for n in range(6):
        for G in all_graphs(n):
            assert dichromatic_number(bidirected(G))[0] == chromatic_number(G)[0]
            graphs_checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 600
    record_criterion(5, True, f"{digraphs_checked} digon-free digraphs and {graphs_checked} graphs "
                              f"on <= 5 vertices; {elapsed:.1f}s")


def test_criterion_6_corollary_linkage():
    start = time.perf_counter()
    previous = set_caps(max_list_universe=15)
    try:
        checked = 0
        for n in range(1, 6):
            for G in all_graphs(n):
                k, _ = choosability(G)
                assert min_degree_core(G, k - 1).n > 0
                checked += 1
    finally:
        set_caps(max_list_universe=previous.max_list_universe)
    elapsed = time.perf_counter() - start
    assert elapsed < 600
    record_criterion(6, True, f"non-empty (chi_l - 1)-core on all {checked} graphs with 1..5 vertices; {elapsed:.1f}s")


def test_criterion_7_kuhn_osthus():
    start = time.perf_counter()
    K = complete_bipartite(40, 40)
    witness, audit = kuhn_osthus_extract(K, range(40), range(40, 80), 2)
    independent = ko_audit(K, witness.side_a, witness.side_b, 2)
    assert audit.passed and independent.passed
    assert len(witness.side_a) >= Fraction(40, 256) * len(witness.side_b)
    assert all(8 <= witness.degree_in(a) <= 128 for a in witness.side_a)
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    record_criterion(7, True, f"|A*| = {audit.size_a}, |B*| = {audit.size_b}, degrees "
                              f"[{audit.min_degree}, {audit.max_degree}] within [8, 128]; {elapsed:.2f}s")


def test_criterion_8_parameter_chain():
    start = time.perf_counter()
    ratio_ok = all(check_parameter_chain(r).ratio_exact for r in range(1, 1001))
    chain = check_parameter_chain(20)
    elapsed = time.perf_counter() - start
    passed = ratio_ok and chain.all_ok and elapsed < 5
    lo, hi = chain.saturation_needed
    record_criterion(8, passed, f"ratio exact for 1..1000: {ratio_ok}; r=20 checks {chain.checks()} "
                                f"(4d = {chain.four_d:.4e} vs needed in [{float(lo):.4e}, {float(hi):.4e}]); "
                                f"{elapsed:.2f}s")
    assert ratio_ok
    assert elapsed < 5
    assert chain.all_ok, f"r=20 parameter chain check failed: {chain.checks()}"


def _cli(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=io.StringIO())
    return code, out.getvalue()


def test_criterion_9_reproducibility(tmp_path):
    graph = tmp_path / "k33.txt"
    graph.write_text("graph 6\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n")
    lists = tmp_path / "lists.txt"
    lists.write_text("".join(f"{v}: 1 2\n" for v in range(6)))
    commands = [
        ["gen", "random", "--n", "12", "--p", "1/3", "--seed", "5"],
        ["experiment", "acyclic", "--trials", "3000", "--seed", "11", graph],
        ["experiment", "saturation", "--r", "2", "--k", "1", "--trials", "5", "--seed", "4", graph],
        ["experiment", "truly-saturated", "--r", "2", "--k", "1", "--lists", lists, "--trials", "4", "--seed", "8", graph],
        ["experiment", "witness", "--lists", lists, "--mode", "sampled", "--budget", "20", "--seed", "3", graph],
        ["experiment", "pipeline", "--r", "1", "--seed", "6", graph],
        ["experiment", "acyclic", "--trials", "200", "--seed", "11", "--format", "json", graph],
    ]
    for i, argv in enumerate(commands):
        target = tmp_path / f"run{i}.out"
        code, _ = _cli(*argv, "-o", target)
        assert code in (0, 1)
        assert "manifest" in target.read_text()
        code, out = _cli("replay", target)
        assert (code, out) == (0, "replay identical\n"), argv

    G = complete_bipartite(3, 3)
    serial = mc_acyclic_probability(G, 4000, seed=21, workers=1)
    parallel = mc_acyclic_probability(G, 4000, seed=21, workers=4)
    assert serial.to_json() == parallel.to_json()
    params = SaturationParams(2, 1)
    s1 = saturation_experiment(complete_bipartite(3, 12), range(3), range(3, 15), params, 6, 2, workers=1)
    s3 = saturation_experiment(complete_bipartite(3, 12), range(3), range(3, 15), params, 6, 2, workers=3)
    assert s1.to_json() == s3.to_json()
    record_criterion(9, True, f"{len(commands)} seeded commands replayed byte-identically; "
                              "Monte Carlo reports identical for 1 vs 4 and 1 vs 3 workers")
