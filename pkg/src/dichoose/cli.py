"""Command-line front end.

Exit status: 0 on success, 1 when a decision command answers negatively
(e.g. a certificate fails to verify), 2 on usage, parse or cap errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    acyclic_orientation_bound,
    check_binomial_inequalities,
    check_parameter_chain,
    chernoff_bound,
)
from .config import CapExceeded
from .constructions import bidirected, complete_bipartite, vertex_label, semidegree_tournament, random_bipartite, random_graph
from .dicolour import dichromatic_number, max_dichromatic_over_orientations
from .experiments import (
    HypothesisError,
    SaturationParams,
    mc_acyclic_probability,
    pipeline_run,
    saturation_experiment,
    truly_saturated_experiment,
    witness_orientation_search,
)
from .extraction import ExtractionFailed, kuhn_osthus_extract, max_cut_bipartite, min_degree_core, monochromatic_subgraph
from .formats import (
    FormatError,
    certificate_to_dict,
    format_certificate,
    format_colouring,
    format_graph,
    format_lists,
    graph_to_dict,
    parse_certificate,
    parse_colouring,
    parse_graph,
    parse_lists,
)
from .graphs import Digraph, Graph, average_degree, bipartition
from .listcolour import (
    CertificateError,
    certificate_failures,
    choosability,
    dichoosability,
    dichoosability_of_graph,
    exists_L_dicolouring,
    exists_L_proper_colouring,
)
from .reports import RunManifest, to_plain


class UsageError(Exception):
    pass


class Context:
    def __init__(self, args, argv):
        self.args = args
        self.out = io.StringIO()
        self.manifest = RunManifest(argv=_strip_output(argv), seed=getattr(args, "seed", None))
        self.json = getattr(args, "format", "text") == "json"

    def read_input(self, path):
        data = Path(path).read_bytes()
        self.manifest.inputs[str(path)] = hashlib.sha256(data).hexdigest()
        return data.decode()

    def graph(self, path, kind=None):
        G = parse_graph(self.read_input(path))
        if kind is Graph and not isinstance(G, Graph):
            raise UsageError(f"{path}: expected an undirected graph")
        if kind is Digraph and not isinstance(G, Digraph):
            raise UsageError(f"{path}: expected a digraph")
        return G

    def write(self, text: str):
        self.out.write(text)

    def emit(self, data: dict, text: str, manifest: bool = False):
        if self.json:
            if manifest:
                data = {**data, "manifest": {"version": self.manifest.version, "argv": self.manifest.argv,
                                             "seed": self.manifest.seed, "inputs": self.manifest.inputs}}
            self.write(json.dumps(to_plain(data), indent=2, sort_keys=True) + "\n")
        else:
            if manifest:
                self.write("\n".join(self.manifest.lines()) + "\n")
            self.write(text)


def _sides(G: Graph, swap: bool):
    sides = bipartition(G)
    if sides is None:
        raise UsageError("graph is not bipartite")
    return (sides[1], sides[0]) if swap else sides


# --- gen ------------------------------------------------------------------------------


def cmd_gen_tournament(ctx):
    T = semidegree_tournament(ctx.args.d)
    labels = " ".join(f"{v}={vertex_label(v)}" for v in range(T.n))
    ctx.emit(graph_to_dict(T), f"# labels {labels}\n" + format_graph(T))
    return 0


def cmd_gen_knn(ctx):
    G = complete_bipartite(ctx.args.a, ctx.args.b)
    ctx.emit(graph_to_dict(G), format_graph(G))
    return 0


def cmd_gen_bidirected(ctx):
    G = ctx.graph(ctx.args.file, Graph)
    D = bidirected(G)
    ctx.emit(graph_to_dict(D), format_graph(D))
    return 0


def cmd_gen_random(ctx):
    a = ctx.args
    p = Fraction(a.p)
    if a.bipartite:
        G = random_bipartite(a.n, a.bipartite, p, a.seed)
    else:
        G = random_graph(a.n, p, a.seed)
    ctx.emit(graph_to_dict(G), format_graph(G), manifest=True)
    return 0


# --- solve ------------------------------------------------------------------------------


def cmd_solve_dichromatic(ctx):
    D = ctx.graph(ctx.args.file)
    if isinstance(D, Graph):
        D = bidirected(D)
    k, witness = dichromatic_number(D)
    ctx.emit({"chi_vec": k, "witness": witness}, f"chi_vec = {k}\n" + format_colouring(witness))
    return 0


def cmd_solve_max_dichromatic(ctx):
    G = ctx.graph(ctx.args.file, Graph)
    k, D = max_dichromatic_over_orientations(G)
    ctx.emit({"chi_vec_max": k, "orientation": graph_to_dict(D)}, f"chi_vec_max = {k}\n" + format_graph(D))
    return 0


def cmd_solve_choosability(ctx):
    G = ctx.graph(ctx.args.file, Graph)
    k, bad = choosability(G)
    text = f"chi_l = {k}\n"
    if bad is not None:
        text += f"# {k - 1}-list assignment with no proper L-colouring\n" + format_lists(bad)
    ctx.emit({"chi_l": k, "witness": None if bad is None else [sorted(x) for x in bad.lists]}, text)
    return 0


def cmd_solve_dichoosability(ctx):
    G = ctx.graph(ctx.args.file)
    if isinstance(G, Digraph):
        k, bad = dichoosability(G)
        text = f"dic_l = {k}\n"
        if bad is not None:
            text += f"# {k - 1}-list assignment with no L-dicolouring\n" + format_lists(bad)
        ctx.emit({"dic_l": k, "witness": None if bad is None else [sorted(x) for x in bad.lists]}, text)
        return 0
    k, cert = dichoosability_of_graph(G)
    text = f"dic_l = {k}\n"
    if cert is not None:
        text += format_certificate(cert)
    ctx.emit({"dic_l": k, "certificate": None if cert is None else certificate_to_dict(cert)}, text,
             manifest=cert is not None)
    return 0


def cmd_solve_lists(ctx):
    G = ctx.graph(ctx.args.file)
    L = parse_lists(ctx.read_input(ctx.args.lists), G.n)
    if isinstance(G, Digraph):
        found = exists_L_dicolouring(G, L)
        what = "L-dicolouring"
    else:
        found = exists_L_proper_colouring(G, L)
        what = "proper L-colouring"
    if found is None:
        ctx.emit({"exists": False}, f"no {what} exists\n")
        return 1
    ctx.emit({"exists": True, "colouring": found}, f"{what} found\n" + format_colouring(found))
    return 0


# --- extract --------------------------------------------------------------------------------


def cmd_extract_maxcut(ctx):
    G = ctx.graph(ctx.args.file, Graph)
    w = max_cut_bipartite(G)
    H = w.subgraph()
    ad = average_degree(H) if H.n else None
    data = {"side_a": w.side_a, "side_b": w.side_b, "cut_edges": len(w.cross_edges), "average_degree": ad}
    text = (
        f"side_a {' '.join(map(str, w.side_a))}\nside_b {' '.join(map(str, w.side_b))}\n"
        f"cut_edges {len(w.cross_edges)} of {G.m}\naverage_degree {ad}\n"
    )
    ctx.emit(data, text)
    return 0


def cmd_extract_core(ctx):
    G = ctx.graph(ctx.args.file, Graph)
    H = min_degree_core(G, ctx.args.t)
    origin = " ".join(map(str, H.origin or ()))
    ctx.emit({"vertices": list(H.origin or ()), "core": graph_to_dict(H)}, f"# origin {origin}\n" + format_graph(H))
    return 0


def cmd_extract_ko(ctx):
    G = ctx.graph(ctx.args.file, Graph)
    a, b = _sides(G, ctx.args.swap_sides)
    d = Fraction(ctx.args.d)
    try:
        w, audit = kuhn_osthus_extract(G, a, b, d)
    except ExtractionFailed as exc:
        ctx.emit({"found": False, "reason": str(exc), "attempts": exc.attempts}, f"no witness: {exc}\n")
        return 1
    data = {"found": True, "side_a": w.side_a, "side_b": w.side_b,
            "audit": {**dataclasses.asdict(audit), "passed": audit.passed}}
    text = (
        f"side_a {' '.join(map(str, w.side_a))}\nside_b {' '.join(map(str, w.side_b))}\n"
        f"audit |A*| = {audit.size_a} >= {audit.required_ratio} * |B*| = {audit.required_ratio * audit.size_b}: {audit.ratio_ok}\n"
        f"audit degrees in [{audit.min_degree}, {audit.max_degree}] within [{4 * d}, {64 * d}]: {audit.degrees_ok}\n"
    )
    ctx.emit(data, text)
    return 0


def cmd_extract_mono(ctx):
    G = ctx.graph(ctx.args.file, Graph)
    a, b = _sides(G, ctx.args.swap_sides)
    colours = parse_colouring(ctx.read_input(ctx.args.colouring), G.n)
    H, a_prime = monochromatic_subgraph(G, a, b, colours, ctx.args.k)
    text = f"# A' {' '.join(map(str, a_prime))}\n# origin {' '.join(map(str, H.origin))}\n" + format_graph(H)
    ctx.emit({"a_prime": a_prime, "origin": list(H.origin), "graph": graph_to_dict(H)}, text)
    return 0


# --- experiments --------------------------------------------------------------------------------


def _report(ctx, report):
    data = report.to_dict()
    data["certificates"] = [certificate_to_dict(c) for c in report.certificates]
    ctx.emit(data, report.to_text() + "".join(format_certificate(c) for c in report.certificates), manifest=True)
    return 0


def cmd_experiment_acyclic(ctx):
    a = ctx.args
    G = ctx.graph(a.file, Graph)
    return _report(ctx, mc_acyclic_probability(G, a.trials, a.seed, workers=a.workers))


def cmd_experiment_saturation(ctx):
    a = ctx.args
    G = ctx.graph(a.file, Graph)
    side_a, side_b = _sides(G, a.swap_sides)
    params = SaturationParams(a.r, a.k)
    return _report(ctx, saturation_experiment(G, side_a, side_b, params, a.trials, a.seed, workers=a.workers))


def cmd_experiment_truly(ctx):
    a = ctx.args
    G = ctx.graph(a.file, Graph)
    side_a, side_b = _sides(G, a.swap_sides)
    L = parse_lists(ctx.read_input(a.lists), G.n)
    params = SaturationParams(a.r, a.k)
    lists_b = {b: L[b] for b in side_b}
    report = truly_saturated_experiment(G, side_a, side_b, params, lists_b, a.trials, a.seed,
                                        mode=a.mode, samples=a.samples, workers=a.workers)
    return _report(ctx, report)


def cmd_experiment_witness(ctx):
    a = ctx.args
    G = ctx.graph(a.file, Graph)
    L = parse_lists(ctx.read_input(a.lists), G.n)
    result = witness_orientation_search(G, L, mode=a.mode, budget=a.budget, seed=a.seed)
    data = {"status": result.status, "orientations_tried": result.orientations_tried,
            "certificate": None if result.certificate is None else certificate_to_dict(result.certificate)}
    text = f"status {result.status}\norientations_tried {result.orientations_tried}\n"
    if result.certificate is not None:
        text += format_certificate(result.certificate)
    ctx.emit(data, text, manifest=True)
    return 0 if result.status == "found" else 1


def cmd_experiment_pipeline(ctx):
    a = ctx.args
    G = ctx.graph(a.file, Graph)
    return _report(ctx, pipeline_run(G, a.r, relaxed=not a.strict, seed=a.seed, budget=a.budget))


# --- bounds ----------------------------------------------------------------------------------------


def cmd_bounds_chernoff(ctx):
    a = ctx.args
    value = chernoff_bound(a.n, float(Fraction(a.p)), float(Fraction(a.eps)))
    ctx.emit({"bound": value}, f"bound = {value!r}\n")
    return 0


def cmd_bounds_acyclic(ctx):
    a = ctx.args
    value = acyclic_orientation_bound(Fraction(a.gamma), a.n)
    ctx.emit({"bound": value}, f"bound = {value!r}\n")
    return 0


def _r_range(a):
    hi = a.r if a.r_max is None else a.r_max
    return range(a.r, hi + 1)


def cmd_bounds_prop24(ctx):
    rows, lines = [], []
    for r in _r_range(ctx.args):
        c = check_binomial_inequalities(r)
        rows.append({"r": r, "central": c.central, "power": c.power, "ratio": c.ratio,
                     "threshold": c.threshold, "central_ok": c.central_ok, "ratio_ok": c.ratio_ok})
        lines.append(
            f"r={r} C(r,r//2)={c.central} <= 2^r={c.power}: {str(c.central_ok).lower()}; "
            f"ratio={float(c.ratio):.6e} >= 2^-(r+2)={float(c.threshold):.6e}: {str(c.ratio_ok).lower()}"
        )
    ctx.emit({"rows": rows}, "\n".join(lines) + "\n")
    return 0


def cmd_bounds_chain(ctx):
    rows, lines = [], []
    for r in _r_range(ctx.args):
        c = check_parameter_chain(r)
        checks = c.checks()
        rows.append({"r": r, **checks, "gamma": c.gamma, "d": c.d, "ratio": c.ratio,
                     "degree_needed": c.degree_needed,
                     "saturation_needed": [str(c.saturation_needed[0]), str(c.saturation_needed[1])]})
        flags = " ".join(f"{k}={'undecided' if v is None else str(v).lower()}" for k, v in checks.items())
        lines.append(f"r={r} {flags}")
    ctx.emit({"rows": rows}, "\n".join(lines) + "\n")
    return 0


# --- verify / replay -----------------------------------------------------------------------------------


def cmd_verify_certificate(ctx):
    cert = parse_certificate(ctx.read_input(ctx.args.file))
    failures = certificate_failures(cert)
    if failures:
        ctx.emit({"valid": False, "failed": failures}, "certificate INVALID: " + ", ".join(failures) + "\n")
        return 1
    ctx.emit({"valid": True, "claimed_bound": cert.claimed_bound},
             f"certificate valid: dichoosability >= {cert.claimed_bound}\n")
    return 0


def cmd_replay(ctx):
    path = Path(ctx.args.file)
    recorded = path.read_text()
    manifest = RunManifest.parse(recorded)
    if manifest is None:
        try:
            manifest_data = json.loads(recorded).get("manifest")
        except (json.JSONDecodeError, AttributeError):
            manifest_data = None
        if not manifest_data:
            raise UsageError(f"{path}: no run manifest found")
        manifest = RunManifest(argv=manifest_data["argv"], seed=manifest_data.get("seed"),
                               inputs=manifest_data.get("inputs", {}))
    for input_path, sha in manifest.inputs.items():
        current = hashlib.sha256(Path(input_path).read_bytes()).hexdigest()
        if current != sha:
            ctx.write(f"input changed: {input_path}\n")
            return 1
    argv = _strip_output(manifest.argv)
    buffer = io.StringIO()
    run(argv, stdout=buffer, stderr=io.StringIO())
    if buffer.getvalue() == recorded:
        ctx.write("replay identical\n")
        return 0
    ctx.write("replay differs\n")
    return 1


def _strip_output(argv):
    out, skip = [], False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in ("-o", "--output"):
            skip = True
            continue
        if tok.startswith("--output="):
            continue
        out.append(tok)
    return out


# --- parser ------------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format (text is canonical)")
    common.add_argument("-o", "--output", help="write output to this file instead of stdout")
    common.add_argument("--timing", action="store_true", help="report elapsed time on stderr")

    parser = argparse.ArgumentParser(prog="dichoose", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dichoose {__version__}")
    verbs = parser.add_subparsers(dest="verb", required=True)

    def sub(group, name, handler, help_text):
        p = group.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    gen = verbs.add_parser("gen", help="generate graphs").add_subparsers(dest="sub", required=True)
    p = sub(gen, "tournament", cmd_gen_tournament, "tournament with large semi-degrees and dic_l <= 2")
    p.add_argument("--d", type=int, required=True)
    p = sub(gen, "knn", cmd_gen_knn, "complete bipartite graph K_{a,b}")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p = sub(gen, "bidirected", cmd_gen_bidirected, "replace each edge by a digon")
    p.add_argument("file")
    p = sub(gen, "random", cmd_gen_random, "G(n, p); with --bipartite B a random subgraph of K_{n,B}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True, help="edge probability, e.g. 1/2 or 0.3")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bipartite", type=int, metavar="B")

    solve = verbs.add_parser("solve", help="exact parameters").add_subparsers(dest="sub", required=True)
    p = sub(solve, "dichromatic", cmd_solve_dichromatic, "dichromatic number (graphs are bidirected)")
    p.add_argument("file")
    p = sub(solve, "max-dichromatic", cmd_solve_max_dichromatic, "max dichromatic number over orientations")
    p.add_argument("file")
    p = sub(solve, "choosability", cmd_solve_choosability, "choosability of a graph")
    p.add_argument("file")
    p = sub(solve, "dichoosability", cmd_solve_dichoosability, "dichoosability of a digraph, or max over orientations of a graph")
    p.add_argument("file")
    p = sub(solve, "lists", cmd_solve_lists, "decide L-(di)colourability for given lists")
    p.add_argument("--lists", required=True)
    p.add_argument("file")

    extract = verbs.add_parser("extract", help="subgraph extraction").add_subparsers(dest="sub", required=True)
    p = sub(extract, "maxcut", cmd_extract_maxcut, "bipartite subgraph keeping half the edges")
    p.add_argument("file")
    p = sub(extract, "core", cmd_extract_core, "maximal subgraph of minimum degree >= t")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("file")
    p = sub(extract, "ko", cmd_extract_ko, "audited Kuhn-Osthus style extraction from a bipartite graph")
    p.add_argument("--d", required=True)
    p.add_argument("--swap-sides", action="store_true")
    p.add_argument("file")
    p = sub(extract, "mono", cmd_extract_mono, "monochromatic subgraph of a coloured bipartite graph")
    p.add_argument("--colouring", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--swap-sides", action="store_true")
    p.add_argument("file")

    exp = verbs.add_parser("experiment", help="seeded Monte Carlo runs").add_subparsers(dest="sub", required=True)
    p = sub(exp, "acyclic", cmd_experiment_acyclic, "frequency of acyclic random orientations")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("file")
    p = sub(exp, "saturation", cmd_experiment_saturation, "fraction of saturated vertices")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--swap-sides", action="store_true")
    p.add_argument("file")
    p = sub(exp, "truly-saturated", cmd_experiment_truly, "min over B-colourings of truly saturated counts")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lists", required=True, help="list file; the B-side lists are used")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--swap-sides", action="store_true")
    p.add_argument("file")
    p = sub(exp, "witness", cmd_experiment_witness, "orientation with no L-dicolouring")
    p.add_argument("--lists", required=True)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("file")
    p = sub(exp, "pipeline", cmd_experiment_pipeline, "max cut -> extraction -> random lists -> witness")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget", type=int, default=256)
    p.add_argument("--strict", action="store_true", help="refuse graphs violating the degree hypotheses")
    p.add_argument("file")

    bounds = verbs.add_parser("bounds", help="evaluate bounds exactly").add_subparsers(dest="sub", required=True)
    p = sub(bounds, "chernoff", cmd_bounds_chernoff, "exp(-eps^2 n p / 2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--eps", required=True)
    p = sub(bounds, "acyclic", cmd_bounds_acyclic, "((gamma+1)/2^(gamma/2))^n")
    p.add_argument("--gamma", required=True)
    p.add_argument("--n", type=int, required=True)
    for name, handler, text in (("prop24", cmd_bounds_prop24, "binomial inequalities"),
                                ("chain", cmd_bounds_chain, "parameter chain arithmetic")):
        p = sub(bounds, name, handler, text)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--r-max", type=int)

    verify = verbs.add_parser("verify", help="replay certificates").add_subparsers(dest="sub", required=True)
    p = sub(verify, "certificate", cmd_verify_certificate, "exit 0 iff the certificate replays")
    p.add_argument("file")

    p = verbs.add_parser("replay", parents=[common], help="re-run the command recorded in an output's manifest")
    p.set_defaults(handler=cmd_replay)
    p.add_argument("file")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ctx = Context(args, argv)
    start = time.perf_counter()
    try:
        status = args.handler(ctx)
    except (UsageError, FormatError, CapExceeded, HypothesisError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except CertificateError as exc:
        print(f"error: certificate check '{exc.check}' failed: {exc}", file=stderr)
        return 1 if exc.check in ("claim", "replay", "shape") else 2
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    ctx.manifest.elapsed = time.perf_counter() - start
    if args.timing:
        print(f"elapsed {ctx.manifest.elapsed:.3f}s", file=stderr)
    output = ctx.out.getvalue()
    if getattr(args, "output", None):
        Path(args.output).write_text(output)
    else:
        stdout.write(output)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
