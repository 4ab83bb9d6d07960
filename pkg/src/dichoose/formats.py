"""Plain-text formats for graphs, colourings, list assignments and certificates.

Graph files::

    graph <n>        (or: digraph <n>)
    <u> <v>          one edge (arc u->v) per line, 0-indexed

``#`` starts a comment line; blank lines are ignored.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .graphs import Digraph, Graph
from .listcolour import TRANSCRIPT_STATEMENT, CertificateError, ListAssignment, LowerBoundCertificate


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def parse_graph(text: str) -> Graph | Digraph:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("missing header 'graph <n>' or 'digraph <n>'")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] not in ("graph", "digraph") or not parts[1].isdigit():
        raise FormatError(f"malformed header {header!r}", number)
    kind, n = parts[0], int(parts[1])
    seen = set()
    for number, line in lines[1:]:
        fields = line.split()
        if len(fields) != 2 or not all(f.lstrip("-").isdigit() for f in fields):
            raise FormatError(f"expected '<u> <v>', got {line!r}", number)
        u, v = int(fields[0]), int(fields[1])
        for x in (u, v):
            if not 0 <= x < n:
                raise FormatError(f"vertex {x} out of range", number)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", number)
        key = (u, v) if kind == "digraph" else (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate {'arc' if kind == 'digraph' else 'edge'} {u} {v}", number)
        seen.add(key)
    return Graph(n, frozenset(seen)) if kind == "graph" else Digraph(n, frozenset(seen))


def format_graph(G: Graph | Digraph) -> str:
    if isinstance(G, Digraph):
        body = [f"digraph {G.n}"] + [f"{u} {v}" for u, v in G.arc_list]
    else:
        body = [f"graph {G.n}"] + [f"{u} {v}" for u, v in G.edge_list]
    return "\n".join(body) + "\n"


def graph_to_dict(G: Graph | Digraph) -> dict:
    if isinstance(G, Digraph):
        return {"type": "digraph", "n": G.n, "arcs": [list(a) for a in G.arc_list]}
    return {"type": "graph", "n": G.n, "edges": [list(e) for e in G.edge_list]}


def read_graph(path) -> Graph | Digraph:
    return parse_graph(Path(path).read_text())


def _vertex_lines(text: str, n: int | None):
    entries = {}
    for number, line in _content_lines(text):
        head, sep, rest = line.partition(":")
        if not sep or not head.strip().isdigit():
            raise FormatError(f"expected '<v>: ...', got {line!r}", number)
        v = int(head)
        if n is not None and not 0 <= v < n:
            raise FormatError(f"vertex {v} out of range", number)
        if v in entries:
            raise FormatError(f"vertex {v} listed twice", number)
        try:
            values = [int(x) for x in rest.split()]
        except ValueError:
            raise FormatError(f"non-integer colour in {line!r}", number) from None
        if any(c < 1 for c in values):
            raise FormatError("colours must be positive integers", number)
        entries[v] = values
    return entries


def parse_colouring(text: str, n: int | None = None) -> list[int]:
    entries = _vertex_lines(text, n)
    size = n if n is not None else len(entries)
    colours = []
    for v in range(size):
        if v not in entries:
            raise FormatError(f"vertex {v} has no colour")
        if len(entries[v]) != 1:
            raise FormatError(f"vertex {v} needs exactly one colour")
        colours.append(entries[v][0])
    return colours


def format_colouring(colours) -> str:
    return "".join(f"{v}: {c}\n" for v, c in enumerate(colours))


def parse_lists(text: str, n: int | None = None) -> ListAssignment:
    entries = _vertex_lines(text, n)
    size = n if n is not None else len(entries)
    lists = []
    for v in range(size):
        if v not in entries or not entries[v]:
            raise FormatError(f"vertex {v} has no list")
        if len(set(entries[v])) != len(entries[v]):
            raise FormatError(f"vertex {v} repeats a colour")
        lists.append(frozenset(entries[v]))
    return ListAssignment(tuple(lists))


def format_lists(L: ListAssignment) -> str:
    return "".join(f"{v}: {' '.join(map(str, sorted(lst)))}\n" for v, lst in enumerate(L.lists))


# --- certificates ------------------------------------------------------------------

SECTIONS = ("GRAPH", "ORIENTATION", "LISTS", "CLAIM", "TRANSCRIPT")


def format_certificate(cert: LowerBoundCertificate) -> str:
    parts = [
        "GRAPH", format_graph(cert.graph).rstrip("\n"),
        "ORIENTATION", format_graph(cert.orientation).rstrip("\n"),
        "LISTS", format_lists(cert.lists).rstrip("\n"),
        "CLAIM", f"dichoosability >= {cert.claimed_bound}",
        "TRANSCRIPT", f"colourings_checked {cert.colourings_checked}", cert.statement,
    ]
    return "\n".join(p for p in parts if p) + "\n"


def parse_certificate(text: str) -> LowerBoundCertificate:
    """Read a certificate; lines before the GRAPH section are ignored."""
    sections: dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            continue
        if line in SECTIONS:
            if line in sections:
                raise CertificateError("format", f"section {line} appears twice")
            current = line
            sections[current] = []
        elif line and current is not None:
            sections[current].append(line)
    missing = [s for s in SECTIONS if s not in sections]
    if missing:
        raise CertificateError("format", f"missing sections {missing}")
    try:
        graph = parse_graph("\n".join(sections["GRAPH"]))
        orientation = parse_graph("\n".join(sections["ORIENTATION"]))
        lists = parse_lists("\n".join(sections["LISTS"]), graph.n)
    except (FormatError, ValueError) as exc:
        raise CertificateError("format", str(exc)) from exc
    if not isinstance(graph, Graph) or not isinstance(orientation, Digraph):
        raise CertificateError("format", "GRAPH must hold a graph and ORIENTATION a digraph")
    claim = sections["CLAIM"]
    if len(claim) != 1 or not claim[0].startswith("dichoosability >= "):
        raise CertificateError("claim", "expected 'dichoosability >= <k>'")
    try:
        bound = int(claim[0].split(">=")[1])
    except ValueError:
        raise CertificateError("claim", f"bad bound in {claim[0]!r}") from None
    transcript = sections["TRANSCRIPT"]
    count = None
    statement = None
    for line in transcript:
        if line.startswith("colourings_checked "):
            count = int(line.split()[1])
        else:
            statement = line
    if count is None or statement != TRANSCRIPT_STATEMENT:
        raise CertificateError("transcript", "expected a colouring count and the exhaustion statement")
    return LowerBoundCertificate(graph, orientation, lists, bound, count, statement)


def certificate_to_dict(cert: LowerBoundCertificate) -> dict:
    return {
        "graph": graph_to_dict(cert.graph),
        "orientation": graph_to_dict(cert.orientation),
        "lists": [sorted(lst) for lst in cert.lists.lists],
        "claimed_bound": cert.claimed_bound,
        "colourings_checked": cert.colourings_checked,
        "statement": cert.statement,
    }


def certificate_to_json(cert: LowerBoundCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2)
