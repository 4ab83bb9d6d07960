import itertools

from hypothesis import settings

from dichoose.graphs import Digraph, Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if bits >> i & 1))


def all_digraphs(n: int, digons: bool = True):
    """Every digraph on n labelled vertices (optionally without digons)."""
    pairs = list(itertools.combinations(range(n), 2))
    states = 4 if digons else 3
    for combo in itertools.product(range(states), repeat=len(pairs)):
        arcs = set()
        for (u, v), s in zip(pairs, combo):
            if s in (1, 3):
                arcs.add((u, v))
            if s in (2, 3):
                arcs.add((v, u))
        yield Digraph(n, frozenset(arcs))

