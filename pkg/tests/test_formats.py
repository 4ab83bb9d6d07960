import pytest
from hypothesis import given, strategies as st

from strategies import digraphs, graphs
from dichoose.constructions import complete_graph, cycle_graph, directed_cycle
from dichoose.formats import (
    FormatError,
    format_certificate,
    format_colouring,
    format_graph,
    format_lists,
    parse_certificate,
    parse_colouring,
    parse_graph,
    parse_lists,
)
from dichoose.graphs import Digraph
from dichoose.listcolour import CertificateError, ListAssignment, make_certificate, verify_certificate
from dichoose.reports import ExperimentReport, RunManifest


def test_parse_examples():
    assert parse_graph("digraph 2\n0 1\n") == Digraph(2, frozenset({(0, 1)}))
    assert parse_graph("graph 3\n0 1\n1 2\n0 2\n") == complete_graph(3)
    assert parse_graph("# comment\n\ngraph 2\n\n# another\n0 1\n").m == 1
    with pytest.raises(FormatError, match="line 2: vertex 2 out of range"):
        parse_graph("graph 2\n0 2\n")


@pytest.mark.parametrize("text,line", [
    ("", None),
    ("graf 3\n", 1),
    ("graph x\n", 1),
    ("graph 3\n0 1\n1 0\n", 3),
    ("digraph 3\n0 1\n0 1\n", 3),
    ("graph 3\n1 1\n", 2),
    ("graph 3\n0 1 2\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as err:
        parse_graph(text)
    assert err.value.line == line


def test_digon_lines_are_distinct_arcs():
    assert parse_graph("digraph 2\n0 1\n1 0\n").has_digon()


@given(graphs(max_n=8))
def test_graph_round_trip(G):
    assert parse_graph(format_graph(G)) == G


@given(digraphs(max_n=7))
def test_digraph_round_trip(D):
    assert parse_graph(format_graph(D)) == D


@given(st.lists(st.integers(1, 9), max_size=8))
def test_colouring_round_trip(colours):
    assert parse_colouring(format_colouring(colours), len(colours)) == colours


@given(st.lists(st.frozensets(st.integers(1, 9), min_size=1, max_size=4), max_size=7))
def test_lists_round_trip(sets):
    L = ListAssignment(tuple(sets))
    assert parse_lists(format_lists(L), L.n) == L


def test_colouring_and_list_errors():
    with pytest.raises(FormatError):
        parse_colouring("0: 1\n", 2)
    with pytest.raises(FormatError):
        parse_colouring("0: 1 2\n", 1)
    with pytest.raises(FormatError):
        parse_lists("0: 1 1\n", 1)
    with pytest.raises(FormatError):
        parse_lists("0: 0\n", 1)
    with pytest.raises(FormatError):
        parse_lists("0 1\n", 1)


def test_certificate_round_trip():
    cert = make_certificate(cycle_graph(4), directed_cycle(4), ListAssignment.uniform(4, {1}))
    text = format_certificate(cert)
    for section in ("GRAPH", "ORIENTATION", "LISTS", "CLAIM", "TRANSCRIPT"):
        assert section in text.splitlines()
    again = parse_certificate(text)
    assert again == cert and verify_certificate(again)
    assert parse_certificate("dic_l = 2\n# manifest.seed 3\n" + text) == cert


@pytest.mark.parametrize("mutate,check", [
    (lambda t: t.replace("CLAIM\n", ""), "format"),
    (lambda t: t.replace("dichoosability >= 2", "dichoosability >= two"), "claim"),
    (lambda t: t.replace("none is a dicolouring", "trust me"), "transcript"),
    (lambda t: t.replace("LISTS\n0: 1", "LISTS\n0: x"), "format"),
])
def test_malformed_certificates_name_the_check(mutate, check):
    cert = make_certificate(cycle_graph(4), directed_cycle(4), ListAssignment.uniform(4, {1}))
    with pytest.raises(CertificateError) as err:
        parse_certificate(mutate(format_certificate(cert)))
    assert err.value.check == check


def test_manifest_round_trip():
    m = RunManifest(argv=["experiment", "acyclic", "--seed", "3", "g.txt"], seed=3, inputs={"g.txt": "ab" * 32})
    parsed = RunManifest.parse("\n".join(m.lines()) + "\nbody\n")
    assert parsed.argv == m.argv and parsed.seed == 3 and parsed.inputs == m.inputs
    assert RunManifest.parse("no manifest here") is None


def test_report_text_and_json_are_stable():
    r = ExperimentReport("demo", {"n": 3}, 1, 2, [True, False], {"f": 0.5}, {"b": 1.5})
    assert r.to_text() == r.to_text()
    assert '"outcomes_sha256"' in r.to_json()
    assert "outcomes [true,false]" in r.to_text()
