import warnings

import pytest
from hypothesis import given

from rainbow_nbhd.families import complete, cycle, petersen
from rainbow_nbhd.graph import Graph
from rainbow_nbhd.io import (
    GraphFormatError,
    detect_format,
    emit_dimacs,
    emit_edge_list,
    emit_graph6,
    parse_dimacs,
    parse_edge_list,
    parse_graph6,
    read_graphs,
)

from conftest import graphs


def test_graph6_examples():
    g = parse_graph6("D?{")
    assert g.n == 5
    # bits 000000 1111 over pairs (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),(0,4),(1,4),(2,4),(3,4)
    assert g.edges() == [(0, 4), (1, 4), (2, 4), (3, 4)]
    assert parse_graph6("Bw") == complete(3)
    assert parse_graph6(">>graph6<<Bw\n") == complete(3)


def test_graph6_hand_encoding_of_triangle():
    # n=3 -> chr(66)='B'; bits (0,1),(0,2),(1,2) = 111 padded to 111000 = 56 -> chr(119)='w'
    assert emit_graph6(complete(3)) == "Bw"


def test_graph6_errors():
    with pytest.raises(GraphFormatError, match="empty input"):
        parse_graph6("")
    with pytest.raises(GraphFormatError, match="truncated") as exc:
        parse_graph6("D?")
    assert exc.value.offset == 2
    with pytest.raises(GraphFormatError, match="outside graph6 range") as exc:
        parse_graph6("D {")
    assert exc.value.offset == 1
    with pytest.raises(GraphFormatError, match="outside graph6 range") as exc:
        parse_graph6("D?\x7f")
    assert exc.value.offset == 2
    with pytest.raises(GraphFormatError, match="trailing"):
        parse_graph6("Bww")
    with pytest.raises(GraphFormatError):
        parse_graph6("~?")


def test_graph6_extended_size():
    g = Graph.from_edges(70, [(i, i + 1) for i in range(69)])
    s = emit_graph6(g)
    assert s[0] == "~" and parse_graph6(s) == g


@given(graphs(max_n=20))
def test_graph6_round_trip(g):
    s = emit_graph6(g)
    assert parse_graph6(s) == g
    assert emit_graph6(parse_graph6(s)) == s


@given(graphs(max_n=12))
def test_graph6_matches_networkx(g):
    nx = pytest.importorskip("networkx")
    h = nx.from_graph6_bytes(emit_graph6(g).encode())
    assert sorted(tuple(sorted(e)) for e in h.edges()) == g.edges()
    assert h.number_of_nodes() == g.n


def test_petersen_graph6():
    nx = pytest.importorskip("networkx")
    ref = nx.to_graph6_bytes(nx.petersen_graph(), header=False).strip().decode()
    assert sorted(parse_graph6(ref).degrees()) == [3] * 10
    assert parse_graph6(ref).m == petersen().m


def test_dimacs_examples():
    assert parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n") == complete(3)
    assert parse_dimacs("c comment\np edge 2 1\ne 1 2\n").edges() == [(0, 1)]
    with pytest.raises(GraphFormatError, match="before problem line"):
        parse_dimacs("e 1 2\n")
    with pytest.raises(GraphFormatError, match="missing problem line"):
        parse_dimacs("c nothing\n")
    with pytest.raises(GraphFormatError, match="out of range") as exc:
        parse_dimacs("p edge 2 1\ne 1 3\n")
    assert exc.value.offset == 2


def test_dimacs_duplicates_and_count_mismatch():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert parse_dimacs("p edge 2 1\ne 1 2\n").m == 1
    with pytest.warns(UserWarning, match="declares 2 edges, found 1"):
        g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 1\n")
    assert g.m == 1


def test_edge_list_examples():
    assert parse_edge_list("3\n0 1\n1 2\n").edges() == [(0, 1), (1, 2)]
    k1 = parse_edge_list("1")
    assert (k1.n, k1.m) == (1, 0)
    with pytest.raises(GraphFormatError, match="index out of range"):
        parse_edge_list("2\n0 2\n")
    with pytest.raises(GraphFormatError, match="non-integer"):
        parse_edge_list("2\n0 x\n")
    with pytest.raises(GraphFormatError, match="empty"):
        parse_edge_list("  ")


@given(graphs(max_n=10))
def test_text_formats_round_trip(g):
    assert parse_edge_list(emit_edge_list(g)) == g
    assert parse_dimacs(emit_dimacs(g)) == g


def test_detect_and_read():
    assert detect_format("c x\np edge 1 0\n") == "dimacs"
    assert detect_format("3\n0 1\n") == "edges"
    assert detect_format("Bw\n") == "graph6"
    assert read_graphs("Bw\nD?{\n") == [complete(3), parse_graph6("D?{")]
    assert read_graphs(emit_dimacs(cycle(5))) == [cycle(5)]
    assert parse_graph6("?") == Graph(0, ())
