import itertools
import math

import pytest
from hypothesis import given, settings

from rainbow_nbhd.colouring import (
    BudgetExceeded,
    Colouring,
    SearchBudget,
    canonical_assignment,
    chromatic_number,
    class_size_key,
    clique_number,
    convention_colourings,
    dsatur,
    enumerate_chi_colourings,
    is_colourable,
    is_proper,
    iter_chi_colourings,
    split_prefixes,
)
from rainbow_nbhd.families import (
    complete,
    complete_bipartite,
    cycle,
    empty_sun,
    null,
    petersen,
    random_corpus,
    sunlet,
)
from rainbow_nbhd.graph import Graph
from rainbow_nbhd.oracle import oracle_chromatic_number, oracle_onto

from conftest import graphs


def brute_clique_number(g: Graph) -> int:
    best = 0
    for mask in range(1 << g.n):
        vs = [v for v in range(g.n) if mask >> v & 1]
        if len(vs) > best and all(g.adj[u] >> v & 1 for u, v in itertools.combinations(vs, 2)):
            best = len(vs)
    return best


def test_colouring_type():
    c = Colouring((0, 1, 0, 2))
    assert c.k == 3 and c.class_sizes == (2, 1, 1)
    assert c.classes() == [0b0101, 0b0010, 0b1000]
    with pytest.raises(ValueError, match="unused"):
        Colouring((0, 2))
    assert Colouring.from_dict({"k": 2, "assignment": [0, 1]}).to_dict() == {"k": 2, "assignment": [0, 1]}
    with pytest.raises(ValueError, match="declared k"):
        Colouring.from_dict({"k": 3, "assignment": [0, 1]})


@pytest.mark.parametrize(
    "g, a, expected",
    [(cycle(4), (0, 1, 0, 1), True), (cycle(3), (0, 1, 1), False), (null(3), (0, 0, 0), True)],
)
def test_is_proper(g, a, expected):
    assert is_proper(g, Colouring(a)) is expected


def test_is_proper_length_mismatch():
    with pytest.raises(ValueError):
        is_proper(cycle(4), Colouring((0, 1)))


def test_clique_number_examples():
    assert clique_number(complete(5)) == 5
    assert clique_number(cycle(7)) == 2
    assert clique_number(empty_sun(5)) == brute_clique_number(empty_sun(5)) == 3
    assert clique_number(Graph(0, ())) == 0
    assert clique_number(null(4)) == 1


@settings(max_examples=150)
@given(graphs(max_n=9))
def test_clique_number_matches_brute_force(g):
    assert clique_number(g) == brute_clique_number(g)


def test_chromatic_number_examples():
    assert chromatic_number(cycle(7)) == 3
    assert chromatic_number(complete_bipartite(3, 4)) == 2
    assert chromatic_number(sunlet(7)) == oracle_chromatic_number(sunlet(7)) == 3
    assert chromatic_number(petersen()) == 3
    assert chromatic_number(Graph(0, ())) == 0
    assert chromatic_number(null(5)) == 1
    for n in range(1, 8):
        assert chromatic_number(complete(n)) == n


@settings(max_examples=150)
@given(graphs(max_n=8))
def test_chromatic_number_matches_oracle(g):
    assert chromatic_number(g) == oracle_chromatic_number(g)


@given(graphs(max_n=9))
def test_clique_bounds_chromatic(g):
    assert clique_number(g) <= chromatic_number(g) <= max(dsatur(g), default=-1) + 1


def test_dsatur_is_proper():
    for g in random_corpus(30, seed=1):
        assert is_proper(g, Colouring(canonical_assignment(dsatur(g))))


def test_is_colourable():
    assert is_colourable(cycle(5), 2) is None
    found = is_colourable(cycle(5), 3)
    assert is_proper(cycle(5), Colouring(found)) and len(set(found)) == 3


def test_enumeration_examples():
    assert [c.assignment for c in iter_chi_colourings(cycle(4))] == [(0, 1, 0, 1)]
    assert [c.assignment for c in iter_chi_colourings(complete(3))] == [(0, 1, 2)]
    # 30 proper onto 3-colourings of C5 (chromatic polynomial 2^5 - 2) over 3! labellings
    assert len(oracle_onto(cycle(5), 3)) == 30
    stats = enumerate_chi_colourings(cycle(5))
    assert stats.colourings == 30 // math.factorial(3) == 5
    assert stats.exact


def test_enumeration_visits_canonical_proper_colourings():
    for g in random_corpus(40, seed=11, max_n=8):
        chi = chromatic_number(g)
        seen = []
        enumerate_chi_colourings(g, seen.append)
        assert len(set(seen)) == len(seen)
        for c in seen:
            assert is_proper(g, c) and c.k == chi
            assert canonical_assignment(c.assignment) == c.assignment


@settings(max_examples=100)
@given(graphs(max_n=8))
def test_partition_count_times_factorial_is_onto_count(g):
    stats = enumerate_chi_colourings(g)
    assert stats.colourings * math.factorial(stats.chi) == len(oracle_onto(g, stats.chi))


def test_enumeration_is_deterministic():
    g = sunlet(6)
    a, b = [], []
    sa = enumerate_chi_colourings(g, a.append)
    sb = enumerate_chi_colourings(g, b.append)
    assert a == b and sa == sb


def test_split_prefixes_cover_the_tree():
    g = sunlet(7)
    prefixes, spent = split_prefixes(g, 3)
    assert len(prefixes) >= 64 and spent > 0
    assert len(set(prefixes)) == len(prefixes)


def test_convention_examples():
    conv = convention_colourings(cycle(7))
    assert conv.colourings and all(c.class_sizes == (3, 3, 1) for c in conv.colourings)
    kb = convention_colourings(complete_bipartite(2, 5))
    assert [c.class_sizes for c in kb.colourings] == [(5, 2)]
    assert [c.class_sizes for c in convention_colourings(complete(4)).colourings] == [(1, 1, 1, 1)]
    assert [c.class_sizes for c in convention_colourings(null(5)).colourings] == [(5,)]


def test_convention_routes_agree():
    for g in random_corpus(100, seed=21, max_n=9) + [petersen(), sunlet(7), cycle(9), empty_sun(5)]:
        a = convention_colourings(g, method="filter")
        b = convention_colourings(g, method="mis")
        assert a.colourings == b.colourings, g.label


def test_convention_vector_dominates_every_chi_colouring():
    for g in random_corpus(40, seed=5, max_n=8):
        conv = convention_colourings(g)
        sizes = {c.class_sizes for c in conv.colourings}
        assert len(sizes) == 1
        best = sizes.pop()
        assert list(best) == sorted(best, reverse=True)
        for c in iter_chi_colourings(g):
            assert best >= class_size_key(c.assignment)


def test_convention_unknown_method():
    with pytest.raises(ValueError):
        convention_colourings(cycle(5), method="greedy")


def test_budget_exceeded_scalar_searches():
    with pytest.raises(BudgetExceeded) as exc:
        clique_number(petersen(), SearchBudget(2))
    assert exc.value.lower <= 2 <= exc.value.upper
    with pytest.raises(BudgetExceeded) as exc:
        chromatic_number(petersen(), SearchBudget(3))
    assert exc.value.lower <= 3 <= exc.value.upper


def test_budget_exceeded_enumeration_is_flagged():
    g = sunlet(7)
    probe = SearchBudget()
    chromatic_number(g, probe)
    budget = SearchBudget(probe.nodes + 500)
    stats = enumerate_chi_colourings(g, budget=budget)
    assert not stats.exact and budget.exceeded
    assert stats.colourings < enumerate_chi_colourings(g).colourings


def test_budget_env(monkeypatch):
    monkeypatch.setenv("RNN_BUDGET", "1234")
    assert SearchBudget.from_env().max_nodes == 1234
    monkeypatch.delenv("RNN_BUDGET")
    assert SearchBudget.from_env().max_nodes == 10**8
    with pytest.raises(ValueError):
        SearchBudget(0)
