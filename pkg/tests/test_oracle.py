import math

import numpy as np
import pytest

from rainbow_nbhd.families import complete, complete_bipartite, cycle, null
from rainbow_nbhd.graph import Graph
from rainbow_nbhd.oracle import (
    oracle_all_proper_colourings,
    oracle_chromatic_number,
    oracle_convention,
    oracle_onto,
    oracle_rainbow_range,
)


def test_all_proper_colourings_examples():
    assert len(oracle_all_proper_colourings(cycle(3), 2)) == 0
    assert len(oracle_all_proper_colourings(cycle(4), 2)) == 2
    assert len(oracle_all_proper_colourings(cycle(5), 3)) == 30


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("k", range(1, 5))
def test_cycle_chromatic_polynomial(n, k):
    expected = (k - 1) ** n + (-1) ** n * (k - 1)
    assert len(oracle_all_proper_colourings(cycle(n), k)) == expected


def test_complete_graph_falling_factorial():
    for n in range(1, 6):
        assert len(oracle_all_proper_colourings(complete(n), n + 1)) == math.factorial(n + 1)


def test_rows_are_distinct_and_proper():
    g = cycle(6)
    rows = oracle_all_proper_colourings(g, 3)
    assert len(np.unique(rows, axis=0)) == len(rows)
    for u, v in g.edges():
        assert np.all(rows[:, u] != rows[:, v])


def test_oracle_range_examples():
    assert oracle_rainbow_range(cycle(7)) == (3, 3, 5)
    assert oracle_rainbow_range(complete_bipartite(3, 3)) == (2, 6, 6)
    assert oracle_rainbow_range(complete(3)) == (3, 3, 3)
    assert oracle_chromatic_number(Graph(0, ())) == 0


def test_oracle_onto_and_convention():
    assert len(oracle_onto(null(3), 2)) == 6
    sizes, counts = oracle_convention(cycle(7))
    assert sizes == (3, 3, 1) and counts == {3}


def test_guard():
    with pytest.raises(ValueError, match="guard"):
        oracle_all_proper_colourings(null(30), 2)
