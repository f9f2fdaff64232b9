"""Brute-force reference answers for tests.

Nothing here touches the search code in :mod:`rainbow_nbhd.colouring`.
Assignments in ``{0..k-1}^n`` are built with numpy and filtered; there is no
vertex ordering heuristic, symmetry breaking or node budget.
"""

from __future__ import annotations

import numpy as np

from rainbow_nbhd.graph import Graph

GUARD = 10**8


def _check_guard(n: int, k: int) -> None:
    if k**n > GUARD:
        raise ValueError(f"{k}^{n} assignments exceed the oracle guard of {GUARD}")


def oracle_all_proper_colourings(g: Graph, k: int) -> np.ndarray:
    """Every proper assignment into ``k`` colours, onto or not, as an (m, n) array.

    Columns are appended one vertex at a time in index order and rows with a
    monochromatic edge back to an earlier vertex are dropped.
    """
    _check_guard(g.n, k)
    rows = np.zeros((1, 0), dtype=np.int8)
    for v in range(g.n):
        if k == 0:
            return np.zeros((0, g.n), dtype=np.int8)
        earlier = [u for u in range(v) if g.adj[v] >> u & 1]
        rows = np.concatenate([np.column_stack([rows, np.full(len(rows), c, np.int8)]) for c in range(k)])
        if earlier:
            rows = rows[np.all(rows[:, earlier] != rows[:, [v]], axis=1)]
    return rows


def oracle_onto(g: Graph, k: int) -> np.ndarray:
    a = oracle_all_proper_colourings(g, k)
    if k == 0:
        return a
    onto = np.all(np.stack([(a == c).any(axis=1) for c in range(k)], axis=1), axis=1)
    return a[onto]


def oracle_chromatic_number(g: Graph) -> int:
    for k in range(g.n + 1):
        if len(oracle_all_proper_colourings(g, k)):
            return k
    raise AssertionError("unreachable: n colours always suffice")


def yield_counts(g: Graph, colourings: np.ndarray, k: int) -> np.ndarray:
    """Number of rainbow vertices for each row of ``colourings``."""
    if g.n == 0:
        return np.zeros(len(colourings), dtype=np.int64)
    closed = np.eye(g.n, dtype=bool)
    for u, v in g.edges():
        closed[u, v] = closed[v, u] = True
    counts = np.zeros(len(colourings), dtype=np.int64)
    for v in range(g.n):
        hood = colourings[:, closed[v]]
        seen_all = np.ones(len(colourings), dtype=bool)
        for c in range(k):
            seen_all &= (hood == c).any(axis=1)
        counts += seen_all
    return counts


def oracle_rainbow_range(g: Graph) -> tuple[int, int, int]:
    """``(chi, r_min, r_max)`` over all labelled onto chi-colourings."""
    chi = oracle_chromatic_number(g)
    counts = yield_counts(g, oracle_onto(g, chi), chi)
    return chi, int(counts.min()), int(counts.max())


def oracle_convention(g: Graph) -> tuple[tuple[int, ...], set[int]]:
    """Lexicographically largest labelled class-size vector over onto
    chi-colourings, and the yield counts of the colourings that attain it."""
    chi = oracle_chromatic_number(g)
    onto = oracle_onto(g, chi)
    sizes = np.stack([(onto == c).sum(axis=1) for c in range(chi)], axis=1) if chi else np.zeros((1, 0), int)
    best = max(map(tuple, sizes.tolist()))
    keep = np.all(sizes == np.asarray(best), axis=1)
    counts = yield_counts(g, onto[keep], chi)
    return tuple(int(x) for x in best), {int(c) for c in counts}
