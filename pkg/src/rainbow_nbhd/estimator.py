"""scikit-learn wrapper: graphs in, rainbow invariants out.

``RainbowInvariants`` is stateless (``fit`` only validates), so it drops into
a :class:`~sklearn.pipeline.Pipeline` as a feature extractor for graph
collections.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from rainbow_nbhd.colouring import SearchBudget, clique_number
from rainbow_nbhd.graph import Graph
from rainbow_nbhd.io import parse_graph6
from rainbow_nbhd.rainbow import rainbow_range

FEATURES = ("n", "m", "omega", "chi", "r_min", "r_max", "convention_value")


def check_graph(g) -> Graph:
    """Coerce a graph6 string, ``(n, edges)`` pair or :class:`Graph` to a Graph."""
    if isinstance(g, Graph):
        return g
    if isinstance(g, (str, bytes)):
        return parse_graph6(g)
    if isinstance(g, tuple) and len(g) == 2:
        n, edges = g
        return Graph.from_edges(int(n), [(int(u), int(v)) for u, v in edges])
    raise TypeError(f"cannot interpret {type(g).__name__} as a graph")


def check_graphs(X) -> list[Graph]:
    if isinstance(X, (str, bytes, Graph)):
        raise TypeError("expected a sequence of graphs, got a single graph")
    graphs = [check_graph(g) for g in X]
    if not graphs:
        raise ValueError("need at least one graph")
    return graphs


class RainbowInvariants(TransformerMixin, BaseEstimator):
    """Map each graph to ``(n, m, omega, chi, r_min, r_max, convention_value)``.

    Parameters
    ----------
    max_nodes : int
        Node budget per graph.
    n_jobs : int
        Workers for each enumeration; results do not depend on it.
    prune : bool
        Skip yield tests for vertices of degree below chi - 1.
    """

    def __init__(self, max_nodes: int = 10**8, n_jobs: int = 1, prune: bool = True):
        self.max_nodes = max_nodes
        self.n_jobs = n_jobs
        self.prune = prune

    def fit(self, X, y=None):
        check_graphs(X)
        self.n_features_out_ = len(FEATURES)
        return self

    def transform(self, X) -> np.ndarray:
        graphs = check_graphs(X)
        rows = []
        for g in graphs:
            budget = SearchBudget(self.max_nodes)
            rr = rainbow_range(g, budget, self.n_jobs, self.prune)
            if not rr.exact:
                raise RuntimeError(f"budget exhausted on graph {g.label or g.n}")
            omega = clique_number(g, budget)
            rows.append((g.n, g.m, omega, rr.chi, rr.r_min, rr.r_max, rr.convention_value))
        return np.asarray(rows, dtype=np.int64).reshape(len(rows), len(FEATURES))

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        return np.asarray(FEATURES, dtype=object)
