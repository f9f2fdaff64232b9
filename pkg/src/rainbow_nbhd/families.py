"""Generators for the named graph families and seeded random corpora."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from rainbow_nbhd.graph import Graph, is_connected

ARITY = {
    "cycle": 1,
    "path": 1,
    "complete": 1,
    "complete_bipartite": 2,
    "null": 1,
    "sunlet": 1,
    "empty_sun": 1,
    "join_k1": 0,
}


@dataclass(frozen=True)
class FamilySpec:
    """A named parametric family member, e.g. ``FamilySpec("cycle", (7,))``.

    ``join_k1`` takes no integer parameters; the graph it extends is ``base``.
    """

    family: str
    params: tuple[int, ...] = ()
    base: Graph | None = None

    def __post_init__(self) -> None:
        if self.family not in ARITY:
            raise ValueError(f"unknown family {self.family!r}; expected one of {sorted(ARITY)}")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        if len(self.params) != ARITY[self.family]:
            raise ValueError(
                f"{self.family} takes {ARITY[self.family]} parameter(s), got {len(self.params)}"
            )
        if self.family == "join_k1" and self.base is None:
            raise ValueError("join_k1 needs a base graph")
        low = {"cycle": 3, "sunlet": 3, "empty_sun": 3}.get(self.family, 0)
        if any(p < low for p in self.params):
            raise ValueError(f"{self.family} parameters must be >= {low}, got {self.params}")

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse ``family:p1,p2`` (the CLI ``--gen`` syntax)."""
        name, _, rest = text.partition(":")
        params = tuple(int(t) for t in rest.split(",") if t.strip()) if rest else ()
        return cls(name.strip(), params)

    def __str__(self) -> str:
        return f"{self.family}:{','.join(map(str, self.params))}"


def expand_ranges(text: str) -> list[FamilySpec]:
    """Expand ``path:2..10`` or ``complete_bipartite:1..4,1..4`` into specs."""
    name, _, rest = text.partition(":")
    axes = []
    for token in rest.split(","):
        lo, sep, hi = token.partition("..")
        axes.append(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    return [FamilySpec(name.strip(), combo) for combo in itertools.product(*axes)]


def _cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % n) for i in range(n)]


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, _cycle_edges(n), f"cycle:{n}")


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"path:{n}")


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2), f"complete:{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return Graph.from_edges(a + b, edges, f"complete_bipartite:{a},{b}")


def null(n: int) -> Graph:
    return Graph.from_edges(n, [], f"null:{n}")


def sunlet(n: int) -> Graph:
    """Cycle on 0..n-1 with pendant vertex n+i attached to i."""
    edges = _cycle_edges(n) + [(i, n + i) for i in range(n)]
    return Graph.from_edges(2 * n, edges, f"sunlet:{n}")


def empty_sun(n: int) -> Graph:
    """Cycle on 0..n-1; vertex n+i is adjacent to i and i+1 (mod n) only."""
    edges = _cycle_edges(n)
    for i in range(n):
        edges += [(n + i, i), (n + i, (i + 1) % n)]
    return Graph.from_edges(2 * n, edges, f"empty_sun:{n}")


def join_k1(g: Graph) -> Graph:
    """Add vertex ``g.n`` adjacent to every vertex of ``g``."""
    edges = g.edges() + [(v, g.n) for v in range(g.n)]
    label = f"K1+({g.label})" if g.label else None
    return Graph.from_edges(g.n + 1, edges, label)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, "petersen")


_BUILDERS = {
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "null": null,
    "sunlet": sunlet,
    "empty_sun": empty_sun,
}


def generate(spec: FamilySpec) -> Graph:
    if spec.family == "join_k1":
        return join_k1(spec.base)
    return _BUILDERS[spec.family](*spec.params)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """G(n, p) conditioned on connectivity by rejection."""
    while True:
        g = random_graph(n, p, rng)
        if is_connected(g):
            return g


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree on ``n`` vertices via a Pruefer sequence."""
    if n <= 2:
        return path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(n) if degree[x] == 1)
    edges.append((u, w))
    return Graph.from_edges(n, edges)


EDGE_PROBABILITIES = (0.2, 0.4, 0.6, 0.8)


def random_corpus(
    count: int, seed: int, min_n: int = 4, max_n: int = 9, connected: bool = True
) -> list[Graph]:
    """Reproducible corpus; edge probability cycles through 0.2, 0.4, 0.6, 0.8."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(min_n, max_n)
        p = EDGE_PROBABILITIES[i % len(EDGE_PROBABILITIES)]
        g = random_connected_graph(n, p, rng) if connected else random_graph(n, p, rng)
        out.append(g.relabel(f"random:seed={seed}:#{i}:n={n}:p={p}"))
    return out


def random_trees(count: int, seed: int, min_n: int = 2, max_n: int = 10) -> list[Graph]:
    rng = random.Random(seed)
    return [
        random_tree(rng.randint(min_n, max_n), rng).relabel(f"tree:seed={seed}:#{i}")
        for i in range(count)
    ]
