"""Exact colouring machinery: clique number, chromatic number, canonical
enumeration of minimum colourings, and rainbow-convention colourings.

All searches count nodes against a :class:`SearchBudget`. A search that runs
out of budget raises :class:`BudgetExceeded` (scalar results) or returns a
result flagged ``exact=False`` (enumerations); it never reports a bound as an
exact value.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from joblib import Parallel, delayed

from rainbow_nbhd.graph import Graph, iter_bits

DEFAULT_MAX_NODES = 10**8
SPLIT_TARGET = 64


class BudgetExceeded(RuntimeError):
    """A search hit its node cap; ``lower``/``upper`` bracket the true value."""

    def __init__(self, what: str, lower: int, upper: int, nodes: int) -> None:
        super().__init__(f"{what}: node budget exhausted after {nodes} nodes, bounds [{lower}, {upper}]")
        self.what = what
        self.lower = lower
        self.upper = upper
        self.nodes = nodes


@dataclass
class SearchBudget:
    max_nodes: int = DEFAULT_MAX_NODES
    nodes: int = 0
    exceeded: bool = False

    def __post_init__(self) -> None:
        if self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")

    @classmethod
    def from_env(cls) -> SearchBudget:
        """Budget from ``RNN_BUDGET`` if set, else the default."""
        raw = os.environ.get("RNN_BUDGET")
        return cls(int(raw)) if raw else cls()

    @property
    def remaining(self) -> int:
        return max(self.max_nodes - self.nodes, 0)

    def tick(self) -> bool:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            self.exceeded = True
        return not self.exceeded


class _Stop(Exception):
    pass


@dataclass(frozen=True)
class Colouring:
    """Colour indices ``0..k-1`` per vertex; every index must be used."""

    assignment: tuple[int, ...]
    k: int = field(init=False)
    class_sizes: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        a = tuple(int(c) for c in self.assignment)
        object.__setattr__(self, "assignment", a)
        k = max(a) + 1 if a else 0
        sizes = [0] * k
        for c in a:
            if c < 0:
                raise ValueError(f"negative colour index {c}")
            sizes[c] += 1
        if 0 in sizes:
            raise ValueError(f"colour {sizes.index(0)} is unused; indices must be 0..k-1")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "class_sizes", tuple(sizes))

    def classes(self) -> list[int]:
        """Colour classes as vertex bitmasks, indexed by colour."""
        masks = [0] * self.k
        for v, c in enumerate(self.assignment):
            masks[c] |= 1 << v
        return masks

    def to_dict(self) -> dict:
        return {"k": self.k, "assignment": list(self.assignment)}

    @classmethod
    def from_dict(cls, data: dict) -> Colouring:
        c = cls(tuple(data["assignment"]))
        if "k" in data and int(data["k"]) != c.k:
            raise ValueError(f"declared k={data['k']} but assignment uses {c.k} colours")
        return c


def canonical_assignment(assignment: Iterable[int]) -> tuple[int, ...]:
    """Relabel colours by first occurrence along vertex order 0, 1, 2, ..."""
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in assignment)


def size_ordered_assignment(assignment: Iterable[int]) -> tuple[int, ...]:
    """Relabel colours so class sizes are non-increasing; ties by first occurrence."""
    a = canonical_assignment(assignment)
    sizes: dict[int, int] = {}
    for c in a:
        sizes[c] = sizes.get(c, 0) + 1
    rank = {c: i for i, c in enumerate(sorted(sizes, key=lambda c: (-sizes[c], c)))}
    return tuple(rank[c] for c in a)


def is_proper(g: Graph, c: Colouring) -> bool:
    if len(c.assignment) != g.n:
        raise ValueError(f"colouring has {len(c.assignment)} entries for {g.n} vertices")
    a = c.assignment
    return all(a[u] != a[v] for u, v in g.edges())


def search_order(g: Graph) -> list[int]:
    """Descending degree, ties by index."""
    return sorted(range(g.n), key=lambda v: (-g.adj[v].bit_count(), v))


# -- clique number -----------------------------------------------------------


def clique_number(g: Graph, budget: SearchBudget | None = None) -> int:
    """Exact clique number by pivoting Bron-Kerbosch with a size bound."""
    budget = budget or SearchBudget()
    adj = g.adj
    best = 1 if g.n else 0

    def expand(size: int, cand: int, excl: int) -> None:
        nonlocal best
        if not budget.tick():
            raise _Stop
        if not cand:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        pivot = max(iter_bits(cand | excl), key=lambda u: (cand & adj[u]).bit_count())
        for v in iter_bits(cand & ~adj[pivot]):
            expand(size + 1, cand & adj[v], excl & adj[v])
            cand &= ~(1 << v)
            excl |= 1 << v
            if size + cand.bit_count() <= best:
                return

    try:
        expand(0, (1 << g.n) - 1, 0)
    except _Stop:
        upper = max(dsatur(g)) + 1 if g.n else 0
        raise BudgetExceeded("clique_number", best, upper, budget.nodes) from None
    return best


# -- chromatic number --------------------------------------------------------


def dsatur(g: Graph) -> list[int]:
    """Greedy DSATUR colouring; returns a colour index per vertex."""
    colour = [-1] * g.n
    seen = [0] * g.n  # bitmask of colours present among coloured neighbours
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if colour[u] < 0),
            key=lambda u: (seen[u].bit_count(), g.adj[u].bit_count(), -u),
        )
        c = (~seen[v] & (seen[v] + 1)).bit_length() - 1
        colour[v] = c
        for u in iter_bits(g.adj[v]):
            seen[u] |= 1 << c
    return colour


class _ColourSearch:
    """Backtracking over a static vertex order with forward checking.

    Colour symmetry is broken by letting the i-th vertex in the order take at
    most one more than the largest colour used so far, so each partition into
    exactly ``k`` independent classes is reached by exactly one leaf.
    """

    def __init__(self, g: Graph, k: int, order: list[int]) -> None:
        self.g = g
        self.k = k
        self.order = order
        self.n = g.n
        self.colour = [-1] * g.n
        self.avail = [(1 << k) - 1] * g.n
        self.uncoloured = (1 << g.n) - 1

    def assign(self, v: int, c: int) -> list[int] | None:
        """Colour ``v`` with ``c``; returns touched neighbours, or None on wipe-out."""
        bit = 1 << c
        touched = []
        for u in iter_bits(self.g.adj[v] & self.uncoloured):
            if self.avail[u] & bit:
                self.avail[u] ^= bit
                touched.append(u)
                if not self.avail[u]:
                    for w in touched:
                        self.avail[w] |= bit
                    return None
        self.colour[v] = c
        self.uncoloured ^= 1 << v
        return touched

    def unassign(self, v: int, c: int, touched: list[int]) -> None:
        bit = 1 << c
        for w in touched:
            self.avail[w] |= bit
        self.colour[v] = -1
        self.uncoloured |= 1 << v

    def children(self, i: int, used: int) -> Iterable[int]:
        """Candidate colours for position ``i`` given ``used`` colours so far."""
        v = self.order[i]
        cap = min(self.k, used + 1)
        choices = self.avail[v] & ((1 << cap) - 1)
        # the remaining n-i vertices must still introduce k-used new colours
        need = self.k - used
        left = self.n - i
        for c in iter_bits(choices):
            if left - 1 >= need - (c == used):
                yield c

    def run(self, i: int, used: int, budget: SearchBudget, visit: Callable[[list[int]], bool | None]) -> bool:
        """Depth-first from position ``i``; stops early when ``visit`` returns True."""
        if not budget.tick():
            raise _Stop
        if i == self.n:
            return bool(visit(self.colour))
        v = self.order[i]
        for c in list(self.children(i, used)):
            touched = self.assign(v, c)
            if touched is None:
                continue
            stop = self.run(i + 1, max(used, c + 1), budget, visit)
            self.unassign(v, c, touched)
            if stop:
                return True
        return False

    def replay(self, prefix: tuple[int, ...]) -> int:
        """Apply a prefix produced by :func:`split_prefixes`; returns colours used."""
        used = 0
        for i, c in enumerate(prefix):
            if self.assign(self.order[i], c) is None:
                raise ValueError("inconsistent prefix")
            used = max(used, c + 1)
        return used


def is_colourable(g: Graph, k: int, budget: SearchBudget | None = None) -> list[int] | None:
    """A proper colouring using exactly ``k`` colours, or None if none exists."""
    budget = budget or SearchBudget()
    if k > g.n:
        return None
    if g.n == 0:
        return []
    search = _ColourSearch(g, k, search_order(g))
    found: list[int] = []

    def visit(colour: list[int]) -> bool:
        found.extend(colour)
        return True

    try:
        search.run(0, 0, budget, visit)
    except _Stop:
        raise BudgetExceeded(f"{k}-colourability", 0, 1, budget.nodes) from None
    return found or None


def chromatic_number(g: Graph, budget: SearchBudget | None = None) -> int:
    """Exact chromatic number.

    DSATUR gives an upper bound and the clique number a lower bound; when they
    differ, k-colourability is tested upward from the lower bound.
    """
    budget = budget or SearchBudget()
    if g.n == 0:
        return 0
    upper = max(dsatur(g)) + 1
    try:
        lower = clique_number(g, budget)
    except BudgetExceeded as exc:
        raise BudgetExceeded("chromatic_number", exc.lower, upper, budget.nodes) from None
    for k in range(lower, upper):
        try:
            if is_colourable(g, k, budget) is not None:
                return k
        except BudgetExceeded:
            raise BudgetExceeded("chromatic_number", k, upper, budget.nodes) from None
    return upper


# -- enumeration of minimum colourings ---------------------------------------


@dataclass
class EnumerationStats:
    chi: int
    colourings: int
    nodes: int
    exact: bool


def split_prefixes(g: Graph, k: int, target: int = SPLIT_TARGET) -> tuple[list[tuple[int, ...]], int]:
    """Breadth-first frontier of consistent prefixes along the search order.

    Expands level by level until at least ``target`` prefixes exist or the order
    is exhausted. The frontier depends only on the graph and ``k``, which keeps
    node counts identical for every worker count. Returns the frontier and the
    number of search nodes spent above it.
    """
    order = search_order(g)
    frontier: list[tuple[int, ...]] = [()]
    spent = 0
    depth = 0
    while len(frontier) < target and depth < g.n:
        nxt = []
        for prefix in frontier:
            search = _ColourSearch(g, k, order)
            used = search.replay(prefix)
            v = order[depth]
            for c in list(search.children(depth, used)):
                touched = search.assign(v, c)
                if touched is not None:
                    nxt.append(prefix + (c,))
                    search.unassign(v, c, touched)
        spent += len(frontier)
        frontier = nxt
        depth += 1
    return frontier, spent


class Fold:
    """Reduction over the leaves of the colouring search.

    ``visit`` receives raw assignments in search labels; ``merge`` must be
    commutative and associative so results do not depend on how the search
    was split across workers.
    """

    def visit(self, assignment: list[int]) -> None:
        pass

    def merge(self, other: Fold) -> Fold:
        return self


def _run_subtrees(
    g: Graph, k: int, prefixes: list[tuple[int, ...]], max_nodes: int, make_fold: Callable[[], Fold]
) -> tuple[Fold, int, int, bool]:
    budget = SearchBudget(max(max_nodes, 1))
    fold = make_fold()
    order = search_order(g)
    leaves = 0

    def visit(colour: list[int]) -> None:
        nonlocal leaves
        leaves += 1
        fold.visit(colour)

    try:
        for prefix in prefixes:
            search = _ColourSearch(g, k, order)
            used = search.replay(prefix)
            search.run(len(prefix), used, budget, visit)
    except _Stop:
        pass
    return fold, leaves, budget.nodes, budget.exceeded


def fold_colourings(
    g: Graph,
    k: int,
    make_fold: Callable[[], Fold],
    budget: SearchBudget | None = None,
    n_jobs: int = 1,
) -> tuple[Fold, EnumerationStats]:
    """Fold over every partition of V into exactly ``k`` independent classes.

    With ``n_jobs > 1`` the frontier from :func:`split_prefixes` is fanned out
    over joblib workers; each gets the full remaining node allowance and the
    run is flagged inexact if their total exceeds it.
    """
    budget = budget or SearchBudget()
    if g.n == 0:
        fold = make_fold()
        if k == 0:
            fold.visit([])
        return fold, EnumerationStats(k, int(k == 0), 0, True)

    prefixes, spent = split_prefixes(g, k)
    budget.nodes += spent
    if budget.nodes > budget.max_nodes:
        budget.exceeded = True
        return make_fold(), EnumerationStats(k, 0, budget.nodes, False)

    if n_jobs == 1:
        parts = [_run_subtrees(g, k, prefixes, budget.remaining, make_fold)]
    else:
        workers = n_jobs if n_jobs > 0 else os.cpu_count() or 1
        chunks = [prefixes[i::workers] for i in range(workers)]
        allowance = budget.remaining
        parts = Parallel(n_jobs=workers)(
            delayed(_run_subtrees)(g, k, chunk, allowance, make_fold) for chunk in chunks if chunk
        )

    total = make_fold()
    count = 0
    for fold, leaves, nodes, exceeded in parts:
        total = total.merge(fold)
        count += leaves
        budget.nodes += nodes
        budget.exceeded |= exceeded
    if budget.nodes > budget.max_nodes:
        budget.exceeded = True
    return total, EnumerationStats(k, count, budget.nodes, not budget.exceeded)


def enumerate_chi_colourings(
    g: Graph,
    visit: Callable[[Colouring], None] | None = None,
    budget: SearchBudget | None = None,
    chi: int | None = None,
) -> EnumerationStats:
    """Call ``visit`` once per chi-colouring partition, in canonical form.

    Canonical form labels colours by first occurrence along vertex order
    0, 1, 2, ..., so colour relabellings of one partition are never repeated.
    The visiting order is deterministic.
    """
    budget = budget or SearchBudget()
    if chi is None:
        chi = chromatic_number(g, budget)

    class _Visit(Fold):
        def visit(self, assignment: list[int]) -> None:
            if visit is not None:
                visit(Colouring(canonical_assignment(assignment)))

    _, stats = fold_colourings(g, chi, _Visit, budget)
    return stats


def iter_chi_colourings(g: Graph, budget: SearchBudget | None = None) -> list[Colouring]:
    out: list[Colouring] = []
    enumerate_chi_colourings(g, out.append, budget)
    return out


# -- rainbow neighbourhood convention ----------------------------------------


def class_size_key(assignment: Iterable[int]) -> tuple[int, ...]:
    """Class sizes sorted descending: the best labelling's size vector."""
    sizes: dict[int, int] = {}
    for c in assignment:
        sizes[c] = sizes.get(c, 0) + 1
    return tuple(sorted(sizes.values(), reverse=True))


class ConventionFold(Fold):
    """Keeps every partition whose sorted class-size vector is lexicographically largest."""

    def __init__(self) -> None:
        self.best: tuple[int, ...] = ()
        self.members: set[tuple[int, ...]] = set()

    def visit(self, assignment: list[int]) -> None:
        key = class_size_key(assignment)
        if key > self.best:
            self.best = key
            self.members = {size_ordered_assignment(assignment)}
        elif key == self.best:
            self.members.add(size_ordered_assignment(assignment))

    def merge(self, other: ConventionFold) -> ConventionFold:
        if other.best > self.best:
            self.best, self.members = other.best, set(other.members)
        elif other.best == self.best:
            self.members |= other.members
        return self


def _convention_by_filter(g: Graph, chi: int, budget: SearchBudget) -> tuple[list[tuple[int, ...]], bool]:
    fold, stats = fold_colourings(g, chi, ConventionFold, budget)
    return sorted(fold.members), stats.exact


def _independent_sets(g: Graph, within: int, size: int, budget: SearchBudget) -> Iterable[int]:
    """Independent subsets of ``within`` with exactly ``size`` vertices, as bitmasks."""

    def grow(chosen: int, cand: int, need: int) -> Iterable[int]:
        if not budget.tick():
            raise _Stop
        if need == 0:
            yield chosen
            return
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            yield from grow(chosen | low, cand & ~g.adj[v], need - 1)

    yield from grow(0, within, size)


def _convention_by_mis(g: Graph, chi: int, budget: SearchBudget) -> list[tuple[int, ...]]:
    """Build classes one at a time, each a largest independent set that still
    leaves a colourable remainder, backtracking over every tie."""
    memo: dict[tuple[int, int], tuple[tuple[int, ...], list[tuple[int, ...]]] | None] = {}

    def best(remaining: int, k: int) -> tuple[tuple[int, ...], list[tuple[int, ...]]] | None:
        if k == 0:
            return ((), [()]) if remaining == 0 else None
        key = (remaining, k)
        if key in memo:
            return memo[key]
        result = None
        for s in range(remaining.bit_count() - k + 1, 0, -1):
            top: tuple[int, ...] | None = None
            parts: list[tuple[int, ...]] = []
            for cls in _independent_sets(g, remaining, s, budget):
                sub = best(remaining & ~cls, k - 1)
                if sub is None:
                    continue
                vec = (s,) + sub[0]
                if top is None or vec > top:
                    top, parts = vec, []
                if vec == top:
                    parts.extend((cls,) + p for p in sub[1])
            if top is not None:
                result = (top, parts)
                break
        memo[key] = result
        return result

    found = best((1 << g.n) - 1, chi)
    if found is None:
        return []
    out = set()
    for classes in found[1]:
        assignment = [0] * g.n
        for c, mask in enumerate(classes):
            for v in iter_bits(mask):
                assignment[v] = c
        out.add(size_ordered_assignment(assignment))
    return sorted(out)


@dataclass
class ConventionResult:
    colourings: list[Colouring]
    chi: int
    exact: bool

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return self.colourings[0].class_sizes if self.colourings else ()


def convention_colourings(
    g: Graph, budget: SearchBudget | None = None, method: str = "filter"
) -> ConventionResult:
    """All chi-colourings whose class-size vector is lexicographically maximal.

    ``method="filter"`` scans the full canonical enumeration; ``method="mis"``
    extracts classes greedily as largest independent sets with backtracking.
    Colours are labelled by decreasing class size, ties by first occurrence.
    """
    budget = budget or SearchBudget()
    chi = chromatic_number(g, budget)
    if g.n == 0:
        return ConventionResult([Colouring(())], 0, True)
    if method == "filter":
        members, exact = _convention_by_filter(g, chi, budget)
    elif method == "mis":
        try:
            members, exact = _convention_by_mis(g, chi, budget), True
        except _Stop:
            members, exact = [], False
    else:
        raise ValueError(f"unknown method {method!r}")
    return ConventionResult([Colouring(a) for a in members], chi, exact)
