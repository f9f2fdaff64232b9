"""Rainbow neighbourhood counts and the exact range r-/r+ over chi-colourings.

A vertex *yields* under a colouring when its closed neighbourhood meets every
colour class. The minimum and maximum yield counts over all minimum proper
colourings are computed by folding over the canonical enumeration from
:mod:`rainbow_nbhd.colouring`.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import partial

from rainbow_nbhd.colouring import (
    BudgetExceeded,
    Colouring,
    Fold,
    SearchBudget,
    canonical_assignment,
    chromatic_number,
    class_size_key,
    clique_number,
    fold_colourings,
    is_proper,
    size_ordered_assignment,
)
from rainbow_nbhd.families import FamilySpec, generate, join_k1
from rainbow_nbhd.graph import Graph, is_bipartite, iter_bits

# -- single colouring ----------------------------------------------------------


@dataclass(frozen=True)
class RainbowReport:
    yields: tuple[bool, ...]
    count: int
    colouring: Colouring

    @property
    def yielding(self) -> list[int]:
        return [v for v, y in enumerate(self.yields) if y]

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "yielding": self.yielding,
            "colouring": self.colouring.to_dict(),
            "class_sizes": list(self.colouring.class_sizes),
        }


def _require_proper(g: Graph, c: Colouring) -> None:
    if not is_proper(g, c):
        raise ValueError("colouring is not proper")


def yields_rainbow(g: Graph, c: Colouring, v: int) -> bool:
    _require_proper(g, c)
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    seen = 0
    full = (1 << c.k) - 1
    for u in iter_bits(g.closed_mask(v)):
        seen |= 1 << c.assignment[u]
        if seen == full:
            return True
    return seen == full


def rainbow_count(g: Graph, c: Colouring) -> RainbowReport:
    """Per-vertex yield flags for one proper colouring."""
    _require_proper(g, c)
    classes = c.classes()
    flags = tuple(all(g.closed_mask(v) & cls for cls in classes) for v in range(g.n))
    return RainbowReport(flags, sum(flags), c)


# -- range over all chi-colourings -----------------------------------------------


class RangeFold(Fold):
    """Min/max yield counts with lexicographically smallest canonical witnesses,
    plus yield counts of the convention (lexicographically largest class
    sizes) partitions."""

    def __init__(self, closed: tuple[int, ...], candidates: tuple[int, ...], k: int) -> None:
        self.closed = closed
        self.candidates = candidates
        self.k = k
        self.r_min: int | None = None
        self.r_max: int | None = None
        self.min_witness: tuple[int, ...] = ()
        self.max_witness: tuple[int, ...] = ()
        self.conv_key: tuple[int, ...] = ()
        self.conv: dict[tuple[int, ...], int] = {}

    def visit(self, assignment: list[int]) -> None:
        classes = [0] * self.k
        for v, c in enumerate(assignment):
            classes[c] |= 1 << v
        count = 0
        for v in self.candidates:
            nb = self.closed[v]
            for cls in classes:
                if not nb & cls:
                    break
            else:
                count += 1
        self._offer(count, assignment)
        key = class_size_key(assignment)
        if key > self.conv_key:
            self.conv_key = key
            self.conv = {size_ordered_assignment(assignment): count}
        elif key == self.conv_key:
            self.conv[size_ordered_assignment(assignment)] = count

    def _offer(self, count: int, assignment) -> None:
        if self.r_min is None or count <= self.r_min:
            w = canonical_assignment(assignment)
            if self.r_min is None or count < self.r_min or w < self.min_witness:
                self.r_min, self.min_witness = count, w
        if self.r_max is None or count >= self.r_max:
            w = canonical_assignment(assignment)
            if self.r_max is None or count > self.r_max or w < self.max_witness:
                self.r_max, self.max_witness = count, w

    def merge(self, other: RangeFold) -> RangeFold:
        if other.r_min is not None:
            self._offer(other.r_min, other.min_witness)
            self._offer(other.r_max, other.max_witness)
        if other.conv_key > self.conv_key:
            self.conv_key, self.conv = other.conv_key, dict(other.conv)
        elif other.conv_key == self.conv_key:
            self.conv.update(other.conv)
        return self


@dataclass
class RainbowRange:
    n: int
    chi: int
    r_min: int
    r_max: int
    min_witness: Colouring
    max_witness: Colouring
    convention_value: int
    convention_counts: tuple[int, ...]
    convention_colourings: int
    colourings_enumerated: int
    nodes: int
    exact: bool
    label: str | None = None

    @property
    def convention_unique(self) -> bool:
        """All convention colourings give the same yield count."""
        return len(self.convention_counts) == 1

    @property
    def convention_equals_min(self) -> bool:
        return self.convention_unique and self.convention_value == self.r_min

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "chi": self.chi,
            "r_min": self.r_min,
            "r_max": self.r_max,
            "min_witness": self.min_witness.to_dict(),
            "max_witness": self.max_witness.to_dict(),
            "convention_value": self.convention_value,
            "convention_counts": list(self.convention_counts),
            "convention_unique": self.convention_unique,
            "convention_equals_min": self.convention_equals_min,
            "convention_colourings": self.convention_colourings,
            "colourings_enumerated": self.colourings_enumerated,
            "nodes": self.nodes,
            "exact": self.exact,
        }


def rainbow_range(
    g: Graph, budget: SearchBudget | None = None, n_jobs: int = 1, prune: bool = True
) -> RainbowRange:
    """Exact r- and r+ of ``g`` over every chi-colouring.

    With ``prune`` set, vertices of degree below chi - 1 are never tested,
    since their closed neighbourhood is too small to meet every class.
    Raises :class:`BudgetExceeded` if chi itself cannot be settled; an
    enumeration cut short returns bounds flagged ``exact=False``.
    """
    budget = budget or SearchBudget()
    chi = chromatic_number(g, budget)
    if g.n == 0:
        empty = Colouring(())
        return RainbowRange(0, 0, 0, 0, empty, empty, 0, (0,), 1, 1, budget.nodes, True, g.label)
    closed = tuple(g.closed_mask(v) for v in range(g.n))
    candidates = tuple(v for v in range(g.n) if not prune or g.adj[v].bit_count() >= chi - 1)
    fold, stats = fold_colourings(g, chi, partial(RangeFold, closed, candidates, chi), budget, n_jobs)
    if fold.r_min is None:
        raise BudgetExceeded("rainbow_range", chi, g.n, budget.nodes)
    counts = tuple(sorted(set(fold.conv.values())))
    return RainbowRange(
        n=g.n,
        chi=chi,
        r_min=fold.r_min,
        r_max=fold.r_max,
        min_witness=Colouring(fold.min_witness),
        max_witness=Colouring(fold.max_witness),
        convention_value=counts[0],
        convention_counts=counts,
        convention_colourings=len(fold.conv),
        colourings_enumerated=stats.colourings,
        nodes=stats.nodes,
        exact=stats.exact,
        label=g.label,
    )


# -- checks -------------------------------------------------------------------


@dataclass
class Verdict:
    check: str
    passed: bool
    label: str | None = None
    details: dict = field(default_factory=dict)
    applicable: bool = True

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "label": self.label,
            "passed": self.passed,
            "applicable": self.applicable,
            "details": self.details,
        }


def _exact_range(g: Graph, rr: RainbowRange | None, budget: SearchBudget | None, n_jobs: int = 1) -> RainbowRange:
    rr = rr or rainbow_range(g, budget, n_jobs)
    if not rr.exact:
        raise ValueError("check needs an exact rainbow range; raise the node budget")
    return rr


def check_theorem_1_1(g: Graph, rr: RainbowRange | None = None, budget: SearchBudget | None = None) -> Verdict:
    """chi <= r- <= r+ <= n."""
    rr = _exact_range(g, rr, budget)
    ok = rr.chi <= rr.r_min <= rr.r_max <= rr.n
    return Verdict("thm1.1", ok, g.label, {"chi": rr.chi, "r_min": rr.r_min, "r_max": rr.r_max, "n": rr.n})


def check_clique_bound(g: Graph, rr: RainbowRange | None = None, budget: SearchBudget | None = None) -> Verdict:
    rr = _exact_range(g, rr, budget)
    omega = clique_number(g, budget)
    return Verdict("clique-bound", omega <= rr.r_min, g.label, {"omega": omega, "r_min": rr.r_min})


class _DegreeFold(Fold):
    """Collects yielding vertices whose degree is below k - 1."""

    def __init__(self, closed: tuple[int, ...], degrees: tuple[int, ...], k: int) -> None:
        self.closed, self.degrees, self.k = closed, degrees, k
        self.violations: list[tuple[tuple[int, ...], int]] = []

    def visit(self, assignment: list[int]) -> None:
        classes = [0] * self.k
        for v, c in enumerate(assignment):
            classes[c] |= 1 << v
        for v, nb in enumerate(self.closed):
            if self.degrees[v] < self.k - 1 and all(nb & cls for cls in classes):
                self.violations.append((canonical_assignment(assignment), v))

    def merge(self, other: _DegreeFold) -> _DegreeFold:
        self.violations = sorted(self.violations + other.violations)
        return self


def check_lemma_3_2(g: Graph, budget: SearchBudget | None = None) -> Verdict:
    """Every vertex that yields under some chi-colouring has degree >= chi - 1.

    Runs its own unpruned enumeration so the check is not circular.
    """
    budget = budget or SearchBudget()
    chi = chromatic_number(g, budget)
    closed = tuple(g.closed_mask(v) for v in range(g.n))
    fold, stats = fold_colourings(g, chi, partial(_DegreeFold, closed, tuple(g.degrees()), chi), budget)
    if not stats.exact:
        raise ValueError("check needs a complete enumeration; raise the node budget")
    details = {"chi": chi, "violations": [{"assignment": list(a), "vertex": v} for a, v in fold.violations[:10]]}
    return Verdict("lem3.2", not fold.violations, g.label, details)


def check_theorem_1_2(g: Graph, rr: RainbowRange | None = None, budget: SearchBudget | None = None) -> Verdict:
    """Bipartite graphs: r- = r+ = n.

    Only applies when no vertex is isolated (or there are no edges at all): an
    isolated vertex beside an edge never sees both colours.
    """
    if not is_bipartite(g):
        return Verdict("thm1.2", True, g.label, {"reason": "not bipartite"}, applicable=False)
    if g.m and 0 in g.degrees():
        return Verdict("thm1.2", True, g.label, {"reason": "isolated vertex"}, applicable=False)
    rr = _exact_range(g, rr, budget)
    ok = rr.r_min == rr.r_max == rr.n
    return Verdict("thm1.2", ok, g.label, {"n": rr.n, "r_min": rr.r_min, "r_max": rr.r_max})


def check_theorem_2_1(g: Graph, rr: RainbowRange | None = None, budget: SearchBudget | None = None) -> Verdict:
    """Convention colourings share one yield count, and it equals r-."""
    rr = _exact_range(g, rr, budget)
    details = {
        "r_min": rr.r_min,
        "convention_counts": list(rr.convention_counts),
        "convention_colourings": rr.convention_colourings,
        "unique": rr.convention_unique,
        "equals_min": rr.convention_equals_min,
    }
    return Verdict("thm2.1", rr.convention_equals_min, g.label, details)


def check_join_lemma(g: Graph, budget: SearchBudget | None = None, n_jobs: int = 1) -> Verdict:
    """r-(K1+G) = 1 + r-(G) and r+(K1+G) = 1 + r+(G)."""
    base = _exact_range(g, None, budget, n_jobs)
    joined = _exact_range(join_k1(g), None, budget, n_jobs)
    details = {
        "r_min": base.r_min,
        "r_max": base.r_max,
        "join_r_min": joined.r_min,
        "join_r_max": joined.r_max,
        "min_witness": base.min_witness.to_dict(),
        "join_min_witness": joined.min_witness.to_dict(),
        "max_witness": base.max_witness.to_dict(),
        "join_max_witness": joined.max_witness.to_dict(),
    }
    ok = joined.r_min == base.r_min + 1 and joined.r_max == base.r_max + 1
    return Verdict("lem1.3", ok, g.label, details)


# -- family formulas ------------------------------------------------------------


def predict_odd_cycle(n: int) -> tuple[int | None, int | None]:
    """``(r-, r+)`` claimed for odd cycles; r+ is stated for n in 7+4l and 9+4l."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"odd cycle length >= 3 expected, got {n}")
    if n <= 5:
        return 3, 3
    ell = (n - 7) // 4 if (n - 7) % 4 == 0 else (n - 9) // 4
    return 3, 3 + 2 * (ell + 1)


def predict_sunlet(n: int) -> tuple[int | None, int | None]:
    if n < 7 or n % 2 == 0:
        raise ValueError(f"odd sunlet order >= 7 expected, got {n}")
    return None, n


def predict_empty_sun(n: int) -> tuple[int | None, int | None]:
    return None, 2 * n


FORMULAS = {
    "prop2.3": ("cycle", predict_odd_cycle),
    "prop2.4": ("sunlet", predict_sunlet),
    "prop2.5": ("empty_sun", predict_empty_sun),
}


@dataclass
class FamilyRow:
    params: tuple[int, ...]
    n: int
    predicted_min: int | None
    computed_min: int | None
    predicted_max: int | None
    computed_max: int | None
    exact: bool

    @property
    def match(self) -> bool | None:
        """None when the row is inconclusive."""
        if not self.exact:
            return None
        ok_min = self.predicted_min is None or self.predicted_min == self.computed_min
        ok_max = self.predicted_max is None or self.predicted_max == self.computed_max
        return ok_min and ok_max

    def to_dict(self) -> dict:
        return {
            "params": list(self.params),
            "n": self.n,
            "predicted_min": self.predicted_min,
            "computed_min": self.computed_min,
            "predicted_max": self.predicted_max,
            "computed_max": self.computed_max,
            "exact": self.exact,
            "match": self.match,
        }


COLUMNS = ("params", "n", "predicted_min", "computed_min", "predicted_max", "computed_max", "exact", "match")


@dataclass
class FamilyCheck:
    formula: str
    family: str
    rows: list[FamilyRow]

    @property
    def all_match(self) -> bool:
        return all(r.match is True for r in self.rows)

    @property
    def exact(self) -> bool:
        return all(r.exact for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "formula": self.formula,
            "family": self.family,
            "all_match": self.all_match,
            "rows": [r.to_dict() for r in self.rows],
        }

    def _cells(self) -> list[list[str]]:
        def fmt(x) -> str:
            if x is None:
                return "-"
            if isinstance(x, (list, tuple)):
                return ",".join(map(str, x))
            return str(x).lower() if isinstance(x, bool) else str(x)

        return [[fmt(r.to_dict()[c]) for c in COLUMNS] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        writer.writerows(self._cells())
        return buf.getvalue()

    def to_table(self) -> str:
        return format_table(COLUMNS, self._cells())


def format_table(headers, rows) -> str:
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = ["  ".join(str(h).rjust(w) for h, w in zip(headers, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def verify_family(
    formula: str,
    params: list[int],
    budget: SearchBudget | None = None,
    n_jobs: int = 1,
) -> FamilyCheck:
    """Compare the closed forms for cycles, sunlets and empty suns with exact values.

    Each row gets its own copy of ``budget``'s node cap so one hard instance
    cannot starve the rest; a row that runs out is marked inconclusive.
    """
    family, predict = FORMULAS[formula]
    cap = (budget or SearchBudget()).max_nodes
    rows = []
    for p in params:
        g = generate(FamilySpec(family, (p,)))
        pmin, pmax = predict(p)
        try:
            rr = rainbow_range(g, SearchBudget(cap), n_jobs)
            rows.append(FamilyRow((p,), g.n, pmin, rr.r_min, pmax, rr.r_max, rr.exact))
        except BudgetExceeded:
            rows.append(FamilyRow((p,), g.n, pmin, None, pmax, None, False))
    return FamilyCheck(formula, family, rows)


def verify_bipartite(specs: list[FamilySpec], budget: SearchBudget | None = None, n_jobs: int = 1) -> FamilyCheck:
    """Rows for bipartite family members: predicted r- = r+ = n."""
    cap = (budget or SearchBudget()).max_nodes
    rows = []
    family = specs[0].family if specs else ""
    for spec in specs:
        g = generate(spec)
        try:
            rr = rainbow_range(g, SearchBudget(cap), n_jobs)
            rows.append(FamilyRow(spec.params, g.n, g.n, rr.r_min, g.n, rr.r_max, rr.exact))
        except BudgetExceeded:
            rows.append(FamilyRow(spec.params, g.n, g.n, None, g.n, None, False))
    return FamilyCheck("thm1.2", family, rows)
