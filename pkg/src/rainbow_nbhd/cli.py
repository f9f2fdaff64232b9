"""``rnn``: rainbow neighbourhood numbers from the command line.

Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 node budget
exhausted (a partial report is still printed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from rainbow_nbhd import __version__
from rainbow_nbhd.colouring import BudgetExceeded, Colouring, SearchBudget, clique_number, convention_colourings
from rainbow_nbhd.families import FamilySpec, expand_ranges, generate, random_corpus, random_trees
from rainbow_nbhd.graph import Graph, is_connected
from rainbow_nbhd.io import GraphFormatError, emit_dimacs, emit_edge_list, emit_graph6, read_graphs
from rainbow_nbhd.rainbow import (
    FORMULAS,
    FamilyCheck,
    Verdict,
    check_clique_bound,
    check_join_lemma,
    check_lemma_3_2,
    check_theorem_1_1,
    check_theorem_1_2,
    check_theorem_2_1,
    format_table,
    rainbow_count,
    rainbow_range,
    verify_family,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

GRAPH_CHECKS = ("thm1.1", "thm1.2", "lem1.3", "thm2.1", "lem3.2", "clique-bound")
VERIFY_IDS = GRAPH_CHECKS + tuple(FORMULAS)
DEFAULT_RANGES = {"prop2.3": (7, 13), "prop2.4": (7, 7), "prop2.5": (3, 5)}


class InputError(Exception):
    pass


def _int_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a..b', got {text!r}") from None


def _budget(args) -> SearchBudget:
    if args.budget is not None:
        return SearchBudget(args.budget)
    return SearchBudget.from_env()


def _max_nodes(args) -> int:
    return _budget(args).max_nodes


def load_graphs(args) -> list[Graph]:
    """Graphs from ``--gen`` specs and/or an input path (``-`` for stdin)."""
    graphs: list[Graph] = []
    for gen in args.gen or ():
        try:
            specs = expand_ranges(gen) if ".." in gen else [FamilySpec.parse(gen)]
        except ValueError as exc:
            raise InputError(f"bad --gen {gen!r}: {exc}") from None
        graphs += [generate(s) for s in specs]
    if args.input:
        if args.input == "-":
            text, name = sys.stdin.read(), "<stdin>"
        else:
            try:
                text, name = Path(args.input).read_text(), args.input
            except OSError as exc:
                raise InputError(str(exc)) from None
        try:
            parsed = read_graphs(text, args.format)
        except GraphFormatError as exc:
            raise InputError(f"{name}: {exc}") from None
        graphs += [g if g.label else g.relabel(f"{name}#{i}") for i, g in enumerate(parsed)]
    if args.require_connected:
        for g in graphs:
            if not is_connected(g):
                raise InputError(f"graph {g.label} is not connected")
    return graphs


def _report(args, command: str, payload, exact: bool, nodes: int | None, started: float) -> dict:
    """Run report envelope; ``nodes`` is None when rows carry their own budgets."""
    return {
        "tool": "rnn",
        "version": __version__,
        "command": command,
        "input": {"path": args.input, "gen": list(args.gen or ())},
        "budget": {"max_nodes": _max_nodes(args), "nodes_used": nodes},
        "wall_time": round(time.perf_counter() - started, 6),
        "exact": exact,
        "result": payload,
    }


def _emit_json(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _text_block(d: dict) -> str:
    width = max(map(len, d))
    return "\n".join(f"{k.ljust(width)}  {json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in d.items())


# -- invariants ---------------------------------------------------------------


def invariants_payload(g: Graph, budget: SearchBudget, n_jobs: int, witness: bool) -> dict:
    rr = rainbow_range(g, budget, n_jobs)
    out = {
        "label": g.label,
        "n": g.n,
        "m": g.m,
        "omega": clique_number(g, budget),
        "chi": rr.chi,
        "r_min": rr.r_min,
        "r_max": rr.r_max,
        "convention_value": rr.convention_value,
        "convention_counts": list(rr.convention_counts),
        "convention_unique": rr.convention_unique,
        "colourings_enumerated": rr.colourings_enumerated,
        "exact": rr.exact,
    }
    if witness:
        out["min_witness"] = rr.min_witness.to_dict()
        out["max_witness"] = rr.max_witness.to_dict()
    return out


def cmd_invariants(args) -> int:
    started = time.perf_counter()
    graphs = load_graphs(args)
    if not graphs:
        raise InputError("no input graph; give a path or --gen")
    payloads, nodes, code = [], 0, EXIT_OK
    for g in graphs:
        budget = _budget(args)
        try:
            payloads.append(invariants_payload(g, budget, args.threads, args.witness))
            if not payloads[-1]["exact"]:
                code = EXIT_BUDGET
        except BudgetExceeded as exc:
            payloads.append({"label": g.label, "n": g.n, "error": str(exc), "lower": exc.lower,
                             "upper": exc.upper, "exact": False})
            code = EXIT_BUDGET
        nodes += budget.nodes
    payload = payloads[0] if len(payloads) == 1 else payloads
    if args.json:
        _emit_json(_report(args, "invariants", payload, code == EXIT_OK, nodes, started))
    else:
        print("\n\n".join(_text_block(p) for p in payloads))
    return code


# -- colour ---------------------------------------------------------------------


def cmd_colour(args) -> int:
    started = time.perf_counter()
    graphs = load_graphs(args)
    if len(graphs) != 1:
        raise InputError(f"colour takes exactly one graph, got {len(graphs)}")
    g = graphs[0]
    budget = _budget(args)
    if args.maximize or args.minimize:
        rr = rainbow_range(g, budget, args.threads)
        chosen = [rr.max_witness if args.maximize else rr.min_witness]
        exact = rr.exact
        kind = "maximum" if args.maximize else "minimum"
    else:
        conv = convention_colourings(g, budget)
        chosen = conv.colourings if args.all else conv.colourings[:1]
        exact = conv.exact
        kind = "convention"
    reports = [rainbow_count(g, c).to_dict() for c in chosen]
    payload = {"label": g.label, "kind": kind, "colourings": reports}
    _emit_json(_report(args, "colour", payload, exact, budget.nodes, started))
    return EXIT_OK if exact else EXIT_BUDGET


# -- count ------------------------------------------------------------------------


def cmd_count(args) -> int:
    started = time.perf_counter()
    graphs = load_graphs(args)
    if len(graphs) != 1:
        raise InputError(f"count takes exactly one graph, got {len(graphs)}")
    g = graphs[0]
    raw = args.colouring
    if not raw.lstrip().startswith("{"):
        raw = Path(raw).read_text()
    try:
        c = Colouring.from_dict(json.loads(raw))
        report = rainbow_count(g, c)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad colouring: {exc}") from None
    payload = {"label": g.label, **report.to_dict()}
    if args.json:
        _emit_json(_report(args, "count", payload, True, 0, started))
    else:
        print(_text_block(payload))
    return EXIT_OK


# -- verify -------------------------------------------------------------------------


def _verify_corpus(args) -> list[Graph]:
    graphs = load_graphs(args)
    if (args.random or args.trees) and args.seed is None:
        raise InputError("--random/--trees need --seed")
    if args.random:
        graphs += random_corpus(args.random, args.seed, args.min_n, args.max_n)
    if args.trees:
        graphs += random_trees(args.trees, args.seed, 2, args.max_n)
    if not graphs:
        raise InputError("empty corpus; give --gen, --random, --trees or an input path")
    return graphs


def run_graph_check(check: str, g: Graph, max_nodes: int, n_jobs: int) -> Verdict:
    budget = SearchBudget(max_nodes)
    if check == "lem1.3":
        return check_join_lemma(g, budget, n_jobs)
    if check == "lem3.2":
        return check_lemma_3_2(g, budget)
    rr = rainbow_range(g, budget, n_jobs)
    if not rr.exact:
        raise ValueError("budget exhausted")
    fn = {
        "thm1.1": check_theorem_1_1,
        "thm1.2": check_theorem_1_2,
        "thm2.1": check_theorem_2_1,
        "clique-bound": check_clique_bound,
    }[check]
    return fn(g, rr, budget)


VERDICT_COLUMNS = ("label", "check", "applicable", "passed", "details")


def _verdict_cells(v: Verdict) -> list[str]:
    details = json.dumps(v.details, sort_keys=True, separators=(",", ":"))
    return [str(v.label), v.check, str(v.applicable).lower(), str(v.passed).lower(), details]


def cmd_verify(args) -> int:
    started = time.perf_counter()
    max_nodes = _max_nodes(args)
    if args.id in FORMULAS:
        odd_only = args.odd is not None or (args.range is None and args.id != "prop2.5")
        lo, hi = args.odd or args.range or DEFAULT_RANGES[args.id]
        params = [p for p in range(lo, hi + 1) if not odd_only or p % 2 == 1]
        if args.id == "prop2.4":
            params = [p for p in params if p >= 7]
        if not params:
            raise InputError("parameter range is empty for this formula")
        check: FamilyCheck = verify_family(args.id, params, SearchBudget(max_nodes), args.threads)
        payload = check.to_dict()
        exact, ok = check.exact, check.all_match
        text = check.to_table() if not args.csv else check.to_csv()
    else:
        verdicts, exact = [], True
        for g in _verify_corpus(args):
            try:
                verdicts.append(run_graph_check(args.id, g, max_nodes, args.threads))
            except (BudgetExceeded, ValueError) as exc:
                verdicts.append(Verdict(args.id, False, g.label, {"inconclusive": str(exc)}))
                exact = False
        ok = all(v.passed for v in verdicts)
        payload = {
            "check": args.id,
            "all_passed": ok,
            "rows": [v.to_dict() for v in verdicts],
        }
        cells = [_verdict_cells(v) for v in verdicts]
        if args.csv:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(VERDICT_COLUMNS)
            writer.writerows(cells)
            text = buf.getvalue()
        else:
            text = format_table(VERDICT_COLUMNS, cells)
    if args.json:
        _emit_json(_report(args, f"verify {args.id}", payload, exact, None, started))
    else:
        sys.stdout.write(text)
    if not exact:
        return EXIT_BUDGET
    return EXIT_OK if ok else EXIT_MISMATCH


# -- convert --------------------------------------------------------------------------

WRITERS = {"graph6": lambda g: emit_graph6(g) + "\n", "dimacs": emit_dimacs, "edges": emit_edge_list}


def cmd_convert(args) -> int:
    graphs = load_graphs(args)
    if not graphs:
        raise InputError("no input graph")
    if args.to != "graph6" and len(graphs) != 1:
        raise InputError(f"{args.to} holds one graph per document, got {len(graphs)}")
    sys.stdout.write("".join(WRITERS[args.to](g) for g in graphs))
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="graph file, or '-' for stdin")
    common.add_argument("--gen", action="append", metavar="FAMILY:PARAMS",
                        help="named family, e.g. cycle:7 or complete_bipartite:2,3 (repeatable)")
    common.add_argument("--format", choices=("auto", "graph6", "dimacs", "edges"), default="auto")
    common.add_argument("--json", action="store_true", help="emit a JSON run report")
    common.add_argument("--threads", type=int, default=1, help="search workers (results do not depend on it)")
    common.add_argument("--budget", type=int, default=None,
                        help="node budget per graph (default: $RNN_BUDGET or 10^8)")
    common.add_argument("--require-connected", action="store_true")

    parser = argparse.ArgumentParser(prog="rnn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rnn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="n, m, omega, chi, r-, r+ and convention value")
    p.add_argument("--witness", action="store_true", help="include min/max witness colourings")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("colour", parents=[common], help="a convention colouring and its rainbow report")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--all", action="store_true", help="every convention colouring")
    mode.add_argument("--maximize", action="store_true", help="a colouring attaining r+")
    mode.add_argument("--minimize", action="store_true", help="a colouring attaining r-")
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("count", parents=[common], help="rainbow report for a given colouring")
    p.add_argument("--colouring", required=True, help='JSON {"k": .., "assignment": [..]} or a path to one')
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common], help="check a stated result over families or a corpus")
    p.add_argument("id", choices=VERIFY_IDS)
    p.add_argument("--odd", type=_int_range, metavar="A..B", help="odd orders in range (prop2.3, prop2.4)")
    p.add_argument("--range", type=_int_range, metavar="A..B", help="orders in range (prop2.5)")
    p.add_argument("--random", type=int, default=0, metavar="N", help="N seeded random connected graphs")
    p.add_argument("--trees", type=int, default=0, metavar="N", help="N seeded random trees")
    p.add_argument("--seed", type=int)
    p.add_argument("--min-n", type=int, default=4)
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("convert", parents=[common], help="rewrite the input in another format")
    p.add_argument("--to", choices=tuple(WRITERS), required=True)
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1 and args.threads != -1:
        print("rnn: error: --threads must be >= 1 (or -1 for all cores)", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, GraphFormatError) as exc:
        print(f"rnn: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"rnn: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
