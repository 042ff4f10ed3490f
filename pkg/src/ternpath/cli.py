"""Command-line front end.

Every command prints one JSON document on stdout.  Exit codes: 0 success,
1 a verdict failed, 2 I/O / parse / configuration error, 3 the solver hit its
iteration cap without stabilizing.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .algebra import DEFAULT_GAMMA, AlgebraError, aggregate_all, check_all
from .graph import (
    DirectedWeightedGraph,
    GraphFormatError,
    build_window_graph,
    load_graph,
    walk_count,
    window_counts,
)
from .instances import resolve
from .paths import oracle_opt
from .separation import search_nondegenerate_ttgs, verify_separation
from .solver import GateError, InvariantError, iteration_bound_report, solve

EXIT_OK, EXIT_FAIL, EXIT_ERROR, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _value(alg, x):
    return "top" if x == alg.top else alg.render(x)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _graph_args(p, target=False):
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--source", type=int, default=0)
    if target:
        p.add_argument("--target", type=int, default=None,
                       help="single target vertex (default: every vertex)")


def _load(args):
    alg = resolve(args.alg)
    g = load_graph(args.graph, alg) if getattr(args, "graph", None) else None
    if g is not None:
        for v in (getattr(args, "source", 0), getattr(args, "target", None)):
            if v is not None and not 0 <= v < g.n:
                raise UsageError(f"vertex {v} out of range 0..{g.n - 1}")
    return alg, g


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    alg = resolve(args.alg)
    reports = check_all(alg, None, args.budget, args.seed)
    passed = all(r.passed for r in reports)
    _emit({
        "algebra": alg.name,
        "triple_system_only": alg.triple_system_only,
        "passed": passed,
        "reports": [r.to_json(alg.render) for r in reports],
    })
    return EXIT_OK if passed else EXIT_FAIL


def cmd_solve(args) -> int:
    alg, g = _load(args)
    try:
        val, trace = solve(g, args.source, alg, args.gamma, args.width, args.max_iters,
                           force=args.force, gate_budget=args.budget, parallel=args.parallel)
    except GateError as exc:
        _emit({"error": str(exc), "gate": [r.to_json(alg.render) for r in exc.reports]})
        return EXIT_FAIL
    except InvariantError as exc:
        _emit({"error": str(exc)})
        return EXIT_FAIL
    doc = {
        "algebra": alg.name,
        "source": args.source,
        "width": args.width,
        "valuation": [_value(alg, x) for x in val],
        "stabilized": trace.stabilized,
        "iterations": trace.observed,
        "windows_per_iteration": trace.windows_examined,
        "descending": trace.descending,
        "dag_bounds": iteration_bound_report(g, trace) if args.width == 2 else None,
    }
    _emit(doc)
    return EXIT_OK if trace.stabilized else EXIT_CAP


def _oracle_rows(args, alg, g):
    targets = [args.target] if args.target is not None else list(g.vertices)
    rows = []
    for t in targets:
        res = oracle_opt(alg, args.gamma, g, args.source, t, args.max_edges, args.width,
                         allow_revisits=args.revisits)
        rows.append((t, res))
    return rows


def cmd_oracle(args) -> int:
    alg, g = _load(args)
    rows = _oracle_rows(args, alg, g)
    _emit({
        "algebra": alg.name,
        "source": args.source,
        "width": args.width,
        "dag": g.is_dag(),
        "results": [
            {"target": t, "even_opt": _value(alg, r.even_opt), "odd_opt": _value(alg, r.odd_opt),
             "even_paths": r.even_paths, "odd_paths": r.odd_paths}
            for t, r in rows
        ],
    })
    return EXIT_OK


def cmd_compare(args) -> int:
    alg, g = _load(args)
    if not g.is_dag():
        print("warning: graph is cyclic; the oracle only enumerates simple paths",
              file=sys.stderr)
    try:
        val, trace = solve(g, args.source, alg, args.gamma, args.width, args.max_iters,
                           force=args.force, gate_budget=args.budget)
    except (GateError, InvariantError) as exc:
        _emit({"error": str(exc)})
        return EXIT_FAIL
    rows = []
    for t, r in _oracle_rows(args, alg, g):
        joined = aggregate_all(alg, [r.even_opt, r.odd_opt])
        rows.append({
            "vertex": t,
            "solve": _value(alg, val[t]),
            "even_opt": _value(alg, r.even_opt),
            "odd_opt": _value(alg, r.odd_opt) if r.odd_paths else None,
            "even_match": val[t] == r.even_opt,
            "all_paths_match": val[t] == joined,
        })
    matched = all(row["even_match"] for row in rows)
    _emit({
        "algebra": alg.name,
        "source": args.source,
        "dag": g.is_dag(),
        "stabilized": trace.stabilized,
        "even_match": matched,
        "rows": rows,
    })
    return EXIT_OK if matched else EXIT_FAIL


def cmd_windows(args) -> int:
    alg, g = _load(args)
    entries = []
    for width in args.width:
        if width < 2:
            raise UsageError("window width must be at least 2")
        if width == 2:
            formula = window_counts(g)
        else:
            formula = (walk_count(g, width - 1), walk_count(g, width))
        wg = build_window_graph(g, width)
        constructed = (len(wg.vertices), len(wg.arcs))
        entries.append({
            "width": width,
            "formula": {"vertices": formula[0], "arcs": formula[1]},
            "constructed": {"vertices": constructed[0], "arcs": constructed[1]},
            "agree": formula == constructed,
        })
    agree = all(e["agree"] for e in entries)
    _emit({
        "vertices": g.n,
        "edges": g.m,
        "max_degree": g.max_degree(),
        "edge_density": round(g.m / (g.n * g.n), 6),
        "arcs_per_edge": round(entries[0]["constructed"]["arcs"] / g.m, 6) if g.m else 0,
        "widths": entries,
        "agree": agree,
    })
    return EXIT_OK if agree else EXIT_FAIL


def cmd_separation(args) -> int:
    alg = resolve(args.op) if args.op else None
    result = verify_separation(alg, args.gamma)
    assoc, fact = result["associativity"], result["factorization"]
    holds = assoc.passed and not fact.witnesses
    _emit({
        "instance": alg.name if alg else "bool-f2",
        "associativity": assoc.to_json(),
        "factorization": fact.to_json(),
        "separation_holds": holds,
    })
    return EXIT_OK if holds else EXIT_FAIL


def cmd_search(args) -> int:
    budget = args.budget if args.budget is not None else 10_000
    report = search_nondegenerate_ttgs(args.size, budget, args.seed, args.parallel)
    _emit(report.to_json())
    return EXIT_OK


def nested_dag_family(n: int, steps: int, seed: int):
    """Random DAGs on ``n`` vertices, each containing the previous one's edges."""
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    weights = {p: rng.randint(0, 9) for p in pairs}
    sizes = sorted({max(1, round(len(pairs) * (i + 1) / steps)) for i in range(steps)})
    for m in sizes:
        yield DirectedWeightedGraph.from_edges(n, [(u, v, weights[(u, v)]) for u, v in pairs[:m]])


def cmd_bench(args) -> int:
    alg = resolve(args.alg)
    if alg.finite:
        raise UsageError("bench draws integer weights and runs on the min-plus instance only")
    rows, identity, monotone, last = [], True, True, -1
    for g in nested_dag_family(args.vertices, args.steps, args.seed):
        _, trace = solve(g, 0, alg, args.gamma, 2, args.max_iters, gate_budget=args.budget)
        arcs = window_counts(g)[1]
        identity &= all(w == arcs for w in trace.windows_examined)
        per_iter = trace.windows_examined[0]
        monotone &= per_iter >= last
        last = per_iter
        delta = g.max_degree()
        rows.append(f"{g.m},{delta},{g.m * delta},{per_iter},{trace.observed}")
    _emit({
        "vertices": args.vertices,
        "seed": args.seed,
        "csv_header": "m,max_degree,m_times_delta,windows_per_iteration,iterations",
        "rows": rows,
        "counter_identity": identity,
        "windows_nondecreasing": monotone,
    })
    return EXIT_OK if identity and monotone else EXIT_FAIL


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ternpath", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alg", default="minplus",
                        help="minplus | boolf2 | table:<path> (default: minplus)")
    common.add_argument("--gamma", default=DEFAULT_GAMMA)
    common.add_argument("--budget", type=_positive, default=None,
                        help="sample budget for axiom checks (default 1000) or the size-3 "
                             "search (default 10000)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--parallel", action="store_true")

    def solving(p):
        p.add_argument("--max-iters", type=_positive, default=None)
        p.add_argument("--force", action="store_true",
                       help="skip the ordered-axiom gate")

    def oracle(p):
        p.add_argument("--max-edges", type=_positive, default=None)
        p.add_argument("--revisits", action="store_true",
                       help="enumerate walks (vertex revisits allowed) up to --max-edges")

    p = sub.add_parser("check", parents=[common], help="run every axiom checker")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common], help="relaxation to a fixed point")
    _graph_args(p)
    p.add_argument("--width", type=int, default=2)
    solving(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", parents=[common], help="brute-force path aggregation")
    _graph_args(p, target=True)
    p.add_argument("--width", type=int, default=2)
    oracle(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", parents=[common], help="solver vs brute-force oracle")
    _graph_args(p, target=True)
    p.add_argument("--width", type=int, default=2)
    solving(p)
    oracle(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("windows", parents=[common], help="window-graph sizes vs formulas")
    p.add_argument("--graph", required=True)
    p.add_argument("--width", type=int, nargs="+", default=[2])
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("separation", parents=[common], help="separation check on the F2 instance")
    p.add_argument("--op", default=None, help="table:<path> to test instead of the F2 instance")
    p.set_defaults(func=cmd_separation)

    p = sub.add_parser("search", parents=[common], help="finite TTGS model search")
    p.add_argument("--size", type=int, default=2)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bench", parents=[common], help="window growth over a nested DAG family")
    p.add_argument("--vertices", type=_positive, default=10)
    p.add_argument("--steps", type=_positive, default=8)
    p.add_argument("--max-iters", type=_positive, default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    if args.command != "search" and args.budget is None:
        args.budget = 1000
    try:
        return args.func(args)
    except (OSError, GraphFormatError, AlgebraError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit({"error": str(exc)})
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
