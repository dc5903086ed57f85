"""Command-line front end.

Exit codes: 0 success, 2 unreadable or malformed input (and usage errors),
3 contract violations such as out-of-range parameters.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import bench
from .branching import (
    SolveConfig,
    boosted_is,
    branch_is,
    compute_lambda,
    node_bound,
    partition_baseline_is,
)
from .coloring import R0, chr_approx, chromatic_bruteforce, chromatic_number, verify_coloring
from .errors import ContractViolation, ParseError, XtaError
from .fglss import emit_csp, emit_labels, fglss_reduce, gen_random_csp, parse_csp
from .generators import gen_gnp, gen_hypergraph, gen_planted_is
from .io import emit_dimacs_col, emit_hypergraph, parse_cover_instance, parse_dimacs_col
from .leaf import exact_mis, exact_vc
from .vertex_cover import sparsify_vc, vc_pipeline

EXIT_INPUT = 2
EXIT_CONTRACT = 3

CSP_FORMAT_HELP = """\
CSP text format (1-based variables):
  p csp <n_vars> <m>
  s v1 .. vq     scope of the next predicate
  a b1 .. bq     accepting assignment, one line each
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _read(path) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _elapsed_us(start: float) -> int:
    return int((time.perf_counter() - start) * 1e6)


def _emit_record(rec: bench.BenchRecord, extra: dict, fmt: str):
    if fmt == "csv":
        sys.stdout.write(bench.records_to_csv([rec]))
    else:
        out = {k: v for k, v in vars(rec).items()}
        out.update(extra)
        sys.stdout.write(json.dumps(out, sort_keys=True) + "\n")


def _base_record(args, solver, n):
    return bench.BenchRecord(
        instance_id=args.input, generator="file", gen_params=json.dumps({"path": args.input}), solver=solver, n=n
    )


def cmd_gen(args):
    kind = args.kind
    if kind == "gnp":
        G = gen_gnp(args.n, args.p, args.seed)
        text = emit_dimacs_col(G, [f"gnp n={args.n} p={args.p} seed={args.seed}"])
    elif kind == "planted":
        if args.s is None:
            raise ContractViolation("planted generator needs --s")
        G, planted = gen_planted_is(args.n, args.s, args.p, args.seed)
        text = emit_dimacs_col(
            G,
            [
                f"planted n={args.n} s={args.s} p={args.p} seed={args.seed}",
                "planted " + " ".join(str(v + 1) for v in sorted(planted)),
            ],
        )
    elif kind == "hyper":
        H = gen_hypergraph(args.n, args.m, args.k, args.seed)
        text = emit_hypergraph(H, [f"hyper n={args.n} m={args.m} k={args.k} seed={args.seed}"])
    else:
        phi = gen_random_csp(args.n, args.m, args.arity, args.acc, args.seed)
        text = emit_csp(phi)
    _write(args.out, text)
    return 0


def cmd_solve_is(args):
    G = parse_dimacs_col(_read(args.input))
    n = G.num_alive()
    start = time.perf_counter()
    r = args.r
    rec = _base_record(args, "", n)
    extra = {}
    if args.baseline == "partition":
        block_count = int(r)
        if block_count != r:
            raise ContractViolation("--baseline partition needs an integer --r")
        found = partition_baseline_is(G, block_count)
        rec.solver, rec.r = "partition_is", r
        rec.nodes = rec.leaves = block_count
        rec.mean_nodes = float(block_count)
    else:
        p = args.p if args.p is not None else r
        d = args.d if args.d is not None else max(1, math.ceil(2 * p))
        cfg = SolveConfig(p=p, d=d, leaf=args.leaf, trials=args.trials, seed=args.seed)
        if args.trials == 1:
            found, stats = branch_is(G, cfg)
            rec.solver = "branch_is"
        else:
            found, stats = boosted_is(G, r, cfg, trials=args.trials)
            rec.solver, rec.r = "boosted_is", r
        rec.p, rec.d, rec.leaf, rec.trials, rec.seed = p, d, args.leaf, args.trials, args.seed
        rec.nodes, rec.leaves = stats.nodes, stats.leaves
        rec.mean_nodes = stats.nodes / args.trials
        extra["include_branches_taken"] = stats.include_branches_taken
        extra["certified_ratio"] = float(cfg.certified_ratio())
        if d >= 2 * p:
            extra["lambda"] = compute_lambda(d, p)
            rec.node_bound = node_bound(n, d, p)
            rec.bound_ok = rec.mean_nodes <= rec.node_bound
    rec.elapsed_us = _elapsed_us(start)
    rec.result_size = len(found)
    if n <= bench.IS_ORACLE_CAP or args.force_oracle:
        rec.oracle = len(exact_mis(G))
        rec.ratio = bench._ratio(rec.result_size, rec.oracle, minimize=False)
    extra["vertices"] = sorted(v + 1 for v in found)
    _emit_record(rec, extra, args.format)
    return 0


def cmd_solve_coloring(args):
    G = parse_dimacs_col(_read(args.input))
    n = G.num_alive()
    start = time.perf_counter()
    if not args.r - 2 > R0:
        raise ContractViolation(f"--r must exceed r0 + 2 = {R0 + 2:.6f}")
    coloring, stats = chr_approx(G, args.r - 2, args.seed, args.trials)
    if not verify_coloring(G, coloring):
        raise AssertionError("improper coloring")
    elapsed = _elapsed_us(start)
    rec = _base_record(args, "chr_approx_wrapped", n)
    rec.r, rec.seed, rec.trials = args.r, args.seed, args.trials
    rec.elapsed_us = elapsed
    rec.result_size = len(coloring)
    rec.nodes, rec.leaves = stats.nodes, stats.leaves
    if n <= bench.CHI_ORACLE_CAP:
        rec.oracle = chromatic_bruteforce(G)
    elif args.force_oracle:
        rec.oracle = chromatic_number(G)
    rec.ratio = bench._ratio(rec.result_size, rec.oracle, minimize=True)
    extra = {"classes": [sorted(v + 1 for v in cls) for cls in coloring.classes]}
    _emit_record(rec, extra, args.format)
    return 0


def cmd_solve_vc(args):
    H = parse_cover_instance(_read(args.input))
    start = time.perf_counter()
    family = sparsify_vc(H, args.d)
    cover = vc_pipeline(H, args.d, args.leaf, family=family)
    elapsed = _elapsed_us(start)
    rec = _base_record(args, "vc_pipeline", H.n)
    rec.d, rec.leaf = args.d, args.leaf
    rec.elapsed_us = elapsed
    rec.result_size = len(cover)
    rec.nodes = rec.leaves = family.branch_count
    if H.n <= bench.VC_ORACLE_CAP or args.force_oracle:
        rec.oracle = len(exact_vc(H))
        rec.ratio = bench._ratio(rec.result_size, rec.oracle, minimize=True)
    extra = {"cover": sorted(v + 1 for v in cover), "branches": family.branch_count, "k": H.k}
    _emit_record(rec, extra, args.format)
    return 0


def cmd_reduce_fglss(args):
    phi = parse_csp(_read(args.input))
    fg = fglss_reduce(phi)
    _write(args.out, emit_dimacs_col(fg.graph, [f"fglss of {args.input}: {phi.m} predicates"]))
    if args.labels:
        _write(args.labels, emit_labels(fg))
    return 0


def cmd_bench(args):
    entries = bench.load_suite(_read(args.suite).decode())
    records = bench.run_suite(entries, force_oracle=args.force_oracle)
    _write(args.out, bench.records_to_csv(records))
    summary = bench.summarize(records)
    print(
        f"{summary['rows']} rows, {summary['errors']} errors, "
        f"{summary['bound_violations']}/{summary['bound_checked']} node-bound violations",
        file=sys.stderr,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="xta",
        description="Exponential-time approximation solvers for independent set, coloring and hypergraph vertex cover.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate an instance", epilog=CSP_FORMAT_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    g.add_argument("kind", choices=["gnp", "planted", "hyper", "csp"])
    g.add_argument("--n", type=int, required=True, help="vertices (or variables for csp)")
    g.add_argument("--p", type=float, default=0.5, help="edge probability")
    g.add_argument("--s", type=int, help="planted independent set size")
    g.add_argument("--m", type=int, default=0, help="edges (hyper) or predicates (csp)")
    g.add_argument("--k", type=int, default=3, help="maximum hyperedge size")
    g.add_argument("--arity", type=int, default=2)
    g.add_argument("--acc", type=int, default=3, help="accepting assignments per predicate")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve-is", help="randomized branching for maximum independent set")
    s.add_argument("--input", required=True, help="DIMACS .col file")
    s.add_argument("--r", type=float, default=2.0,
                   help="target ratio; default for --p, and block count for --baseline partition")
    s.add_argument("--p", type=float, help="include-branch probability is 1/P (default R)")
    s.add_argument("--d", type=int, help="branch while some degree >= D (default ceil(2P))")
    s.add_argument("--leaf", choices=["exact", "greedy", "enum"], default="exact")
    s.add_argument("--trials", type=int, default=1, help="best of T runs; trial t uses seed S xor t")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--baseline", choices=["none", "partition"], default="none")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--force-oracle", action="store_true", help="compute the exact optimum above the size cap")
    s.set_defaults(func=cmd_solve_is)

    c = sub.add_parser(
        "solve-coloring",
        help="iterative peeling coloring with at most r*chi colors (whp)",
        description=f"Runs the peeling coloring with parameter r-2. Requires r - 2 > r0 = {R0:.6f}, "
        "the root of r*log2(r) = 1.",
    )
    c.add_argument("--input", required=True)
    c.add_argument("--r", type=float, default=6.0)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=1, help="best-of-T for each peeled class")
    c.add_argument("--format", choices=["json", "csv"], default="json")
    c.add_argument("--force-oracle", action="store_true")
    c.set_defaults(func=cmd_solve_coloring)

    v = sub.add_parser(
        "solve-vc",
        help="sparsify-then-solve hypergraph vertex cover",
        description="Branches on vertices of degree >= D until every residual has degree < D, "
        "then solves each residual. For context: the analytic recipe sets the sparsification "
        "parameter eps = k/(kr)^(kr), giving residual degree at most (k/eps)^(3k); here D is set directly.",
    )
    v.add_argument("--input", required=True, help="'p hedge' or DIMACS .col file")
    v.add_argument("--d", type=int, default=4)
    v.add_argument("--leaf", choices=["exact", "matching"], default="exact")
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.add_argument("--force-oracle", action="store_true")
    v.set_defaults(func=cmd_solve_vc)

    f = sub.add_parser("reduce-fglss", help="CSP to conflict graph", epilog=CSP_FORMAT_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    f.add_argument("--input", required=True)
    f.add_argument("--out", default="-")
    f.add_argument("--labels", help="write '<vertex> <predicate> <bits>' lines here")
    f.set_defaults(func=cmd_reduce_fglss)

    b = sub.add_parser("bench", help="run a JSON-lines suite and write CSV",
                       description="Suite lines are JSON objects; list values are grid axes. "
                       "XTA_THREADS caps worker processes (0 = one per CPU, unset = 1).")
    b.add_argument("--suite", required=True)
    b.add_argument("--out", default="-")
    b.add_argument("--force-oracle", action="store_true")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError, UnicodeDecodeError) as exc:
        print(f"xta: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContractViolation as exc:
        print(f"xta: contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except XtaError as exc:
        print(f"xta: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
