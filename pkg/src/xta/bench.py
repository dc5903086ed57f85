"""Benchmark suites: instance/config grids in, one CSV row per (instance, config) out.

A suite file holds one JSON object per line::

    {"id": "sparse", "instance": {"gen": "gnp", "n": 25, "p": 0.3, "seed": [1, 2, 3]},
     "solver": "branch_is", "config": {"p": 4, "d": 8, "leaf": "exact"}}

Any list value inside ``instance`` or ``config`` (and ``solver`` itself) is
a grid axis; the row set is the cartesian product.  Generators: ``gnp``
(n, p, seed), ``planted`` (n, s, p, seed), ``hyper`` (n, m, k, seed),
``csp`` (n_vars, m, arity, acc, seed; solved through its FGLSS graph) and
``file`` (path; DIMACS or ``p hedge``).

Solvers and the config keys they read:

=====================  ===========================================
``branch_is``          p, d, leaf, seed  (one run)
``boosted_is``         r, p, d, leaf, seed, trials (default ceil(3r))
``partition_is``       r
``greedy_is``          none
``exact_mis``          none
``chr_approx``         r, seed, trials
``chr_approx_wrapped`` r, seed, trials
``vc_pipeline``        d, leaf (exact | matching)
=====================  ===========================================
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from . import coloring as col
from .branching import SolveConfig, boosted_is, branch_is, node_bound, partition_baseline_is
from .errors import ContractViolation, XtaError
from .fglss import fglss_reduce, gen_random_csp
from .generators import gen_gnp, gen_hypergraph, gen_planted_is
from .graph import Graph, Hypergraph
from .io import parse_cover_instance, parse_dimacs_col
from .leaf import exact_mis, exact_vc, greedy_is
from .vertex_cover import sparsify_vc, vc_pipeline

IS_ORACLE_CAP = 25
VC_ORACLE_CAP = 25
CHI_ORACLE_CAP = 12

IS_SOLVERS = {"branch_is", "boosted_is", "partition_is", "greedy_is", "exact_mis"}
COLORING_SOLVERS = {"chr_approx", "chr_approx_wrapped"}
VC_SOLVERS = {"vc_pipeline"}


@dataclass
class BenchRecord:
    instance_id: str
    generator: str
    gen_params: str
    solver: str
    r: float | None = None
    p: float | None = None
    d: int | None = None
    leaf: str | None = None
    trials: int | None = None
    seed: int | None = None
    n: int | None = None
    result_size: int | None = None
    oracle: int | None = None
    ratio: float | None = None
    planted: int | None = None
    nodes: int | None = None
    mean_nodes: float | None = None
    leaves: int | None = None
    node_bound: float | None = None
    bound_ok: bool | None = None
    elapsed_us: int | None = None
    error: str | None = None

    def to_row(self) -> dict:
        row = {}
        for k, v in asdict(self).items():
            if v is None:
                row[k] = ""
            elif isinstance(v, bool):
                row[k] = "true" if v else "false"
            elif isinstance(v, float):
                row[k] = repr(v)
            else:
                row[k] = str(v)
        return row

    @classmethod
    def from_row(cls, row: dict) -> BenchRecord:
        kwargs = {}
        for f in fields(cls):
            raw = row.get(f.name, "")
            if raw == "":
                kwargs[f.name] = None if f.name not in ("instance_id", "generator", "gen_params", "solver") else ""
            elif f.type in ("int | None",):
                kwargs[f.name] = int(raw)
            elif f.type in ("float | None",):
                kwargs[f.name] = float(raw)
            elif f.type in ("bool | None",):
                kwargs[f.name] = raw == "true"
            else:
                kwargs[f.name] = raw
        return cls(**kwargs)


CSV_FIELDS = [f.name for f in fields(BenchRecord)]


def _grid(obj: dict):
    keys = list(obj)
    axes = [v if isinstance(v, list) else [v] for v in obj.values()]
    for combo in itertools.product(*axes):
        yield dict(zip(keys, combo))


def expand_suite(entries) -> list[tuple[str, dict, str, dict]]:
    """Flatten suite entries into ``(instance_id, instance, solver, config)`` jobs."""
    jobs = []
    for idx, entry in enumerate(entries):
        base_id = str(entry.get("id", f"row{idx}"))
        solvers = entry.get("solver", "branch_is")
        solvers = solvers if isinstance(solvers, list) else [solvers]
        for inst in _grid(entry.get("instance", {})):
            varying = [k for k, v in entry.get("instance", {}).items() if isinstance(v, list)]
            inst_id = base_id + "".join(f"/{k}={inst[k]}" for k in varying)
            for solver in solvers:
                for cfg in _grid(entry.get("config", {})):
                    jobs.append((inst_id, inst, solver, cfg))
    return jobs


def load_suite(text: str) -> list[dict]:
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            entries.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise XtaError(f"suite line {lineno}: {exc}") from None
    return entries


def build_instance(inst: dict):
    """Returns ``(kind, object, planted_size)`` with kind ``graph`` or ``hyper``."""
    gen = inst.get("gen")
    if gen == "gnp":
        return "graph", gen_gnp(inst["n"], inst["p"], inst.get("seed", 0)), None
    if gen == "planted":
        G, planted = gen_planted_is(inst["n"], inst["s"], inst["p"], inst.get("seed", 0))
        return "graph", G, len(planted)
    if gen == "hyper":
        H = gen_hypergraph(inst["n"], inst["m"], inst["k"], inst.get("seed", 0))
        return "hyper", H, None
    if gen == "csp":
        phi = gen_random_csp(inst["n_vars"], inst["m"], inst["arity"], inst["acc"], inst.get("seed", 0))
        return "graph", fglss_reduce(phi).graph, None
    if gen == "file":
        with open(inst["path"], "rb") as fh:
            data = fh.read()
        if b"hedge" in data:
            return "hyper", parse_cover_instance(data), None
        return "graph", parse_dimacs_col(data), None
    raise ContractViolation(f"unknown generator {gen!r}")


def _ratio(result, oracle, minimize):
    if oracle is None or result is None:
        return None
    if result == oracle:
        return 1.0
    if minimize:
        return result / oracle if oracle else math.inf
    return oracle / result if result else math.inf


def _elapsed_us(start):
    return int((time.perf_counter() - start) * 1e6)


def _as_graph(kind, obj):
    if kind == "graph":
        return obj
    if obj.k != 2 or any(e.bit_count() != 2 for e in obj.edges):
        raise ContractViolation("this solver needs a graph instance")
    edges = []
    for e in obj.edges:
        low = (e & -e).bit_length() - 1
        edges.append((low, (e ^ (1 << low)).bit_length() - 1))
    return Graph.from_edges(obj.n, edges)


def _as_hypergraph(kind, obj):
    return Hypergraph.from_graph(obj) if kind == "graph" else obj


def run_job(job, force_oracle=False) -> BenchRecord:
    inst_id, inst, solver, cfg = job
    params = {k: v for k, v in inst.items() if k != "gen"}
    rec = BenchRecord(
        instance_id=inst_id,
        generator=str(inst.get("gen", "")),
        gen_params=json.dumps(params, sort_keys=True, separators=(",", ":")),
        solver=solver,
    )
    try:
        kind, obj, planted = build_instance(inst)
        rec.planted = planted
        start = time.perf_counter()
        if solver in IS_SOLVERS:
            _run_is(rec, _as_graph(kind, obj), solver, cfg, force_oracle, start)
        elif solver in COLORING_SOLVERS:
            _run_coloring(rec, _as_graph(kind, obj), solver, cfg, force_oracle, start)
        elif solver in VC_SOLVERS:
            _run_vc(rec, _as_hypergraph(kind, obj), cfg, force_oracle, start)
        else:
            raise ContractViolation(f"unknown solver {solver!r}")
    except (XtaError, ValueError, KeyError, OSError, RecursionError) as exc:
        rec.error = f"{type(exc).__name__}: {exc}".replace("\n", " ")
    return rec


def _run_is(rec, G, solver, cfg, force_oracle, start):
    rec.n = G.num_alive()
    if solver in ("branch_is", "boosted_is"):
        r = cfg.get("r", 2)
        p = cfg.get("p", r)
        d = cfg.get("d", max(1, math.ceil(2 * p)))
        sc = SolveConfig(p=p, d=d, leaf=cfg.get("leaf", "exact"), seed=cfg.get("seed", 0))
        if solver == "branch_is":
            found, stats = branch_is(G, sc)
            trials = 1
        else:
            trials = cfg.get("trials", max(1, math.ceil(3 * r)))
            found, stats = boosted_is(G, r, sc, trials=trials)
            rec.r = r
        rec.p, rec.d, rec.leaf, rec.seed, rec.trials = p, d, sc.leaf, sc.seed, trials
        rec.nodes, rec.leaves = stats.nodes, stats.leaves
        rec.mean_nodes = stats.nodes / trials
        if d >= 2 * p:
            rec.node_bound = node_bound(rec.n, d, p)
            rec.bound_ok = rec.mean_nodes <= rec.node_bound
    elif solver == "partition_is":
        r = cfg.get("r", 2)
        found = partition_baseline_is(G, r)
        rec.r = r
        # one exact solve per block
        rec.nodes = rec.leaves = r
        rec.mean_nodes = float(r)
    elif solver == "greedy_is":
        found = greedy_is(G)
        rec.nodes = rec.leaves = 1
    else:
        found = exact_mis(G)
        rec.nodes = rec.leaves = 1
    rec.elapsed_us = _elapsed_us(start)
    if not G.is_independent(found):
        raise AssertionError(f"{solver} returned a non-independent set")
    rec.result_size = len(found)
    if rec.n <= IS_ORACLE_CAP or force_oracle:
        rec.oracle = len(exact_mis(G))
        rec.ratio = _ratio(rec.result_size, rec.oracle, minimize=False)


def _run_coloring(rec, G, solver, cfg, force_oracle, start):
    rec.n = G.num_alive()
    r = cfg.get("r", 6)
    seed = cfg.get("seed", 0)
    trials = cfg.get("trials", 1)
    rec.r, rec.seed, rec.trials = r, seed, trials
    if solver == "chr_approx":
        coloring, stats = col.chr_approx(G, r, seed, trials)
        rec.nodes, rec.leaves = stats.nodes, stats.leaves
    else:
        coloring = col.chr_approx_wrapped(G, r, seed, trials)
    rec.elapsed_us = _elapsed_us(start)
    if not col.verify_coloring(G, coloring):
        raise AssertionError(f"{solver} returned an improper coloring")
    rec.result_size = len(coloring)
    if rec.n <= CHI_ORACLE_CAP:
        rec.oracle = col.chromatic_bruteforce(G)
    elif force_oracle:
        rec.oracle = col.chromatic_number(G)
    rec.ratio = _ratio(rec.result_size, rec.oracle, minimize=True)


def _run_vc(rec, H, cfg, force_oracle, start):
    rec.n = H.n
    d = cfg.get("d", 4)
    leaf = cfg.get("leaf", "exact")
    rec.d, rec.leaf = d, leaf
    family = sparsify_vc(H, d)
    cover = vc_pipeline(H, d, leaf, family=family)
    rec.elapsed_us = _elapsed_us(start)
    if not H.is_cover(cover):
        raise AssertionError("vc_pipeline returned a non-cover")
    rec.result_size = len(cover)
    rec.nodes = rec.leaves = family.branch_count
    if rec.n <= VC_ORACLE_CAP or force_oracle:
        rec.oracle = len(exact_vc(H))
        rec.ratio = _ratio(rec.result_size, rec.oracle, minimize=True)


def worker_count() -> int:
    """Workers allowed by ``XTA_THREADS``: unset means 1, ``0`` means one per CPU."""
    raw = os.environ.get("XTA_THREADS")
    if raw is None or raw.strip() == "":
        return 1
    n = int(raw)
    if n <= 0:
        return os.cpu_count() or 1
    return n


def _run_job_forced(job):
    return run_job(job, force_oracle=True)


def run_suite(entries, force_oracle=False, workers=None) -> list[BenchRecord]:
    jobs = expand_suite(entries)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(jobs) <= 1:
        return [run_job(job, force_oracle) for job in jobs]
    fn = _run_job_forced if force_oracle else run_job
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order, so output order is the suite order
        return list(pool.map(fn, jobs))


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(rec.to_row())
    return buf.getvalue()


def csv_to_records(text: str) -> list[BenchRecord]:
    return [BenchRecord.from_row(row) for row in csv.DictReader(io.StringIO(text))]


def summarize(records) -> dict:
    checked = [r for r in records if r.bound_ok is not None]
    return {
        "rows": len(records),
        "errors": sum(1 for r in records if r.error),
        "bound_checked": len(checked),
        "bound_violations": sum(1 for r in checked if not r.bound_ok),
    }
