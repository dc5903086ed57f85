"""Randomized sparsifying branching for maximum independent set.

While some vertex ``v`` has degree at least ``d``, the search always explores
the branch that discards ``v`` and, with probability ``1/p``, also the branch
that takes ``v`` and discards its neighbors.  Once every degree is below ``d``
the remaining graph goes to a leaf solver.  With a leaf of ratio ``rho`` on
degree ``d-1`` graphs the expected output is at least
``alpha / max(p, rho)``, and the expected number of recursive calls is at
most ``2 ** (lam * n)`` with ``lam = log2(4d/p) / d`` whenever ``d >= 2p``.
"""

from __future__ import annotations

import hashlib
import math
import struct
import time
from dataclasses import asdict, dataclass, replace
from fractions import Fraction

from .errors import ContractViolation
from .graph import Graph, from_mask, iter_bits
from .leaf import _mis_mask, get_leaf_solver

_U64 = (1 << 64) - 1


class PreconditionError(ContractViolation):
    pass


@dataclass(frozen=True)
class SolveConfig:
    p: float = 2.0
    d: int = 4
    leaf: str = "exact"
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if not self.p >= 1:
            raise ContractViolation(f"branch denominator p must be >= 1, got {self.p}")
        if self.d < 1:
            raise ContractViolation(f"degree threshold d must be >= 1, got {self.d}")
        if self.trials < 1:
            raise ContractViolation(f"trials must be >= 1, got {self.trials}")
        get_leaf_solver(self.leaf)

    def certified_ratio(self) -> Fraction:
        """Ratio guaranteed in expectation: ``max(p, rho_leaf(d - 1))``."""
        rho = get_leaf_solver(self.leaf).advertised_ratio(self.d - 1)
        return max(Fraction(self.p), rho)


@dataclass
class RunStats:
    nodes: int = 0
    leaves: int = 0
    include_branches_taken: int = 0
    elapsed: float = 0.0

    def add(self, other: RunStats) -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.include_branches_taken += other.include_branches_taken
        self.elapsed += other.elapsed

    def counters(self) -> dict:
        """Everything except wall time; equal for equal seeds."""
        out = asdict(self)
        del out["elapsed"]
        return out


class BranchRng:
    """Counter-based coin source.

    The coin at a branching node is a pure function of
    ``(seed, stream, node index)``, so results never depend on evaluation
    order or on how trials are scheduled.
    """

    def __init__(self, seed: int, stream: int = 0):
        self.seed = seed & _U64
        self.stream = stream & _U64

    def u64(self, node: int) -> int:
        digest = hashlib.blake2b(
            struct.pack("<QQQ", self.seed, self.stream, node & _U64), digest_size=8
        ).digest()
        return int.from_bytes(digest, "little")

    def coin(self, node: int, threshold: int) -> bool:
        return self.u64(node) < threshold


def include_threshold(p: float) -> int:
    """``floor(2**64 / p)``: a 64-bit draw below it has probability ``1/p`` up to 2**-64."""
    return int(Fraction(1 << 64) / Fraction(p))


def compute_lambda(d: int, p: float) -> float:
    if d < 2 * p:
        raise PreconditionError(f"d={d} < 2p={2 * p}: the node bound needs d >= 2p")
    return math.log2(4 * d / p) / d


def node_bound(n: int, d: int, p: float) -> float:
    return 2.0 ** (compute_lambda(d, p) * n)


def _branch(adj, alive, d, threshold, leaf, rng, stats, cache):
    node = stats.nodes
    stats.nodes += 1
    pivot = -1
    pivot_deg = -1
    for v in iter_bits(alive):
        deg = (adj[v] & alive).bit_count()
        if deg > pivot_deg:
            pivot, pivot_deg = v, deg
    if pivot_deg < d:
        stats.leaves += 1
        if cache is None:
            return leaf.solve_mask(adj, alive)
        hit = cache.get(alive)
        if hit is None:
            hit = cache[alive] = leaf.solve_mask(adj, alive)
        return hit
    bit = 1 << pivot
    take = rng.coin(node, threshold)
    without = _branch(adj, alive & ~bit, d, threshold, leaf, rng, stats, cache)
    if take:
        stats.include_branches_taken += 1
        with_v = _branch(adj, alive & ~bit & ~adj[pivot], d, threshold, leaf, rng, stats, cache)
        with_v |= bit
        if with_v.bit_count() > without.bit_count():
            return with_v
    return without


def branch_is(G: Graph, cfg: SolveConfig, rng: BranchRng | None = None, leaf_cache=None):
    """One run of the randomized branching; returns ``(vertex set, RunStats)``.

    ``leaf_cache`` may be a dict shared by runs on the same graph and leaf
    solver; leaf answers depend only on the alive mask, so sharing changes
    timing, never results or counters.
    """
    if rng is None:
        rng = BranchRng(cfg.seed)
    leaf = get_leaf_solver(cfg.leaf)
    stats = RunStats()
    start = time.perf_counter()
    mask = _branch(G.adj, G.alive, cfg.d, include_threshold(cfg.p), leaf, rng, stats, leaf_cache)
    stats.elapsed = time.perf_counter() - start
    return from_mask(mask), stats


def trial_rng(seed: int, trial: int) -> BranchRng:
    return BranchRng(seed ^ trial, trial)


def boosted_is(G: Graph, r: float, cfg: SolveConfig, trials: int | None = None, leaf_cache=None):
    """Best of several independent runs of :func:`branch_is`.

    Trial ``t`` uses seed ``cfg.seed ^ t``.  ``trials`` defaults to
    ``ceil(3 r)``.  Ties keep the earliest trial.
    """
    if trials is None:
        trials = max(1, math.ceil(3 * r))
    if trials < 1:
        raise ContractViolation("trials must be >= 1")
    if leaf_cache is None and trials > 1:
        leaf_cache = {}
    total = RunStats()
    best = None
    for t in range(trials):
        found, stats = branch_is(G, cfg, trial_rng(cfg.seed, t), leaf_cache)
        total.add(stats)
        if best is None or len(found) > len(best):
            best = found
    return best, total


def boosted_prefix_sizes(G: Graph, cfg: SolveConfig, trials: int) -> list[int]:
    """Size of the best set after each trial of the boosted schedule."""
    sizes = []
    best = 0
    cache = {}
    for t in range(trials):
        found, _ = branch_is(G, cfg, trial_rng(cfg.seed, t), cache)
        best = max(best, len(found))
        sizes.append(best)
    return sizes


def partition_blocks(vertices: list[int], r: int) -> list[list[int]]:
    q, extra = divmod(len(vertices), r)
    blocks = []
    start = 0
    for i in range(r):
        size = q + (1 if i < extra else 0)
        blocks.append(vertices[start : start + size])
        start += size
    return blocks


def partition_baseline_is(G: Graph, r: int) -> frozenset[int]:
    """Split into ``r`` contiguous blocks, solve each exactly, keep the largest.

    Some block holds at least ``alpha / r`` vertices of a maximum independent
    set, which bounds the ratio by ``r``.
    """
    vertices = G.vertices()
    if not 1 <= r <= max(len(vertices), 1):
        raise ContractViolation(f"block count r={r} not in 1..{len(vertices)}")
    best = 0
    for block in partition_blocks(vertices, r):
        alive = 0
        for v in block:
            alive |= 1 << v
        found = _mis_mask(G.adj, alive)
        if found.bit_count() > best.bit_count():
            best = found
    return from_mask(best)


def with_seed(cfg: SolveConfig, seed: int) -> SolveConfig:
    return replace(cfg, seed=seed)
