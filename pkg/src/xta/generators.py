"""Seeded random instance generators.

All generators draw from ``random.Random(seed)``, whose sequence is stable
across platforms and Python releases for a fixed integer seed.
"""

from __future__ import annotations

import random

from .errors import ContractViolation
from .graph import Graph, Hypergraph, to_mask


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ContractViolation(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(n, adj)


def gen_planted_is(n: int, s: int, p: float, seed: int) -> tuple[Graph, frozenset[int]]:
    """G(n, p) with every pair inside ``{0..s-1}`` removed."""
    if not 0 <= s <= n:
        raise ContractViolation(f"planted size {s} not in 0..{n}")
    if not 0.0 <= p <= 1.0:
        raise ContractViolation(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if v < s:
                continue
            if rng.random() < p:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(n, adj), frozenset(range(s))


def gen_hypergraph(n: int, m: int, k: int, seed: int, min_size: int = 2) -> Hypergraph:
    """``m`` edges, each a uniform random vertex subset of size uniform in ``[min_size, k]``."""
    if k < 1 or min_size < 1 or min_size > k or k > n:
        raise ContractViolation(f"need 1 <= min_size <= k <= n, got min_size={min_size} k={k} n={n}")
    rng = random.Random(seed)
    edges = []
    for _ in range(m):
        size = rng.randint(min_size, k)
        edges.append(to_mask(rng.sample(range(n), size)))
    return Hypergraph(n, edges, k=k)
