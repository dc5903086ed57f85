"""Graph coloring: exact chromatic number and the iterative peeling approximation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .branching import RunStats, SolveConfig, boosted_is
from .errors import ContractViolation
from .graph import Graph, iter_bits, lowest_bit, to_mask

OPTCOL_CAP = 20
BRUTEFORCE_CAP = 12


def _solve_r0() -> float:
    # r * log2(r) = 1 makes ln(r log2 r) vanish; above it r / ln(r log2 r) >= 1 holds.
    return brentq(lambda r: r * math.log2(r) - 1.0, 1.0 + 1e-12, 4.0, xtol=1e-14)


R0 = _solve_r0()


@dataclass
class Coloring:
    classes: list[frozenset[int]] = field(default_factory=list)

    def __len__(self):
        return len(self.classes)

    @property
    def num_colors(self) -> int:
        return len(self.classes)

    def color_map(self) -> dict[int, int]:
        return {v: c for c, cls in enumerate(self.classes) for v in cls}


def verify_coloring(G: Graph, coloring: Coloring) -> bool:
    seen = 0
    for cls in coloring.classes:
        mask = to_mask(cls)
        if mask & seen:
            return False
        if not G.is_independent(mask):
            return False
        seen |= mask
    return seen == G.alive


def _independent_set_counts(adj: list[int]) -> np.ndarray:
    """``out[S]`` = number of independent subsets of ``S`` (empty set included)."""
    counts = np.ones(1, dtype=np.int64)
    for i, nbrs in enumerate(adj):
        lower = np.arange(1 << i, dtype=np.int64)
        keep = ~np.int64(nbrs & ((1 << i) - 1))
        counts = np.concatenate([counts, counts + counts[lower & keep]])
    return counts


def _signed_terms(adj: list[int]) -> list[tuple[int, int]]:
    """Pairs ``(i, c)``: sum of ``(-1)**|V\\S|`` over subsets S whose count is ``i``."""
    n = len(adj)
    counts = _independent_set_counts(adj)
    # n - |S| has the parity of n + |S|
    sign = np.where(((n + _popcounts(n)) % 2) == 0, 1, -1).astype(np.int64)
    values, inverse = np.unique(counts, return_inverse=True)
    coef = np.zeros(len(values), dtype=np.int64)
    np.add.at(coef, inverse, sign)
    return [(int(v), int(c)) for v, c in zip(values, coef) if c]


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        pc = np.concatenate([pc, pc + 1])
    return pc


def _covering_tuples(terms, k: int) -> int:
    """Number of ordered k-tuples of independent sets whose union is V."""
    return sum(c * v**k for v, c in terms)


def _colorable(adj: list[int], k: int) -> bool:
    if not adj:
        return True
    if k <= 0:
        return False
    return _covering_tuples(_signed_terms(adj), k) > 0


def chromatic_number(G: Graph) -> int:
    """chi of the alive part, via the inclusion-exclusion count of covering tuples."""
    H, _ = G.compact()
    if H.n == 0:
        return 0
    if H.n > OPTCOL_CAP:
        raise ContractViolation(f"optcol supports at most {OPTCOL_CAP} vertices, got {H.n}")
    terms = _signed_terms(H.adj)
    k = 1
    while _covering_tuples(terms, k) <= 0:
        k += 1
    return k


def _maximal_sets_containing(adj, within, v):
    """Maximal independent subsets of ``within`` that contain ``v``, larger first."""
    found = []

    def grow(chosen, cands):
        if not cands:
            # maximal iff nothing outside can still be added
            rest = within & ~chosen
            for u in iter_bits(rest):
                if not adj[u] & chosen:
                    return
            found.append(chosen)
            return
        u = lowest_bit(cands)
        grow(chosen | (1 << u), cands & ~(1 << u) & ~adj[u])
        grow(chosen, cands & ~(1 << u))

    grow(1 << v, within & ~(1 << v) & ~adj[v])
    found.sort(key=lambda m: -m.bit_count())
    return found


def optcol(G: Graph) -> Coloring:
    """An optimum coloring of the alive part of ``G``.

    Classes are peeled one at a time: a maximal independent set through the
    lowest remaining vertex is accepted when the rest is still colorable with
    one color fewer.  Every colorability test uses the same counting identity.
    """
    H, labels = G.compact()
    if H.n > OPTCOL_CAP:
        raise ContractViolation(f"optcol supports at most {OPTCOL_CAP} vertices, got {H.n}")
    remaining = (1 << H.n) - 1
    chi = chromatic_number(H)
    classes = []
    while remaining:
        v = lowest_bit(remaining)
        for cls in _maximal_sets_containing(H.adj, remaining, v):
            rest = H.induced_subgraph(remaining & ~cls)
            sub, _ = rest.compact()
            if _colorable(sub.adj, chi - 1):
                break
        else:
            raise AssertionError("no color class reduces the chromatic number")
        classes.append(frozenset(labels[u] for u in iter_bits(cls)))
        remaining &= ~cls
        chi -= 1
    coloring = Coloring(classes)
    if not verify_coloring(G, coloring):
        raise AssertionError("optcol produced an improper coloring")
    return coloring


def chromatic_bruteforce(G: Graph) -> int:
    """Smallest k admitting a proper k-coloring, by backtracking over assignments."""
    H, _ = G.compact()
    n = H.n
    if n > BRUTEFORCE_CAP:
        raise ContractViolation(f"brute-force coloring capped at {BRUTEFORCE_CAP} vertices, got {n}")
    if n == 0:
        return 0
    nbrs = [list(iter_bits(H.adj[v] & ((1 << v) - 1))) for v in range(n)]
    color = [-1] * n

    def assign(v, k, used):
        if v == n:
            return True
        for c in range(min(used + 1, k)):
            if all(color[u] != c for u in nbrs[v]):
                color[v] = c
                if assign(v + 1, k, max(used, c + 1)):
                    return True
        color[v] = -1
        return False

    k = 1
    while not assign(0, k, 0):
        k += 1
    return k


def peel_parameters(r: float) -> tuple[float, int]:
    """Branch denominator and degree threshold for the inner independent-set calls."""
    p = max(1.0, r / math.log(r * math.log2(r)))
    d = max(math.ceil(2 * p), 4)
    return p, d


def _class_seed(seed: int, c: int) -> int:
    return (seed + c * 0x9E3779B97F4A7C15) & ((1 << 64) - 1)


def chr_approx(G: Graph, r: float, seed: int, trials: int = 1):
    """Peel independent sets while at least ``n / (r log2 r)`` vertices remain,
    then color the rest optimally.  Returns ``(Coloring, RunStats)``.

    Each peel is a best-of-``trials`` randomized branching run with
    ``p = r / ln(r log2 r)`` and exact leaves.
    """
    if not r > R0:
        raise ContractViolation(f"r={r} must exceed r0={R0:.6f} (where r*log2(r) = 1)")
    n = G.num_alive()
    threshold = n / (r * math.log2(r))
    p, d = peel_parameters(r)
    stats = RunStats()
    classes = []
    remaining = G.alive
    while remaining and remaining.bit_count() >= threshold:
        cfg = SolveConfig(p=p, d=d, leaf="exact", seed=_class_seed(seed, len(classes)))
        found, run = boosted_is(G.induced_subgraph(remaining), r, cfg, trials=trials)
        stats.add(run)
        if not found:
            raise AssertionError("peeling step returned an empty class")
        classes.append(found)
        remaining &= ~to_mask(found)
    classes.extend(optcol(G.induced_subgraph(remaining)).classes)
    return Coloring(classes), stats


def chr_approx_wrapped(G: Graph, r: float, seed: int, trials: int = 1) -> Coloring:
    """Run :func:`chr_approx` with ``r - 2`` so the color bound reads ``r * chi``."""
    if not r - 2 > R0:
        raise ContractViolation(f"r={r} must exceed r0 + 2 = {R0 + 2:.6f}")
    coloring, _ = chr_approx(G, r - 2, seed, trials)
    return coloring
