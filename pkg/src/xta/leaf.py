"""Solvers for small or low-degree residual instances.

The independent-set solvers double as leaf backends for the randomized
branching in :mod:`xta.branching`.  Each backend advertises the ratio it can
prove on graphs of maximum degree ``d``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ContractViolation
from .graph import Graph, Hypergraph, from_mask, iter_bits, lowest_bit


def _greedy_mask(adj, alive):
    chosen = 0
    while alive:
        best = -1
        best_deg = None
        for v in iter_bits(alive):
            deg = (adj[v] & alive).bit_count()
            if best_deg is None or deg < best_deg:
                best, best_deg = v, deg
                if deg == 0:
                    break
        chosen |= 1 << best
        alive &= ~((1 << best) | adj[best])
    return chosen


def greedy_is(G: Graph) -> frozenset[int]:
    """Min-degree greedy: take a minimum-degree vertex, drop its closed neighborhood, repeat."""
    return from_mask(_greedy_mask(G.adj, G.alive))


def _mis_mask(adj, alive):
    chosen = 0
    while alive:
        pivot = -1
        pivot_deg = -1
        reduced = False
        for v in iter_bits(alive):
            deg = (adj[v] & alive).bit_count()
            if deg <= 1:
                # some maximum independent set contains v
                chosen |= 1 << v
                alive &= ~((1 << v) | adj[v])
                reduced = True
                break
            if deg > pivot_deg:
                pivot, pivot_deg = v, deg
        if reduced:
            continue
        bit = 1 << pivot
        without = _mis_mask(adj, alive & ~bit)
        with_v = _mis_mask(adj, alive & ~bit & ~adj[pivot]) | bit
        if with_v.bit_count() > without.bit_count():
            return chosen | with_v
        return chosen | without
    return chosen


def exact_mis(G: Graph) -> frozenset[int]:
    """A maximum independent set of the alive part of ``G``.

    Include/exclude branching on a maximum-degree vertex; vertices of degree
    at most one are taken greedily, which never loses optimality.
    """
    return from_mask(_mis_mask(G.adj, G.alive))


def _first_is_of_size(adj, candidates, need, chosen):
    if need == 0:
        return chosen
    while candidates.bit_count() >= need:
        v = lowest_bit(candidates)
        candidates ^= 1 << v
        found = _first_is_of_size(adj, candidates & ~adj[v], need - 1, chosen | (1 << v))
        if found is not None:
            return found
    return None


def enumerate_is_of_size(G: Graph, s: int) -> frozenset[int] | None:
    """Lexicographically first independent set with exactly ``s`` vertices, or None."""
    if s < 0:
        raise ContractViolation("set size must be non-negative")
    found = _first_is_of_size(G.adj, G.alive, s, 0)
    return None if found is None else from_mask(found)


def _enum_max_mask(adj, alive):
    best = 0
    s = 1
    while True:
        found = _first_is_of_size(adj, alive, s, 0)
        if found is None:
            return best
        best = found
        s += 1


class LeafIsSolver:
    """A named independent-set backend with its certified ratio on degree-``d`` graphs."""

    def __init__(self, name, solve_mask, ratio):
        self.name = name
        self._solve_mask = solve_mask
        self._ratio = ratio

    def __repr__(self):
        return f"LeafIsSolver({self.name!r})"

    def solve(self, G: Graph) -> frozenset[int]:
        return from_mask(self._solve_mask(G.adj, G.alive))

    def solve_mask(self, adj, alive) -> int:
        return self._solve_mask(adj, alive)

    def advertised_ratio(self, d: int) -> Fraction:
        return self._ratio(d)


# Greedy keeps at least n/(d+1) vertices on a graph of maximum degree d, and
# alpha <= n, so d+1 is the ratio that can actually be proven.
LEAF_SOLVERS = {
    "exact": LeafIsSolver("exact", _mis_mask, lambda d: Fraction(1)),
    "greedy": LeafIsSolver("greedy", _greedy_mask, lambda d: Fraction(d + 1)),
    "enum": LeafIsSolver("enum", _enum_max_mask, lambda d: Fraction(1)),
}


def get_leaf_solver(name: str) -> LeafIsSolver:
    try:
        return LEAF_SOLVERS[name]
    except KeyError:
        raise ContractViolation(
            f"unknown leaf solver {name!r}; choose from {', '.join(LEAF_SOLVERS)}"
        ) from None


def matching_vc(H: Hypergraph) -> frozenset[int]:
    """Take every vertex of the lowest-indexed uncovered edge until all edges are covered.

    The chosen edges are pairwise disjoint and any cover hits each of them, so
    the result is at most ``k`` times optimal.
    """
    cover = 0
    for e in H.edges:
        if not e & cover:
            cover |= e
    return from_mask(cover)


def _disjoint_edge_count(edges):
    used = 0
    count = 0
    for e in edges:
        if not e & used:
            used |= e
            count += 1
    return count


def _vc_masks(edges):
    best_cover = 0
    for e in edges:
        if not e & best_cover:
            best_cover |= e
    best = [best_cover.bit_count(), best_cover]

    def search(live, chosen, size):
        if not live:
            if size < best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _disjoint_edge_count(live) >= best[0]:
            return
        pivot = min(live, key=int.bit_count)
        for v in iter_bits(pivot):
            bit = 1 << v
            search([e for e in live if not e & bit], chosen | bit, size + 1)

    search(list(edges), 0, 0)
    return best[1]


def exact_vc(H: Hypergraph) -> frozenset[int]:
    """Minimum vertex cover by bounded search over the vertices of a smallest uncovered edge.

    Pruned with a disjoint-edge lower bound; seeded with the matching cover.
    """
    return from_mask(_vc_masks(H.edges))
