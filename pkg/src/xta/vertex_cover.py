"""Sparsify-then-approximate vertex cover for hypergraphs with edges of size <= k.

The sparsifier branches on a vertex of degree >= d: either it joins the cover
(its edges disappear) or it is excluded (it is deleted from every edge).  The
leaves form a family of low-degree residual instances such that

* X covers H  iff  for some branch, X contains ``forced`` and X minus
  ``forced`` covers ``residual``;
* every residual has maximum degree < d;
* the number of branches is recorded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ContractViolation
from .graph import Hypergraph, from_mask, iter_bits, to_mask
from .leaf import exact_vc, matching_vc

VC_LEAVES = {"exact": exact_vc, "matching": matching_vc}


@dataclass
class Branch:
    forced: frozenset[int]
    residual: Hypergraph


@dataclass
class SparsifiedFamily:
    d: int
    branches: list[Branch] = field(default_factory=list)
    pruned: int = 0

    def __len__(self):
        return len(self.branches)

    @property
    def branch_count(self) -> int:
        return len(self.branches)


def _max_degree_vertex(n, edges):
    deg = [0] * n
    for e in edges:
        for v in iter_bits(e):
            deg[v] += 1
    best = max(range(n), key=lambda v: (deg[v], -v), default=None)
    if best is None:
        return None, 0
    return best, deg[best]


def _propagate(edges, forced):
    """Force every unit edge, repeatedly.  Returns None if an edge becomes empty."""
    while True:
        units = 0
        for e in edges:
            if e == 0:
                return None
            if e & (e - 1) == 0:
                units |= e
        if not units:
            return edges, forced
        forced |= units
        edges = [e for e in edges if not e & units]


def sparsify_vc(H: Hypergraph, d: int) -> SparsifiedFamily:
    if d < 2:
        raise ContractViolation(f"degree threshold d must be >= 2, got {d}")
    family = SparsifiedFamily(d=d)
    stack = [(list(H.edges), 0)]
    # explicit stack, popped so that branch A of each split is emitted first
    while stack:
        edges, forced = stack.pop()
        v, deg = _max_degree_vertex(H.n, edges)
        if deg < d:
            family.branches.append(Branch(from_mask(forced), Hypergraph(H.n, edges, k=H.k)))
            continue
        bit = 1 << v
        excluded = _propagate([e & ~bit for e in edges], forced)
        if excluded is None:
            family.pruned += 1
        else:
            stack.append(excluded)
        stack.append(([e for e in edges if not e & bit], forced | bit))
    return family


def vc_pipeline(H: Hypergraph, d: int, leaf: str = "exact", family: SparsifiedFamily | None = None):
    """Best ``forced | leaf_cover(residual)`` over the sparsified family.

    Ties go to the earliest branch.  With the exact leaf the result is a
    minimum cover; with the matching leaf it is within a factor k.
    """
    try:
        solve = VC_LEAVES[leaf]
    except KeyError:
        raise ContractViolation(f"unknown cover leaf {leaf!r}; choose from exact, matching") from None
    if family is None:
        family = sparsify_vc(H, d)
    best = None
    for branch in family.branches:
        cover = branch.forced | solve(branch.residual)
        if best is None or len(cover) < len(best):
            best = cover
    if best is None:
        raise AssertionError("sparsifier produced no feasible branch")
    return frozenset(best)


def family_contract_holds(H: Hypergraph, family: SparsifiedFamily, X) -> bool:
    """Check the cover equivalence for a single candidate set ``X``."""
    mask = X if isinstance(X, int) else to_mask(X)
    covers = H.is_cover(mask)
    represented = False
    for branch in family.branches:
        forced = to_mask(branch.forced)
        if forced & ~mask == 0 and branch.residual.is_cover(mask & ~forced):
            represented = True
            break
    return covers == represented


def halperin_gap_estimate(k: int, delta: int) -> float:
    """``k - k(k-1) ln ln D / ln D``, the ratio a low-degree SDP leaf would reach.

    Reported for context only; no algorithm here attains it.
    """
    if delta < 16:
        raise ContractViolation(f"degree bound must be >= 16, got {delta}")
    ln = math.log(delta)
    return k - k * (k - 1) * math.log(ln) / ln
