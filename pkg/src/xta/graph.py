"""Graph and hypergraph types.

Vertex sets are plain Python ints used as bit vectors (bit ``v`` set means
vertex ``v`` is a member).  Python ints have no fixed width, so graphs with
more than 64 or 128 vertices need no separate code path.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import ContractViolation


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the full neighbor mask of ``v``.  ``alive`` selects the
    vertices that are currently present, so induced subgraphs share ``adj``
    with their parent and only carry a different mask.
    """

    __slots__ = ("n", "adj", "alive")

    def __init__(self, n: int, adj: list[int] | None = None, alive: int | None = None):
        self.n = n
        self.adj = adj if adj is not None else [0] * n
        self.alive = (1 << n) - 1 if alive is None else alive

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.alive == other.alive
            and self.edge_list() == other.edge_list()
        )

    def __repr__(self):
        return f"Graph(n={self.n}, alive={self.num_alive()}, m={len(self.edge_list())})"

    def num_alive(self) -> int:
        return self.alive.bit_count()

    def vertices(self) -> list[int]:
        return list(iter_bits(self.alive))

    def neighbors(self, v: int) -> int:
        """Alive neighbors of ``v`` as a mask."""
        return self.adj[v] & self.alive

    def degree(self, v: int) -> int:
        return (self.adj[v] & self.alive).bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges between alive vertices, as sorted ``(u, v)`` pairs with ``u < v``."""
        out = []
        for u in iter_bits(self.alive):
            higher = self.adj[u] & self.alive & ~((2 << u) - 1)
            out.extend((u, v) for v in iter_bits(higher))
        return out

    def max_degree(self) -> int:
        return max((self.degree(v) for v in iter_bits(self.alive)), default=0)

    def max_degree_vertex(self) -> tuple[int, int] | None:
        """Alive vertex of largest alive-degree, smallest index on ties."""
        best = None
        best_deg = -1
        alive = self.alive
        adj = self.adj
        for v in iter_bits(alive):
            deg = (adj[v] & alive).bit_count()
            if deg > best_deg:
                best, best_deg = v, deg
        if best is None:
            return None
        return best, best_deg

    def induced_subgraph(self, X: int | Iterable[int]) -> Graph:
        mask = X if isinstance(X, int) else to_mask(X)
        if mask & ~self.alive:
            raise ContractViolation("induced_subgraph: X is not a subset of the alive vertices")
        return Graph(self.n, self.adj, mask)

    def is_independent(self, S: int | Iterable[int]) -> bool:
        mask = S if isinstance(S, int) else to_mask(S)
        if mask & ~self.alive:
            return False
        return all(not (self.adj[v] & mask) for v in iter_bits(mask))

    def check_invariants(self) -> bool:
        """Full scan for symmetry and loop-freeness of the adjacency."""
        for v in range(self.n):
            if self.adj[v] >> v & 1:
                return False
            if self.adj[v] >> self.n:
                return False
            for u in iter_bits(self.adj[v]):
                if not self.adj[u] >> v & 1:
                    return False
        return True

    def compact(self) -> tuple[Graph, list[int]]:
        """Relabel the alive vertices as ``0..k-1``; returns the new graph and the old labels."""
        labels = self.vertices()
        index = {v: i for i, v in enumerate(labels)}
        adj = []
        for v in labels:
            adj.append(to_mask(index[u] for u in iter_bits(self.adj[v] & self.alive)))
        return Graph(len(labels), adj), labels


class Hypergraph:
    """Hypergraph on ``0..n-1`` whose edges have at most ``k`` vertices.

    Edges are stored as masks, in order; duplicates are kept.
    """

    __slots__ = ("n", "k", "edges")

    def __init__(self, n: int, edges: Iterable[int | Iterable[int]] = (), k: int | None = None):
        masks = [e if isinstance(e, int) else to_mask(e) for e in edges]
        largest = max((e.bit_count() for e in masks), default=0)
        if k is None:
            k = max(largest, 2)
        for e in masks:
            if e == 0:
                raise ValueError("empty hyperedge")
            if e >> n:
                raise ValueError("hyperedge vertex out of range")
        if largest > k:
            raise ValueError(f"hyperedge of size {largest} exceeds k={k}")
        self.n = n
        self.k = k
        self.edges = masks

    @classmethod
    def from_graph(cls, G: Graph) -> Hypergraph:
        return cls(G.n, [(1 << u) | (1 << v) for u, v in G.edge_list()], k=2)

    def __repr__(self):
        return f"Hypergraph(n={self.n}, m={len(self.edges)}, k={self.k})"

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.k == other.k and sorted(self.edges) == sorted(other.edges)

    def edge_sets(self) -> list[frozenset[int]]:
        return [from_mask(e) for e in self.edges]

    def degree(self, v: int) -> int:
        bit = 1 << v
        return sum(1 for e in self.edges if e & bit)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in iter_bits(e):
                deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_cover(self, X: int | Iterable[int]) -> bool:
        mask = X if isinstance(X, int) else to_mask(X)
        return all(e & mask for e in self.edges)
