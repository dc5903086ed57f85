"""Text formats: DIMACS ``.col`` graphs and ``p hedge`` hypergraphs.

Both formats number vertices from 1; everything in memory is 0-based.

Hypergraph format::

    c optional comment
    p hedge <n> <m> <k>
    h v1 v2 ... vj        (1 <= j <= k, one line per edge)
"""

from __future__ import annotations

from .errors import ParseError
from .graph import Graph, Hypergraph, iter_bits


def _text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        return data.decode("ascii", errors="replace")
    return data


def _ints(fields, lineno):
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(fields)!r}", lineno) from None


def parse_dimacs_col(data) -> Graph:
    n = None
    declared_m = None
    adj: list[int] = []
    for lineno, raw in enumerate(_text(data).splitlines(), 1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        tag = fields[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(fields) != 4 or fields[1] not in ("edge", "col"):
                raise ParseError("malformed header, expected 'p edge <n> <m>'", lineno)
            n, declared_m = _ints(fields[2:], lineno)
            if n < 0 or declared_m < 0:
                raise ParseError("negative size in header", lineno)
            adj = [0] * n
        elif tag == "e":
            if n is None:
                raise ParseError("edge line before 'p edge' header", lineno)
            if len(fields) != 3:
                raise ParseError("malformed edge line, expected 'e <u> <v>'", lineno)
            u, v = _ints(fields[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex index out of range 1..{n}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            u -= 1
            v -= 1
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge' header")
    return Graph(n, adj)


def emit_dimacs_col(G: Graph, comments=()) -> str:
    edges = G.edge_list()
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {G.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_hypergraph(data) -> Hypergraph:
    n = k = None
    edges = []
    for lineno, raw in enumerate(_text(data).splitlines(), 1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        tag = fields[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(fields) != 5 or fields[1] != "hedge":
                raise ParseError("malformed header, expected 'p hedge <n> <m> <k>'", lineno)
            n, _, k = _ints(fields[2:], lineno)
            if n < 0 or k < 1:
                raise ParseError("invalid sizes in header", lineno)
        elif tag == "h":
            if n is None:
                raise ParseError("edge line before 'p hedge' header", lineno)
            vs = _ints(fields[1:], lineno)
            if not vs:
                raise ParseError("empty hyperedge", lineno)
            if len(vs) > k:
                raise ParseError(f"edge size {len(vs)} exceeds k={k}", lineno)
            mask = 0
            for v in vs:
                if not 1 <= v <= n:
                    raise ParseError(f"vertex index {v} out of range 1..{n}", lineno)
                mask |= 1 << (v - 1)
            if mask.bit_count() != len(vs):
                raise ParseError("repeated vertex in hyperedge", lineno)
            edges.append(mask)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p hedge' header")
    return Hypergraph(n, edges, k=k)


def emit_hypergraph(H: Hypergraph, comments=()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p hedge {H.n} {len(H.edges)} {H.k}")
    for e in H.edges:
        lines.append("h " + " ".join(str(v + 1) for v in iter_bits(e)))
    return "\n".join(lines) + "\n"


def parse_cover_instance(data) -> Hypergraph:
    """Read either format; a DIMACS graph becomes a 2-uniform hypergraph."""
    text = _text(data)
    for raw in text.splitlines():
        fields = raw.split()
        if fields and fields[0] == "p":
            if len(fields) > 1 and fields[1] == "hedge":
                return parse_hypergraph(text)
            return Hypergraph.from_graph(parse_dimacs_col(text))
    raise ParseError("missing problem line")
