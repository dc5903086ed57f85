"""Boolean CSPs and their FGLSS conflict graphs.

The conflict graph has one vertex per (predicate, accepting local assignment)
and an edge whenever two such vertices give some shared variable different
values.  Its independence number equals the largest number of predicates
that one global assignment satisfies simultaneously.

CSP text format (variables and predicates numbered from 1)::

    c comment
    p csp <n_vars> <m>
    s v1 v2 ... vq        scope of the next predicate
    a b1 b2 ... bq        one accepting assignment, bits in scope order
    a ...
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import ContractViolation, ParseError
from .graph import Graph

BRUTEFORCE_VARS = 20


@dataclass(frozen=True)
class Predicate:
    scope: tuple[int, ...]
    accepting: tuple[tuple[int, ...], ...]

    def satisfied_by(self, assignment) -> bool:
        local = tuple(assignment[v] for v in self.scope)
        return local in self.accepting


@dataclass
class Csp:
    n_vars: int
    predicates: list[Predicate] = field(default_factory=list)

    def __post_init__(self):
        for i, pred in enumerate(self.predicates):
            if len(set(pred.scope)) != len(pred.scope):
                raise ContractViolation(f"predicate {i}: repeated variable in scope")
            if any(not 0 <= v < self.n_vars for v in pred.scope):
                raise ContractViolation(f"predicate {i}: variable out of range")
            if len(set(pred.accepting)) != len(pred.accepting):
                raise ContractViolation(f"predicate {i}: duplicate accepting assignment")
            for gamma in pred.accepting:
                if len(gamma) != len(pred.scope) or any(b not in (0, 1) for b in gamma):
                    raise ContractViolation(f"predicate {i}: assignment {gamma} does not fit scope")

    @property
    def m(self) -> int:
        return len(self.predicates)

    def add(self, scope, accepting) -> Csp:
        self.predicates.append(Predicate(tuple(scope), tuple(tuple(a) for a in accepting)))
        self.__post_init__()
        return self


def freeness(phi: Csp) -> int:
    return max((len(p.accepting) for p in phi.predicates), default=0)


def csp_val_bruteforce(phi: Csp) -> int:
    """Most predicates satisfied by one assignment, over all 2^n assignments."""
    if phi.n_vars > BRUTEFORCE_VARS:
        raise ContractViolation(f"brute force capped at {BRUTEFORCE_VARS} variables, got {phi.n_vars}")
    if not phi.predicates:
        return 0
    best = 0
    for assignment in itertools.product((0, 1), repeat=phi.n_vars):
        best = max(best, sum(p.satisfied_by(assignment) for p in phi.predicates))
        if best == phi.m:
            break
    return best


@dataclass
class FglssGraph:
    graph: Graph
    labels: list[tuple[int, tuple[int, ...]]]
    scopes: list[tuple[int, ...]] = field(default_factory=list, repr=False)

    def partial_assignment(self, vertices) -> dict[int, int]:
        """Variable values implied by a vertex set; raises if two vertices disagree."""
        out: dict[int, int] = {}
        for v in vertices:
            i, gamma = self.labels[v]
            for var, bit in zip(self.scopes[i], gamma):
                if out.setdefault(var, bit) != bit:
                    raise ValueError(f"variable {var} assigned both values")
        return out


def fglss_reduce(phi: Csp) -> FglssGraph:
    labels = []
    values = []
    for i, pred in enumerate(phi.predicates):
        for gamma in pred.accepting:
            labels.append((i, gamma))
            values.append(dict(zip(pred.scope, gamma)))
    n = len(labels)
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            same_pred = labels[u][0] == labels[v][0]
            a, b = values[u], values[v]
            if same_pred or any(b.get(x, bit) != bit for x, bit in a.items()):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return FglssGraph(Graph(n, adj), labels, [p.scope for p in phi.predicates])


def gen_random_csp(n_vars: int, m: int, arity: int, accepting_count: int, seed: int) -> Csp:
    if not 1 <= arity <= n_vars:
        raise ContractViolation(f"arity {arity} not in 1..{n_vars}")
    if not 1 <= accepting_count <= 2**arity:
        raise ContractViolation(f"accepting count {accepting_count} not in 1..{2**arity}")
    if m < 0:
        raise ContractViolation("predicate count must be non-negative")
    rng = random.Random(seed)
    local = list(itertools.product((0, 1), repeat=arity))
    phi = Csp(n_vars)
    for _ in range(m):
        scope = tuple(rng.sample(range(n_vars), arity))
        accepting = tuple(sorted(rng.sample(local, accepting_count)))
        phi.predicates.append(Predicate(scope, accepting))
    return phi


def parse_csp(data) -> Csp:
    text = data.decode("ascii", errors="replace") if isinstance(data, (bytes, bytearray)) else data
    n_vars = m = None
    preds: list[tuple[tuple[int, ...], list[tuple[int, ...]]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        tag, rest = fields[0], fields[1:]
        try:
            if tag == "p":
                if n_vars is not None or len(rest) != 3 or rest[0] != "csp":
                    raise ParseError("malformed header, expected 'p csp <n> <m>'", lineno)
                n_vars, m = int(rest[1]), int(rest[2])
            elif tag == "s":
                if n_vars is None:
                    raise ParseError("scope line before header", lineno)
                scope = tuple(int(x) - 1 for x in rest)
                if not scope:
                    raise ParseError("empty scope", lineno)
                if any(not 0 <= v < n_vars for v in scope):
                    raise ParseError(f"variable out of range 1..{n_vars}", lineno)
                if len(set(scope)) != len(scope):
                    raise ParseError("repeated variable in scope", lineno)
                preds.append((scope, []))
            elif tag == "a":
                if not preds:
                    raise ParseError("assignment line before any scope", lineno)
                bits = tuple(int(x) for x in rest)
                scope, acc = preds[-1]
                if len(bits) != len(scope) or any(b not in (0, 1) for b in bits):
                    raise ParseError(f"assignment must be {len(scope)} bits", lineno)
                if bits in acc:
                    raise ParseError("duplicate accepting assignment", lineno)
                acc.append(bits)
            else:
                raise ParseError(f"unknown line type {tag!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"expected integers: {raw.strip()!r}", lineno) from None
    if n_vars is None:
        raise ParseError("missing 'p csp' header")
    if len(preds) != m:
        raise ParseError(f"header declares {m} predicates, found {len(preds)}")
    return Csp(n_vars, [Predicate(s, tuple(a)) for s, a in preds])


def emit_csp(phi: Csp) -> str:
    lines = [f"p csp {phi.n_vars} {phi.m}"]
    for pred in phi.predicates:
        lines.append("s " + " ".join(str(v + 1) for v in pred.scope))
        lines.extend("a " + " ".join(map(str, gamma)) for gamma in pred.accepting)
    return "\n".join(lines) + "\n"


def emit_labels(fg: FglssGraph) -> str:
    """One ``<vertex> <predicate> <bits>`` line per vertex, both indices 1-based."""
    return "".join(
        f"{v + 1} {i + 1} {''.join(map(str, gamma))}\n" for v, (i, gamma) in enumerate(fg.labels)
    )
