import math
import random

import pytest

from xta.coloring import (
    R0,
    Coloring,
    chr_approx,
    chr_approx_wrapped,
    chromatic_bruteforce,
    chromatic_number,
    optcol,
    peel_parameters,
    verify_coloring,
)
from xta.errors import ContractViolation
from xta.generators import gen_gnp
from xta.graph import Graph

from oracles import brute_chi, brute_k_colorable


def bipartite(a, b, p, seed):
    rng = random.Random(seed)
    edges = [(u, a + v) for u in range(a) for v in range(b) if rng.random() < p]
    if not edges:
        edges = [(0, a)]
    return Graph.from_edges(a + b, edges)


def test_optcol_examples():
    assert len(optcol(Graph.complete(4))) == 4
    assert len(optcol(bipartite(4, 5, 0.5, 1))) == 2
    assert len(optcol(Graph.petersen())) == 3
    assert len(optcol(Graph(0))) == 0


def test_petersen_chi_by_exhaustive_check():
    P = Graph.petersen()
    assert [brute_k_colorable(P, k) for k in (1, 2, 3)] == [False, False, True]


def test_chromatic_bruteforce_examples():
    assert chromatic_bruteforce(Graph.cycle(5)) == 3
    assert chromatic_bruteforce(Graph(6)) == 1
    assert chromatic_bruteforce(Graph.complete(7)) == 7
    with pytest.raises(ContractViolation):
        chromatic_bruteforce(Graph(13))


def test_bruteforce_against_assignment_enumeration():
    rng = random.Random(2)
    for i in range(40):
        G = gen_gnp(rng.randint(1, 7), rng.random(), i)
        assert chromatic_bruteforce(G) == brute_chi(G)


def test_optcol_matches_bruteforce():
    rng = random.Random(3)
    for i in range(120):
        G = gen_gnp(rng.randint(0, 10), rng.random(), i)
        coloring = optcol(G)
        assert verify_coloring(G, coloring)
        assert len(coloring) == chromatic_bruteforce(G)


def test_optcol_on_induced_subgraph_keeps_labels():
    G = gen_gnp(14, 0.5, 4)
    sub = G.induced_subgraph({1, 4, 5, 7, 10, 13})
    coloring = optcol(sub)
    assert verify_coloring(sub, coloring)
    assert len(coloring) == chromatic_number(sub)


def test_optcol_larger():
    G = gen_gnp(18, 0.4, 1)
    coloring = optcol(G)
    assert verify_coloring(G, coloring)
    assert not brute_k_colorable_fast(G, len(coloring) - 1)


def brute_k_colorable_fast(G, k):
    # smallest-last backtracking; independent of the counting identity
    n = G.n
    order = list(range(n))
    color = {}

    def go(i):
        if i == n:
            return True
        v = order[i]
        for c in range(k):
            if all(color.get(u) != c for u in range(n) if G.has_edge(u, v)):
                color[v] = c
                if go(i + 1):
                    return True
                del color[v]
        return False

    return go(0)


def test_verify_coloring():
    K3 = Graph.complete(3)
    assert verify_coloring(K3, Coloring([frozenset({0}), frozenset({1}), frozenset({2})]))
    assert not verify_coloring(K3, Coloring([frozenset({0, 1, 2})]))
    assert not verify_coloring(K3, Coloring([frozenset({0}), frozenset({1})]))
    assert not verify_coloring(K3, Coloring([frozenset({0, 1}), frozenset({1, 2})]))
    G = gen_gnp(9, 0.5, 2)
    assert verify_coloring(G, optcol(G))


def test_r0():
    assert R0 * math.log2(R0) == pytest.approx(1.0, abs=1e-12)
    assert 1.55 < R0 < 1.57
    for r in [R0 + 1e-6, 1.6, 2, 3, 5, 10, 100]:
        assert r / math.log(r * math.log2(r)) >= 1
    with pytest.raises(ContractViolation):
        chr_approx(Graph(3), 1.5, 0)


def test_peel_parameters():
    p, d = peel_parameters(4)
    assert p == pytest.approx(4 / math.log(8))
    assert d == 4
    p, d = peel_parameters(64)
    assert d == math.ceil(2 * p)


def test_chr_approx_examples():
    coloring, _ = chr_approx(Graph(10), 8, 0)
    assert len(coloring) == 1
    for n in (3, 6, 9):
        coloring, _ = chr_approx(Graph.complete(n), 8, 0)
        assert len(coloring) == n


def test_chr_approx_always_proper():
    rng = random.Random(5)
    for i in range(150):
        G = gen_gnp(rng.randint(0, 16), rng.random(), i)
        r = rng.choice([1.7, 2, 4, 8])
        coloring, stats = chr_approx(G, r, seed=i)
        assert verify_coloring(G, coloring)
        assert stats.leaves <= stats.nodes


def test_chr_approx_class_bound():
    r = 4
    good = 0
    for seed in range(100):
        G = gen_gnp(16, 0.4, seed)
        coloring, _ = chr_approx(G, r, seed)
        assert verify_coloring(G, coloring)
        good += len(coloring) <= (r + 2) * chromatic_number(G)
    assert good >= 90


def test_chr_approx_deterministic():
    G = gen_gnp(16, 0.4, 3)
    a, sa = chr_approx(G, 4, 11)
    b, sb = chr_approx(G, 4, 11)
    assert a == b and sa.counters() == sb.counters()


def test_wrapped_examples():
    assert len(chr_approx_wrapped(Graph(7), 10, 0)) == 1
    assert len(chr_approx_wrapped(Graph.complete(5), 10, 0)) == 5
    with pytest.raises(ContractViolation):
        chr_approx_wrapped(Graph(3), 3.5, 0)


def test_wrapped_ratio_suite():
    rng = random.Random(9)
    good = 0
    for seed in range(60):
        G = gen_gnp(rng.randint(4, 16), rng.choice([0.3, 0.5, 0.7]), seed)
        coloring = chr_approx_wrapped(G, 6, seed)
        assert verify_coloring(G, coloring)
        good += len(coloring) <= 6 * chromatic_number(G)
    assert good >= 54
