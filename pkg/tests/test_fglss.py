import itertools
import random

import pytest

from xta.errors import ContractViolation, ParseError
from xta.fglss import (
    Csp,
    csp_val_bruteforce,
    emit_csp,
    emit_labels,
    fglss_reduce,
    freeness,
    gen_random_csp,
    parse_csp,
)
from xta.leaf import exact_mis

from oracles import brute_alpha

OR12 = [(0, 1), (1, 0), (1, 1)]


def or_not_csp():
    return Csp(2).add([0, 1], OR12).add([0], [(0,)])


def test_freeness():
    assert freeness(Csp(2).add([0, 1], OR12)) == 3
    assert freeness(Csp(1).add([0], [(0,)])) == 1
    assert freeness(Csp(3)) == 0


def test_val_bruteforce():
    assert csp_val_bruteforce(Csp(1).add([0], [(1,)]).add([0], [(0,)])) == 1
    assert csp_val_bruteforce(or_not_csp()) == 2
    assert csp_val_bruteforce(Csp(4)) == 0
    with pytest.raises(ContractViolation):
        csp_val_bruteforce(Csp(21))


def test_reduce_example():
    fg = fglss_reduce(or_not_csp())
    assert fg.graph.n == 4
    assert len(exact_mis(fg.graph)) == 2 == brute_alpha(fg.graph)


def test_reduce_single_vertex():
    fg = fglss_reduce(Csp(3).add([1, 2], [(0, 1)]))
    assert fg.graph.n == 1 and fg.graph.edge_list() == []
    assert len(exact_mis(fg.graph)) == 1


def test_reduce_disjoint_scopes():
    fg = fglss_reduce(Csp(4).add([0, 1], [(1, 0)]).add([2, 3], [(0, 0)]))
    assert fg.graph.n == 2 and fg.graph.edge_list() == []
    assert len(exact_mis(fg.graph)) == 2


def test_reduce_edges_by_definition():
    phi = gen_random_csp(5, 6, 2, 2, 4)
    fg = fglss_reduce(phi)
    for u, v in itertools.combinations(range(fg.graph.n), 2):
        (i, a), (j, b) = fg.labels[u], fg.labels[v]
        va = dict(zip(phi.predicates[i].scope, a))
        vb = dict(zip(phi.predicates[j].scope, b))
        conflict = i == j or any(vb[x] != va[x] for x in va.keys() & vb.keys())
        assert fg.graph.has_edge(u, v) == conflict


def random_csps(count, seed):
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(2, 8)
        arity = rng.randint(1, min(3, n))
        acc = rng.randint(1, 2**arity)
        yield gen_random_csp(n, rng.randint(0, 10), arity, acc, rng.getrandbits(64))


def test_alpha_equals_val():
    for phi in random_csps(60, 1):
        fg = fglss_reduce(phi)
        assert len(exact_mis(fg.graph)) == csp_val_bruteforce(phi)
        assert fg.graph.n <= phi.m * freeness(phi)


def test_same_predicate_clique():
    for phi in random_csps(30, 2):
        fg = fglss_reduce(phi)
        for u, v in itertools.combinations(range(fg.graph.n), 2):
            if fg.labels[u][0] == fg.labels[v][0]:
                assert fg.graph.has_edge(u, v)


def test_labels_of_independent_set_are_consistent():
    for phi in random_csps(30, 3):
        fg = fglss_reduce(phi)
        found = exact_mis(fg.graph)
        assignment = fg.partial_assignment(found)
        full = [assignment.get(x, 0) for x in range(phi.n_vars)]
        assert sum(p.satisfied_by(full) for p in phi.predicates) >= len(found)


def test_label_map_injective():
    fg = fglss_reduce(gen_random_csp(6, 8, 3, 4, 9))
    assert len(set(fg.labels)) == len(fg.labels)


def test_gen_random_csp():
    phi = gen_random_csp(4, 5, 2, 4, 1)
    assert csp_val_bruteforce(phi) == 5
    with pytest.raises(ContractViolation):
        gen_random_csp(4, 5, 2, 0, 1)
    with pytest.raises(ContractViolation):
        gen_random_csp(2, 5, 3, 1, 1)
    assert gen_random_csp(4, 6, 2, 2, 3) == gen_random_csp(4, 6, 2, 2, 3)


def test_csp_rejects_bad_predicates():
    with pytest.raises(ContractViolation):
        Csp(2).add([0, 0], [(0, 0)])
    with pytest.raises(ContractViolation):
        Csp(2).add([0, 1], [(0, 1), (0, 1)])
    with pytest.raises(ContractViolation):
        Csp(2).add([0, 1], [(0,)])
    with pytest.raises(ContractViolation):
        Csp(2).add([2], [(0,)])


def test_csp_text_round_trip():
    for phi in random_csps(20, 4):
        assert parse_csp(emit_csp(phi)) == phi


@pytest.mark.parametrize(
    "text, line",
    [
        ("p csp 2 1\na 0 1\n", 2),
        ("p csp 2 1\ns 1 3\n", 2),
        ("p csp 2 1\ns 1 2\na 0\n", 3),
        ("p csp 2 1\ns 1 2\na 0 2\n", 3),
        ("p csp 2 1\ns 1 2\na 0 1\na 0 1\n", 4),
        ("p sat 2 1\n", 1),
    ],
)
def test_csp_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_csp(text)
    assert exc.value.line == line


def test_labels_text():
    fg = fglss_reduce(or_not_csp())
    assert emit_labels(fg) == "1 1 01\n2 1 10\n3 1 11\n4 2 0\n"
