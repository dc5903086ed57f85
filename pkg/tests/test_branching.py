import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xta.branching import (
    BranchRng,
    PreconditionError,
    SolveConfig,
    boosted_is,
    boosted_prefix_sizes,
    branch_is,
    compute_lambda,
    include_threshold,
    node_bound,
    partition_baseline_is,
    partition_blocks,
    trial_rng,
)
from xta.errors import ContractViolation
from xta.generators import gen_gnp, gen_planted_is
from xta.graph import Graph
from xta.leaf import exact_mis

from oracles import independent


def test_compute_lambda_closed_form():
    assert compute_lambda(16, 2) == pytest.approx(0.3125, abs=1e-12)
    assert compute_lambda(8, 4) == pytest.approx(0.375, abs=1e-12)
    with pytest.raises(PreconditionError, match="d >= 2p"):
        compute_lambda(4, 4)


@pytest.mark.parametrize("d, p", [(16, 2), (8, 4), (9, 3.5), (40, 1), (32, 4)])
def test_lambda_identity(d, p):
    lam = compute_lambda(d, p)
    assert 2 ** (-lam * d) == pytest.approx(p / (4 * d), abs=1e-12)


def test_node_bound_values():
    assert node_bound(0, 16, 2) == 1
    assert node_bound(32, 16, 2) == pytest.approx(1024)
    assert node_bound(40, 32, 4) == pytest.approx(2**6.25)
    assert node_bound(25, 8, 4) == pytest.approx(2**9.375)


def test_solve_config_validation():
    with pytest.raises(ContractViolation):
        SolveConfig(p=0.5)
    with pytest.raises(ContractViolation):
        SolveConfig(d=0)
    with pytest.raises(ContractViolation):
        SolveConfig(trials=0)
    with pytest.raises(ContractViolation):
        SolveConfig(leaf="nope")
    assert SolveConfig(p=2, d=8, leaf="greedy").certified_ratio() == 8
    assert SolveConfig(p=4, d=8, leaf="exact").certified_ratio() == 4


def test_include_threshold():
    assert include_threshold(1) == 2**64
    assert include_threshold(2) == 2**63
    assert include_threshold(3) == 2**64 // 3


def test_coin_frequency():
    rng = BranchRng(12345)
    thr = include_threshold(4)
    hits = sum(rng.coin(i, thr) for i in range(20000))
    # binomial sd is about 61
    assert abs(hits - 5000) < 300


def test_star_always_takes_leaves():
    G = Graph.star(5)
    cfg = SolveConfig(p=2, d=3, leaf="exact")
    for seed in range(50):
        found, _ = branch_is(G, cfg, BranchRng(seed))
        assert found == {1, 2, 3, 4, 5}


def test_empty_graph_is_single_leaf():
    found, stats = branch_is(Graph(6), SolveConfig(p=3, d=2))
    assert found == set(range(6))
    assert stats.nodes == 1 and stats.leaves == 1 and stats.include_branches_taken == 0


def test_p_one_explores_everything_exactly():
    for seed in range(20):
        G = gen_gnp(14, 0.4, seed)
        found, stats = branch_is(G, SolveConfig(p=1, d=1, leaf="greedy"))
        assert len(found) == len(exact_mis(G))


def test_run_stats_invariants():
    G = gen_gnp(25, 0.3, 1)
    for seed in range(50):
        _, stats = branch_is(G, SolveConfig(p=2, d=4, seed=seed))
        assert stats.leaves <= stats.nodes
        assert stats.include_branches_taken <= stats.nodes
        # a branching node has one child, plus one more when the include branch fires
        assert stats.leaves == stats.include_branches_taken + 1


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 22),
    st.floats(0, 1),
    st.integers(0, 2**64 - 1),
    st.floats(1, 6),
    st.integers(1, 10),
    st.sampled_from(["exact", "greedy", "enum"]),
)
def test_branch_is_valid_and_deterministic(n, edge_p, seed, p, d, leaf):
    if leaf == "enum":
        n = min(n, 14)
    G = gen_gnp(n, edge_p, seed)
    cfg = SolveConfig(p=p, d=d, leaf=leaf, seed=seed)
    a, sa = branch_is(G, cfg)
    b, sb = branch_is(G, cfg)
    assert independent(G, a)
    assert a == b and sa.counters() == sb.counters()


def test_leaf_cache_does_not_change_results():
    G = gen_gnp(25, 0.3, 4)
    cfg = SolveConfig(p=4, d=8)
    cache = {}
    for t in range(30):
        plain = branch_is(G, cfg, trial_rng(7, t))
        cached = branch_is(G, cfg, trial_rng(7, t), cache)
        assert plain[0] == cached[0]
        assert plain[1].counters() == cached[1].counters()


def test_expected_size_example():
    G = gen_gnp(25, 0.3, 1)
    alpha = len(exact_mis(G))
    cfg = SolveConfig(p=4, d=8, leaf="exact")
    cache = {}
    sizes = [len(branch_is(G, cfg, trial_rng(0, t), cache)[0]) for t in range(400)]
    assert sum(sizes) / 400 >= alpha / 4


SUITE_CONFIGS = [
    SolveConfig(p=2, d=4, leaf="exact"),
    SolveConfig(p=4, d=8, leaf="exact"),
    SolveConfig(p=3, d=6, leaf="greedy"),
    SolveConfig(p=2, d=5, leaf="enum"),
]


@pytest.mark.parametrize("cfg", SUITE_CONFIGS, ids=lambda c: f"p{c.p}-d{c.d}-{c.leaf}")
def test_expectation_guarantee_on_suite(cfg):
    rng = random.Random(17)
    ratio = float(cfg.certified_ratio())
    for i in range(8):
        n = rng.randint(10, 25 if cfg.leaf != "enum" else 16)
        G = gen_gnp(n, rng.choice([0.2, 0.3, 0.5]), rng.getrandbits(64))
        alpha = len(exact_mis(G))
        cache = {}
        sizes = [len(branch_is(G, cfg, trial_rng(i, t), cache)[0]) for t in range(400)]
        assert sum(sizes) / 400 >= 0.9 * alpha / ratio


@pytest.mark.parametrize("cfg", [SolveConfig(p=2, d=4), SolveConfig(p=4, d=8), SolveConfig(p=1.5, d=3)])
def test_mean_nodes_within_bound(cfg):
    rng = random.Random(23)
    for i in range(6):
        n = rng.randint(10, 25)
        G = gen_gnp(n, rng.choice([0.2, 0.4, 0.6]), rng.getrandbits(64))
        cache = {}
        nodes = [branch_is(G, cfg, trial_rng(i, t), cache)[1].nodes for t in range(200)]
        assert sum(nodes) / 200 <= node_bound(n, cfg.d, cfg.p)


def test_boosted_single_trial_matches_branch_is():
    G = gen_gnp(20, 0.3, 2)
    cfg = SolveConfig(p=2, d=4, seed=99)
    one, s1 = boosted_is(G, 2, cfg, trials=1)
    ref, s2 = branch_is(G, cfg)
    assert one == ref and s1.counters() == s2.counters()


def test_boosted_empty_graph():
    for trials in (1, 3, 7):
        found, _ = boosted_is(Graph(5), 2, SolveConfig(), trials=trials)
        assert found == set(range(5))


def test_boosted_default_trials_is_3r():
    G = gen_gnp(15, 0.4, 1)
    cfg = SolveConfig(p=2, d=4, seed=5)
    _, stats = boosted_is(G, 2, cfg)
    expected = sum(branch_is(G, cfg, trial_rng(5, t))[1].nodes for t in range(6))
    assert stats.nodes == expected


def test_boosted_planted():
    r = 2
    hits = 0
    for seed in range(50):
        G, planted = gen_planted_is(30, 10, 0.5, seed)
        found, _ = boosted_is(G, r, SolveConfig(p=r, d=4, seed=seed), trials=3 * r)
        assert independent(G, found)
        hits += len(found) >= len(planted) / r
    assert hits >= 45


def test_boosted_monotone_in_trials():
    G = gen_gnp(22, 0.3, 5)
    cfg = SolveConfig(p=4, d=8, leaf="greedy", seed=3)
    prefix = boosted_prefix_sizes(G, cfg, 12)
    assert prefix == sorted(prefix)
    for t in (1, 4, 12):
        assert len(boosted_is(G, 4, cfg, trials=t)[0]) == prefix[t - 1]


def test_partition_blocks():
    assert partition_blocks(list(range(7)), 3) == [[0, 1, 2], [3, 4], [5, 6]]
    assert partition_blocks(list(range(9)), 3) == [[0, 1, 2], [3, 4, 5], [6, 7, 8]]


def test_partition_baseline_examples():
    C6 = Graph.cycle(6)
    found = partition_baseline_is(C6, 2)
    assert len(found) == 2 and independent(C6, found)
    G = gen_gnp(14, 0.3, 3)
    assert len(partition_baseline_is(G, 1)) == len(exact_mis(G))
    assert partition_baseline_is(Graph(9), 3) == {0, 1, 2}
    with pytest.raises(ContractViolation):
        partition_baseline_is(Graph(4), 5)
    with pytest.raises(ContractViolation):
        partition_baseline_is(Graph(4), 0)


def test_partition_baseline_pigeonhole():
    rng = random.Random(8)
    for i in range(40):
        n = rng.randint(2, 20)
        G = gen_gnp(n, rng.random(), i)
        r = rng.randint(1, n)
        found = partition_baseline_is(G, r)
        assert independent(G, found)
        assert len(found) >= math.ceil(len(exact_mis(G)) / r)
