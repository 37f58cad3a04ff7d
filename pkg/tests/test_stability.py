import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stablecover.errors import BadParams, BranchingBoundViolated, DegreeZeroVertex, SizeLimitExceeded
from stablecover.graph_core import BipartiteGraph, build_graph, complete_graph
from stablecover.patterns import pattern
from stablecover.stability import (
    ABOVE_CAP,
    branching_index,
    max_semi_induced_halfgraph,
    reduce_neighborhoods,
    reduction_invariants,
    sample_unique_neighbor,
)
from stablecover.graph_core import semi_induced

from oracles import branching_index_naive


def bip_from_masks(na, masks):
    return BipartiteGraph(tuple(range(na)), tuple(range(na, na + len(masks))), list(masks))


def naive(bip, U=None):
    a_nb = [frozenset(j for j in range(bip.nb) if bip.b_masks[j] >> i & 1) for i in range(bip.na)]
    U = range(bip.nb) if U is None else [bip.side_b.index(u) for u in U]
    return branching_index_naive(a_nb, frozenset(U))


@st.composite
def bips(draw, max_a=5, max_b=5, min_a=1):
    na = draw(st.integers(min_a, max_a))
    nb = draw(st.integers(0, max_b))
    masks = draw(st.lists(st.integers(0, 2 ** na - 1), min_size=nb, max_size=nb))
    return bip_from_masks(na, masks)


def matching(n):
    return bip_from_masks(n, [1 << i for i in range(n)])


# ---------------------------------------------------------- branching index

def test_branching_examples():
    b = matching(3)
    assert branching_index(b, []) == -1
    same = bip_from_masks(3, [0b101, 0b101])
    assert branching_index(same) == 0
    assert branching_index(b) == 1 == naive(b)


@given(bips(), st.data())
@settings(max_examples=150)
def test_branching_matches_naive(b, data):
    U = data.draw(st.sets(st.sampled_from(b.side_b))) if b.nb else set()
    assert branching_index(b, U) == naive(b, U)


@given(bips(), st.data())
@settings(max_examples=80)
def test_branching_monotone(b, data):
    if not b.nb:
        return
    U = data.draw(st.sets(st.sampled_from(b.side_b)))
    V = data.draw(st.sets(st.sampled_from(sorted(U)))) if U else set()
    assert branching_index(b, V) <= branching_index(b, U)


def test_branching_cap_sentinel():
    h = semi_induced(pattern("half_graph", 8), range(8), range(8, 16))
    full = branching_index(h)
    assert full == naive(h)
    assert branching_index(h, cap=full) == full
    if full > 0:
        assert branching_index(h, cap=full - 1) is ABOVE_CAP


def test_branching_memo_budget():
    rng = np.random.default_rng(0)
    b = bip_from_masks(12, [int(x) for x in rng.integers(0, 2 ** 12, size=40)])
    with pytest.raises(SizeLimitExceeded):
        branching_index(b, memo_budget=3)


# ----------------------------------------------------------------- sampling

def test_sample_examples():
    b = bip_from_masks(2, [0b01] * 3)
    res = sample_unique_neighbor(b)
    assert res.X == (0,) and res.B_prime == b.side_b
    m = matching(5)
    res = sample_unique_neighbor(m)
    assert len(res.B_prime) >= res.bound


def test_sample_degree_zero():
    with pytest.raises(DegreeZeroVertex):
        sample_unique_neighbor(bip_from_masks(3, [0b1, 0]))


def _recount(b, res):
    X = set(res.X)
    pos = {a: i for i, a in enumerate(b.side_a)}
    for bv in res.B_prime:
        j = b.side_b.index(bv)
        assert sum(1 for a in X if b.b_masks[j] >> pos[a] & 1) == 1


@pytest.mark.parametrize("seed", range(5))
def test_sample_random_20x200(seed):
    rng = np.random.default_rng(seed)
    adj = rng.random((200, 20)) < 0.3
    adj[~adj.any(axis=1), 0] = True
    masks = [int(sum(1 << i for i in np.flatnonzero(row))) for row in adj]
    b = bip_from_masks(20, masks)
    res = sample_unique_neighbor(b, seed=seed)
    _recount(b, res)
    assert len(res.B_prime) >= 200 / (150 * math.log(20))


# ---------------------------------------------------------------- reduction

def test_reduce_d0():
    b = bip_from_masks(2, [0b11])
    res = reduce_neighborhoods(b, 0)
    assert res.B_prime == b.side_b and res.A_prime == () and res.G_final == b
    assert res.invariants["max_degree"] == 0


def test_reduce_matching():
    res = reduce_neighborhoods(matching(4), 1, seed=2)
    inv = res.invariants
    assert inv["degree_ok"] and inv["distinct_ok"] and inv["size_ok"]
    assert all(s.same_nbd_ok and s.same_split_ok for s in res.trace)


def test_reduce_half_graph():
    h = semi_induced(pattern("half_graph", 8), range(8), range(8, 16))
    d = branching_index(h)
    res = reduce_neighborhoods(h, d, seed=1)
    again = reduction_invariants(h, res.G_prime, d)
    assert again["degree_ok"] and again["distinct_ok"] and again["size_ok"]
    for bv, m in zip(res.G_prime.side_b, res.G_prime.b_masks):
        assert bin(m).count("1") <= d


def test_reduce_rejects_bad_input():
    with pytest.raises(BadParams):
        reduce_neighborhoods(bip_from_masks(2, [1, 1]), 2)
    with pytest.raises(BadParams):
        reduce_neighborhoods(bip_from_masks(1, [1]), 1)
    with pytest.raises(BranchingBoundViolated):
        reduce_neighborhoods(matching(4), 0)


# ------------------------------------------------------------ half-graphs

def test_halfgraph_examples():
    assert max_semi_induced_halfgraph(build_graph(4, []), 4)[0] == 0
    assert max_semi_induced_halfgraph(complete_graph(2), 3)[0] == 1
    n, (A, B) = max_semi_induced_halfgraph(pattern("half_graph", 4), 6)
    assert n == 4
    g = pattern("half_graph", 4)
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            assert g.has_edge(a, b) == (i <= j)


def test_halfgraph_limit_caps():
    assert max_semi_induced_halfgraph(pattern("half_graph", 5), 3)[0] == 3
    with pytest.raises(SizeLimitExceeded):
        max_semi_induced_halfgraph(pattern("half_graph", 2), 40)
