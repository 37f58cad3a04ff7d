import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stablecover.errors import EmptySet, FormatError, LoopEdge, OverlappingSides, SizeLimitExceeded, VertexOutOfRange
from stablecover.graph_core import (
    UNREACHABLE,
    all_pairs_distances,
    are_isomorphic,
    build_graph,
    canonical_form,
    check_isomorphism,
    complete_graph,
    disjoint_union,
    distances_from,
    from_edgelist,
    from_json,
    graph_from_packed,
    graph_power,
    grid_graph,
    induced_subgraph,
    semi_induced,
    to_edgelist,
    to_json,
    weak_diameter,
)
from stablecover.patterns import pattern

from oracles import adjacency, bfs, to_nx


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, keep in zip(pairs, mask) if keep])


# ------------------------------------------------------------------ build

def test_build_path_degrees():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert list(g.degree()) == [1, 2, 1]


def test_duplicates_collapse():
    assert build_graph(2, [(0, 1), (1, 0)]).m == 1


def test_loop_rejected():
    with pytest.raises(LoopEdge):
        build_graph(4, [(0, 0)])


def test_out_of_range():
    with pytest.raises(VertexOutOfRange):
        build_graph(2, [(0, 2)])


@given(graphs())
def test_adjacency_invariants(g):
    for v in range(g.n):
        nb = list(g.neighbors(v))
        assert nb == sorted(set(nb))
        assert v not in nb
        for u in nb:
            assert v in g.neighbors(u)


def test_packed_and_csr_agree():
    g = pattern("biweb", 3, 2, 3)
    h = graph_from_packed(g.n, g.packed())
    assert h.m == g.m
    assert list(h.edges()) == list(g.edges())
    assert h == g


# -------------------------------------------------------------- distances

def test_distances_path():
    assert list(distances_from(path(3), 0)) == [0, 1, 2]


def test_distances_disconnected():
    d = distances_from(build_graph(2, []), 0)
    assert d[1] == UNREACHABLE


def test_distances_c5():
    for v in range(5):
        assert sorted(distances_from(cycle(5), v)) == [0, 1, 1, 2, 2]


def test_distance_bad_vertex():
    with pytest.raises(VertexOutOfRange):
        distances_from(path(3), 3)


@given(graphs())
@settings(max_examples=60)
def test_all_pairs_against_bfs(g):
    D = all_pairs_distances(g)
    adj = adjacency(g)
    for u in range(g.n):
        ref = bfs(adj, u)
        for v in range(g.n):
            assert D[u, v] == ref.get(v, UNREACHABLE)


def test_power_identity_and_examples():
    g = cycle(7)
    assert graph_power(g, 1) == g
    assert graph_power(path(3), 2) == complete_graph(3)
    assert graph_power(cycle(5), 2) == complete_graph(5)


@given(graphs(10), st.integers(1, 4))
@settings(max_examples=60)
def test_power_distance_relation(g, r):
    D = all_pairs_distances(g)
    P = all_pairs_distances(graph_power(g, r))
    for u in range(g.n):
        for v in range(g.n):
            if D[u, v] >= 0:
                assert P[u, v] == math.ceil(D[u, v] / r)
            else:
                assert P[u, v] == UNREACHABLE


def test_weak_diameter():
    assert weak_diameter(path(4), [0]) == 0
    assert weak_diameter(path(4), [0, 3]) == 3
    assert weak_diameter(complete_graph(5), range(5)) == 1
    assert weak_diameter(build_graph(3, [(0, 1)]), [0, 2]) == math.inf
    with pytest.raises(EmptySet):
        weak_diameter(path(3), [])


# ------------------------------------------------------------ substructures

def test_induced_examples():
    sub, back = induced_subgraph(complete_graph(4), [0, 2, 3])
    assert sub == complete_graph(3) and back == (0, 2, 3)
    assert induced_subgraph(path(3), [])[0].n == 0
    h3 = pattern("half_graph", 3)
    # a1, a3, b2  ->  ids 0, 2, 4
    sub, _ = induced_subgraph(h3, [0, 2, 4])
    assert list(sub.edges()) == [(0, 2)]


@given(graphs())
def test_induced_whole_graph(g):
    assert induced_subgraph(g, range(g.n))[0] == g


def test_semi_induced_examples():
    k = semi_induced(complete_graph(4), [0, 1], [2, 3])
    assert k.m == 4
    assert semi_induced(build_graph(4, []), [0], [1, 2]).m == 0
    h = semi_induced(pattern("half_graph", 2), [0, 1], [2, 3])
    assert sorted(h.edges()) == [(0, 2), (0, 3), (1, 3)]
    with pytest.raises(OverlappingSides):
        semi_induced(path(3), [0, 1], [1, 2])


@given(graphs(), st.data())
@settings(max_examples=50)
def test_semi_induced_edge_count(g, data):
    side = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
    A = [v for v in range(g.n) if side[v] == 0]
    B = [v for v in range(g.n) if side[v] == 1]
    adj = adjacency(g)
    assert semi_induced(g, A, B).m == sum(1 for a in A for b in B if b in adj[a])


# -------------------------------------------------------------- isomorphism

def test_iso_examples():
    assert are_isomorphic(cycle(4), build_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)]))
    assert not are_isomorphic(cycle(6), disjoint_union([complete_graph(3), complete_graph(3)]))


def test_iso_witness_checks_out():
    g = pattern("web", 3, r=2)
    rng = np.random.default_rng(1)
    perm = rng.permutation(g.n)
    h = build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    w = are_isomorphic(g, h)
    assert w and check_isomorphism(g, h, w.mapping)


def test_iso_cap():
    with pytest.raises(SizeLimitExceeded):
        are_isomorphic(path(70), path(70))
    assert are_isomorphic(path(70), path(70), cap=None)


@given(graphs(8), graphs(8))
@settings(max_examples=80)
def test_iso_agrees_with_networkx(g, h):
    assert bool(are_isomorphic(g, h)) == nx.is_isomorphic(to_nx(g), to_nx(h))
    assert bool(are_isomorphic(g, h)) == bool(are_isomorphic(h, g))
    assert are_isomorphic(g, g)


@given(graphs(7), graphs(7))
@settings(max_examples=80)
def test_canonical_form_is_complete_invariant(g, h):
    same = canonical_form(g) == canonical_form(h)
    assert same == nx.is_isomorphic(to_nx(g), to_nx(h))


# ----------------------------------------------------------------------- I/O

@given(graphs())
def test_roundtrip_formats(g):
    assert from_edgelist(to_edgelist(g)) == g
    assert to_edgelist(from_edgelist(to_edgelist(g))) == to_edgelist(g)
    assert to_json(from_json(to_json(g))) == to_json(g)


def test_json_keeps_labels():
    g = pattern("biweb", 2, 2, 3)
    h = from_json(to_json(g))
    assert h.labels == g.labels


def test_edgelist_bad_header():
    with pytest.raises(FormatError):
        from_edgelist("3 2\n0 1\n")
    with pytest.raises(FormatError):
        from_edgelist("")


def test_grid_graph():
    g = grid_graph(3, 4)
    assert g.n == 12 and g.m == 3 * 3 + 2 * 4
    assert nx.is_isomorphic(to_nx(g), nx.grid_2d_graph(3, 4))
