from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stablecover.errors import AsymmetricR, BadParams, SizeLimitExceeded
from stablecover.graph_core import are_isomorphic, build_graph, canonical_form, check_isomorphism, complete_graph, induced_subgraph
from stablecover.patterns import (
    FlipSpec,
    PatternDescriptor,
    RocketWitness,
    apply_flip,
    bi_vertex,
    biweb_in_web,
    clique_vertex,
    count_iso_classes,
    generate_pattern,
    long_biclique_in_biclique,
    neighborhood_2k2_or_c4,
    pattern,
    ramsey_find,
    rook_web_embedding,
    semi_induced_k22,
    verify_rocket_witness,
)

from oracles import to_nx


# ------------------------------------------------------------- generators

def test_generator_counts():
    h = pattern("half_graph", 3)
    assert (h.n, h.m) == (6, 6)
    w = pattern("web", 3, r=2)
    assert (w.n, w.m) == (9, 12)
    rk = pattern("rook", 4)
    assert (rk.n, rk.m) == (16, 48) and set(rk.degree().tolist()) == {6}


def test_web_count_oracle():
    # independent count: (r+1) C(n,2) path edges + n C(n-1,2) cone edges
    for n in range(2, 6):
        for r in range(2, 5):
            g = pattern("web", n, r=r)
            assert g.n == n + r * n * (n - 1) // 2
            assert g.m == (r + 1) * n * (n - 1) // 2 + n * (n - 1) * (n - 2) // 2


def test_biweb_count_oracle():
    for n, m, r in [(2, 3, 2), (3, 3, 3), (4, 2, 4)]:
        g = pattern("biweb", n, m, r)
        assert g.n == n + m + n * m * r
        assert g.m == n * m * (r + 1) + n * m * (m - 1) // 2 + m * n * (n - 1) // 2


def test_half_graph_rule():
    g = pattern("half_graph", 5)
    for i in range(5):
        for j in range(5):
            assert g.has_edge(i, 5 + j) == (i <= j)


def test_rook_rule():
    g = pattern("rook", 3)
    for u, v in combinations(range(9), 2):
        (i, j), (k, l) = divmod(u, 3), divmod(v, 3)
        assert g.has_edge(u, v) == ((i == k) != (j == l))


def test_bad_descriptors():
    for d in [PatternDescriptor("web", 3, r=1), PatternDescriptor("biweb", 2, 2, 1),
              PatternDescriptor("subdivided_clique", 3, r=0), PatternDescriptor("half_graph", 0),
              PatternDescriptor("star", 3)]:
        with pytest.raises(BadParams):
            generate_pattern(d)


def test_generation_deterministic_and_labelled():
    a = pattern("biweb", 3, 4, 3)
    b = pattern("biweb", 3, 4, 3)
    assert a == b and a.labels == b.labels
    lay = a.labels["layer"]
    assert lay[:3] == (1, 1, 1) and lay[3:7] == (5,) * 4
    assert lay[bi_vertex(3, 4, 3, 1, 2, 2)] == 3
    assert sum(a.labels["native"]) == 7


@pytest.mark.parametrize("n,r", [(3, 2), (4, 3), (5, 2)])
def test_web_minus_cones_is_subdivided_clique(n, r):
    w = pattern("web", n, r=r)
    sc = pattern("subdivided_clique", n, r=r)
    cone = set()
    for v in range(n):
        nb = [clique_vertex(n, r, min(v, u), max(v, u), 1 if v < u else r) for u in range(n) if u != v]
        cone.update(combinations(sorted(nb), 2))
    kept = [e for e in w.edges() if e not in cone]
    assert build_graph(w.n, kept) == sc


@pytest.mark.parametrize("n,r", [(n, r) for n in range(1, 5) for r in range(2, 5)])
def test_biweb_inside_web(n, r):
    web = pattern("web", 2 * n, r=r)
    keep = biweb_in_web(n, r)
    sub, back = induced_subgraph(web, keep)
    bw = pattern("biweb", n, n, r)
    pos = {v: i for i, v in enumerate(back)}
    mapping = {}
    for p in range(n):
        for q in range(n):
            for k in range(r + 2):
                mapping[bi_vertex(n, n, r, p, q, k)] = pos[clique_vertex(2 * n, r, p, n + q, k)]
    assert check_isomorphism(bw, sub, mapping)
    if bw.n <= 40:
        assert are_isomorphic(bw, sub)


def test_long_biclique_inside_biclique():
    big = pattern("subdivided_biclique", 4, 4, 1)
    sub, _ = induced_subgraph(big, long_biclique_in_biclique(2, 1))
    assert are_isomorphic(sub, pattern("subdivided_biclique", 2, 2, 3))


# ------------------------------------------------------------------- flips

def test_flip_examples():
    g = pattern("web", 3, r=2)
    assert apply_flip(g, FlipSpec.make([1] * g.n, [])) == g
    k3 = complete_graph(3)
    assert apply_flip(k3, FlipSpec.make([1, 1, 1], [(1, 1)])).m == 0
    with pytest.raises(AsymmetricR):
        apply_flip(k3, FlipSpec.make([1, 2, 2], [(1, 2)]))


@given(st.integers(1, 20), st.data())
@settings(max_examples=60)
def test_flip_involution_and_recount(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = build_graph(n, [p for p, k in zip(pairs, mask) if k])
    k = data.draw(st.integers(1, 4))
    colors = data.draw(st.lists(st.integers(1, k), min_size=n, max_size=n))
    rel = data.draw(st.sets(st.tuples(st.integers(1, k), st.integers(1, k))))
    spec = FlipSpec.symmetric(colors, rel)
    h = apply_flip(g, spec)
    assert h.n == g.n
    assert all(not h.has_edge(v, v) for v in range(n))
    assert apply_flip(h, spec) == g
    flipped = [(u, v) for u, v in pairs if (colors[u], colors[v]) in spec.relation]
    in_g = sum(1 for u, v in flipped if g.has_edge(u, v))
    assert h.m == g.m - in_g + (len(flipped) - in_g)


# ----------------------------------------------------------------- rooks

@pytest.mark.parametrize("n", [2, 3, 4])
def test_rook_web_embedding(n):
    emb = rook_web_embedding(n)
    assert emb.verified
    assert len(emb.selected) == n + n * (n - 1)
    assert are_isomorphic(emb.web, emb.induced)
    assert check_isomorphism(emb.web, emb.induced, emb.mapping)


# ---------------------------------------------------------------- Ramsey

def test_ramsey_clique_examples():
    hit = ramsey_find("clique", np.ones((5, 5), dtype=int), 3)
    assert hit is not None and len(hit.part_a) == 3


def test_ramsey_r33():
    rng = np.random.default_rng(0)
    pairs = list(combinations(range(6), 2))
    for _ in range(300):
        col = np.zeros((6, 6), dtype=int)
        for (i, j), c in zip(pairs, rng.integers(0, 2, size=len(pairs))):
            col[i, j] = col[j, i] = c
        hit = ramsey_find("clique", col, 3)
        assert hit is not None
        a, b, c = hit.part_a
        assert col[a, b] == col[a, c] == col[b, c] == hit.color


def test_ramsey_c5_has_no_mono_triangle():
    col = np.zeros((5, 5), dtype=int)
    for i in range(5):
        col[i, (i + 1) % 5] = col[(i + 1) % 5, i] = 1
    assert ramsey_find("clique", col, 3) is None


def test_ramsey_biclique():
    col = np.array([[0, 1, 1], [1, 1, 0], [0, 1, 1]])
    hit = ramsey_find("biclique", col, 2)
    assert hit is not None
    assert all(col[x, y] == hit.color for x in hit.part_a for y in hit.part_b)
    assert ramsey_find("biclique", np.eye(3, dtype=int), 2) is None
    assert ramsey_find("biclique", np.eye(4, dtype=int), 2).color == 0
    assert ramsey_find("biclique", np.array([[0, 1], [1, 0]]), 2) is None


def test_ramsey_grid_constant():
    hit = ramsey_find("grid", np.zeros((3, 3, 3, 3), dtype=int), 2)
    assert hit is not None and len(hit.part_a) == 2 == len(hit.part_b)


def test_ramsey_caps():
    with pytest.raises(SizeLimitExceeded):
        ramsey_find("clique", np.zeros((19, 19)), 3)
    with pytest.raises(SizeLimitExceeded):
        ramsey_find("grid", np.zeros((6, 6, 6, 6)), 2)


# ---------------------------------------------------------------- rockets

def _rocket():
    edges = [(0, 2), (1, 3), (2, 4), (4, 3),
             (0, 5), (1, 6), (5, 7), (7, 8), (8, 6), (7, 9)]
    g = build_graph(10, edges)
    w = RocketWitness((0, 1), ((2, 3, 4), (5, 6, 7, 8, 9)), ((2, 3), (5, 6)), FlipSpec.make([1] * 10, []), 3)
    return g, w


def test_rocket_empty():
    ok, bad = verify_rocket_witness(build_graph(0, []), RocketWitness((), (), (), None, 2))
    assert ok and bad == []


def test_rocket_hand_built():
    g, w = _rocket()
    ok, bad = verify_rocket_witness(g, w)
    assert ok, bad


def test_rocket_mutation_fails_r2():
    g, w = _rocket()
    g2 = build_graph(10, list(g.edges()) + [(0, 4)])
    ok, bad = verify_rocket_witness(g2, w)
    assert not ok and any(v.startswith("R.2") for v in bad)


def test_rocket_path_too_long():
    g, w = _rocket()
    w2 = RocketWitness(w.A, w.B, w.C, w.flip, 2)
    ok, bad = verify_rocket_witness(g, w2)
    assert not ok and any(v.startswith("R.4") for v in bad)


def test_rocket_through_flip():
    g, w = _rocket()
    colors = [1, 1] + [2] * 8
    spec = FlipSpec.make(colors, [(1, 1)])
    # G has an A-A edge that the flip removes; the witness is checked in the flipped graph
    g2 = build_graph(10, list(g.edges()) + [(0, 1)])
    ok, bad = verify_rocket_witness(g2, RocketWitness(w.A, w.B, w.C, spec, 3))
    assert ok, bad


# --------------------------------------------------------- growth counting

def _classes_nx(host, n):
    reps = []
    for S in combinations(range(host.n), n):
        h = to_nx(induced_subgraph(host, S)[0])
        if not any(nx.is_isomorphic(h, r) for r in reps):
            reps.append(h)
    return len(reps)


def test_count_examples():
    assert count_iso_classes("rook", 1)[0] == 1
    assert count_iso_classes("subdivided_clique", 2, r=1)[0] == 2
    assert count_iso_classes("half_graph", 3)[0] == _classes_nx(pattern("half_graph", 6), 3)


@pytest.mark.parametrize("kind,r,n,big", [
    ("half_graph", None, 4, 6),
    ("subdivided_clique", 1, 3, 5),
    ("web", 2, 3, 6),
    ("rook", None, 3, 4),
    ("subdivided_biclique", 1, 3, 4),
])
def test_count_matches_bigger_host(kind, r, n, big):
    host = pattern(kind, big, big, r) if kind in ("biweb", "subdivided_biclique") else pattern(kind, big, r=r)
    assert count_iso_classes(kind, n, r)[0] == _classes_nx(host, n)


def test_count_caps():
    with pytest.raises(SizeLimitExceeded):
        count_iso_classes("rook", 8)
    with pytest.raises(SizeLimitExceeded):
        count_iso_classes("web", 7, r=4, subset_cap=1000)


# ------------------------------------------------- forbidden substructures

@pytest.mark.parametrize("n,r", [(n, r) for n in range(1, 5) for r in range(2, 5)])
def test_biweb_neighborhoods_avoid_2k2_and_c4(n, r):
    assert neighborhood_2k2_or_c4(pattern("biweb", n, n, r)) is None


def test_2k2_detector_fires():
    # a vertex adjacent to two disjoint edges
    g = build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)])
    assert neighborhood_2k2_or_c4(g) is not None


@pytest.mark.parametrize("n,r", [(n, r) for n in range(1, 5) for r in range(3, 5)])
def test_bicliques_have_no_semi_induced_k22(n, r):
    assert semi_induced_k22(pattern("subdivided_biclique", n, n, r)) is None


def test_short_biclique_has_k22():
    assert semi_induced_k22(pattern("subdivided_biclique", 2, 2, 1)) is None
    assert semi_induced_k22(build_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])) is not None
