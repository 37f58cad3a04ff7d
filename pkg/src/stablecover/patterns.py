"""Pattern generators, flips, the rook-to-web embedding, brute-force Ramsey searches,
rocket witness checks and counting of induced isomorphism classes."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import AsymmetricR, BadParams, SizeLimitExceeded
from .graph_core import (
    Graph,
    are_isomorphic,
    build_graph,
    canonical_form,
    check_isomorphism,
    graph_from_packed,
    induced_subgraph,
)

KINDS = ("half_graph", "subdivided_clique", "web", "biweb", "subdivided_biclique", "rook")


@dataclass(frozen=True)
class PatternDescriptor:
    kind: str
    n: int
    m: int | None = None
    r: int | None = None

    def validate(self):
        if self.kind not in KINDS:
            raise BadParams(f"unknown pattern kind {self.kind!r}")
        if self.n is None or self.n < 1:
            raise BadParams("n must be >= 1")
        if self.kind in ("biweb", "subdivided_biclique"):
            if self.m is not None and self.m < 1:
                raise BadParams("m must be >= 1")
        if self.kind in ("subdivided_clique", "subdivided_biclique"):
            if self.r is None or self.r < 1:
                raise BadParams(f"{self.kind} needs r >= 1")
        if self.kind in ("web", "biweb"):
            if self.r is None or self.r < 2:
                raise BadParams(f"{self.kind} needs r >= 2")
        return self


# --------------------------------------------------------------- numbering

def bi_vertex(n: int, m: int, r: int, p: int, q: int, k: int) -> int:
    """Id of the k-th vertex on the path from A-native p to B-native q.

    k = 0 is the A-native, k = r+1 the B-native, 1..r the subdivision vertices.
    """
    if k == 0:
        return p
    if k == r + 1:
        return n + q
    return n + m + (p * m + q) * r + (k - 1)


def clique_vertex(n: int, r: int, i: int, j: int, k: int) -> int:
    """k-th vertex on the subdivided edge i<j, counted from i (k=0 is i, k=r+1 is j)."""
    if k == 0:
        return i
    if k == r + 1:
        return j
    e = i * n - i * (i + 1) // 2 + (j - i - 1)   # lexicographic index of the pair
    return n + e * r + (k - 1)


def _clique_edges(vs):
    return [(a, b) for a, b in combinations(vs, 2)]


def _half_graph(n):
    edges = [(i, n + j) for i in range(n) for j in range(i, n)]
    labels = {"side": [0] * n + [1] * n, "index": list(range(1, n + 1)) * 2,
              "native": [1] * (2 * n)}
    return build_graph(2 * n, edges, labels)


def _subdivided_clique(n, r, cones):
    pairs = list(combinations(range(n), 2))
    total = n + len(pairs) * r
    edges = []
    for i, j in pairs:
        path = [clique_vertex(n, r, i, j, k) for k in range(r + 2)]
        edges.extend(zip(path, path[1:]))
    if cones:
        for v in range(n):
            nb = [clique_vertex(n, r, min(v, u), max(v, u), 1 if v < u else r) for u in range(n) if u != v]
            edges.extend(_clique_edges(nb))
    labels = {"native": [1] * n + [0] * (total - n)}
    return build_graph(total, edges, labels)


def _bipartite_subdivided(n, m, r, cones):
    total = n + m + n * m * r
    edges = []
    layer = [0] * total
    pa = [-1] * total
    pb = [-1] * total
    for p in range(n):
        layer[p] = 1
        pa[p] = p
    for q in range(m):
        layer[n + q] = r + 2
        pb[n + q] = q
    for p in range(n):
        for q in range(m):
            path = [bi_vertex(n, m, r, p, q, k) for k in range(r + 2)]
            edges.extend(zip(path, path[1:]))
            for k in range(1, r + 1):
                v = path[k]
                layer[v] = k + 1
                pa[v] = p
                pb[v] = q
    if cones:
        for p in range(n):
            edges.extend(_clique_edges([bi_vertex(n, m, r, p, q, 1) for q in range(m)]))
        for q in range(m):
            edges.extend(_clique_edges([bi_vertex(n, m, r, p, q, r) for p in range(n)]))
    labels = {
        "native": [1] * (n + m) + [0] * (n * m * r),
        "layer": layer,
        "pa": pa,
        "pb": pb,
    }
    return build_graph(total, edges, labels)


def _rook(n):
    edges = []
    for i in range(n):
        for j in range(n):
            v = i * n + j
            edges.extend((v, i * n + jj) for jj in range(j + 1, n))
            edges.extend((v, ii * n + j) for ii in range(i + 1, n))
    labels = {"row": [v // n for v in range(n * n)], "col": [v % n for v in range(n * n)]}
    return build_graph(n * n, edges, labels)


def generate_pattern(desc: PatternDescriptor) -> Graph:
    """Build the pattern graph with the canonical numbering.

    Natives come first (A side then B side for bipartite kinds), followed by the
    subdivision vertices ordered by (edge, position along the edge).
    """
    desc.validate()
    k, n = desc.kind, desc.n
    if k == "half_graph":
        return _half_graph(n)
    if k == "subdivided_clique":
        return _subdivided_clique(n, desc.r, cones=False)
    if k == "web":
        return _subdivided_clique(n, desc.r, cones=True)
    if k == "biweb":
        return _bipartite_subdivided(n, desc.m or n, desc.r, cones=True)
    if k == "subdivided_biclique":
        return _bipartite_subdivided(n, desc.m or n, desc.r, cones=False)
    return _rook(n)


def pattern(kind: str, n: int, m: int | None = None, r: int | None = None) -> Graph:
    return generate_pattern(PatternDescriptor(kind, n, m, r))


# ------------------------------------------------------------------- flips

@dataclass(frozen=True)
class FlipSpec:
    """Vertex colouring plus a symmetric relation on colours."""
    colors: tuple
    relation: frozenset

    @classmethod
    def make(cls, colors: Iterable[int], relation: Iterable[Sequence[int]]):
        return cls(tuple(int(c) for c in colors), frozenset((int(a), int(b)) for a, b in relation))

    @classmethod
    def symmetric(cls, colors, relation):
        rel = set()
        for a, b in relation:
            rel.add((int(a), int(b)))
            rel.add((int(b), int(a)))
        return cls(tuple(int(c) for c in colors), frozenset(rel))

    @property
    def palette(self) -> tuple:
        return tuple(sorted(set(self.colors)))

    def check(self):
        for a, b in self.relation:
            if (b, a) not in self.relation:
                raise AsymmetricR(f"relation has ({a},{b}) but not ({b},{a})")


def apply_flip(g: Graph, spec: FlipSpec) -> Graph:
    """uv is an edge of the result iff (uv ∈ E(g)) XOR ((λ(u), λ(v)) ∈ R), for u != v."""
    spec.check()
    if len(spec.colors) != g.n:
        raise BadParams("colouring must cover every vertex")
    if not spec.relation:
        return g.with_labels(g.labels)
    n = g.n
    lam = np.asarray(spec.colors, dtype=np.int64)
    pal = sorted(set(spec.colors) | {a for a, _ in spec.relation})
    idx = {c: i for i, c in enumerate(pal)}
    li = np.array([idx[c] for c in spec.colors], dtype=np.int64)
    rel = np.zeros((len(pal), len(pal)), dtype=bool)
    for a, b in spec.relation:
        rel[idx[a], idx[b]] = True
    # one packed row pattern per colour, then XOR row by row
    rows = np.packbits(rel[:, li], axis=1)
    out = np.bitwise_xor(g.packed(), rows[li])
    diag = np.arange(n)
    out[diag, diag >> 3] &= ~(128 >> (diag & 7)).astype(np.uint8)
    del lam
    return graph_from_packed(n, out, g.labels)


def layer_flip_spec(g: Graph, lc: Sequence[int], relation) -> FlipSpec:
    """Colour each vertex by lc of its layer (lc[0] is the colour of layer 1)."""
    layers = g.labels["layer"]
    return FlipSpec.make([lc[l - 1] for l in layers], relation)


# -------------------------------------------------------------- rooks/webs

@dataclass(frozen=True)
class RookWebEmbedding:
    rook: Graph
    flip: FlipSpec
    selected: tuple
    induced: Graph
    web: Graph
    mapping: dict      # web vertex -> position in ``induced``
    verified: bool


def rook_web_embedding(n: int) -> RookWebEmbedding:
    """A 1-flip of the rook graph on an n² x n² board containing the 2-web of order n.

    Row 1 cells (1, i), i <= n, are complemented among themselves. The pair {i, j}
    is sent to row f({i,j}) = 2 + (lexicographic index of the pair); the cells
    (f, i) and (f, j) carry the subdivided edge.
    """
    if n < 2:
        raise BadParams("rook embedding needs n >= 2")
    N = n * n
    rook = pattern("rook", N)

    def cell(row, col):  # 1-based
        return (row - 1) * N + (col - 1)

    top = [cell(1, i) for i in range(1, n + 1)]
    colors = [2] * (N * N)
    for v in top:
        colors[v] = 1
    spec = FlipSpec.make(colors, [(1, 1)])
    web = pattern("web", n, r=2)
    chosen = {}
    for i in range(n):
        chosen[i] = cell(1, i + 1)
    for e, (i, j) in enumerate(combinations(range(n), 2)):
        row = 2 + e
        chosen[clique_vertex(n, 2, i, j, 1)] = cell(row, i + 1)
        chosen[clique_vertex(n, 2, i, j, 2)] = cell(row, j + 1)
    flipped = apply_flip(rook, spec)
    sub, back = induced_subgraph(flipped, chosen.values())
    pos = {v: i for i, v in enumerate(back)}
    mapping = {w: pos[c] for w, c in chosen.items()}
    ok = check_isomorphism(web, sub, mapping) and bool(are_isomorphic(web, sub))
    return RookWebEmbedding(rook, spec, tuple(back), sub, web, mapping, ok)


def biweb_in_web(n: int, r: int) -> tuple:
    """Vertices of the r-web of order 2n inducing the (n, n) r-biweb: all natives and
    the paths joining the first n natives to the last n."""
    keep = list(range(2 * n))
    for i in range(n):
        for j in range(n, 2 * n):
            keep.extend(clique_vertex(2 * n, r, i, j, k) for k in range(1, r + 1))
    return tuple(sorted(keep))


def long_biclique_in_biclique(n: int, r: int) -> tuple:
    """Vertices of the r-biclique of order n² inducing the (2r+1)-biclique of order n.

    A-natives 0..n-1 of the big graph play the small A side, A-natives n..2n-1
    the small B side; the pair (i, j) is routed through B-native i*n + j.
    """
    N = n * n
    if N < 2 * n:
        raise BadParams("needs n >= 2")
    keep = set(range(2 * n))
    for i in range(n):
        for j in range(n):
            q = i * n + j
            keep.add(bi_vertex(N, N, r, i, q, r + 1))
            for k in range(1, r + 1):
                keep.add(bi_vertex(N, N, r, i, q, k))
                keep.add(bi_vertex(N, N, r, n + j, q, k))
    return tuple(sorted(keep))


# ------------------------------------------------------------------ Ramsey

RAMSEY_CAPS = {"clique": 18, "biclique": 12, "grid": 5}


@dataclass(frozen=True)
class RamseyHit:
    kind: str
    color: object          # a colour (clique/biclique) or the atp -> colour table (grid)
    part_a: tuple
    part_b: tuple = ()


def _mono_clique(adj, n, size):
    def rec(chosen, cand):
        if len(chosen) == size:
            return list(chosen)
        if len(chosen) + bin(cand).count("1") < size:
            return None
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            got = rec(chosen + [v], cand & adj[v])
            if got:
                return got
        return None

    return rec([], (1 << n) - 1)


def _otp(x, y):
    return 0 if x < y else (1 if x == y else 2)


def ramsey_find(kind: str, coloring, target: int):
    """Exhaustive search for a monochromatic clique or biclique, or a homogeneous subgrid.

    clique: symmetric N x N colour matrix (diagonal ignored), finds target vertices
    with one colour on all pairs. biclique: N_A x N_B matrix, finds X, Y of size
    target with one colour on X x Y. grid: colour array of shape (N, N, N, N)
    indexed by two grid cells; finds I, J of size target so that on the subgrid
    I x J the colour of a pair of cells depends only on the pair of order types
    of their coordinates. Returns None when nothing exists.
    """
    col = np.asarray(coloring)
    cap = RAMSEY_CAPS.get(kind)
    if cap is None:
        raise BadParams(f"unknown Ramsey kind {kind!r}")
    if max(col.shape) > cap:
        raise SizeLimitExceeded(f"{kind} host capped at {cap}")
    if target <= 0:
        return RamseyHit(kind, None, ())
    if kind == "clique":
        n = col.shape[0]
        for c in sorted(set(col[np.triu_indices(n, 1)].tolist())):
            adj = []
            for v in range(n):
                m = 0
                for u in range(n):
                    if u != v and col[v, u] == c:
                        m |= 1 << u
                adj.append(m)
            got = _mono_clique(adj, n, target)
            if got:
                return RamseyHit(kind, c, tuple(got))
        if target == 1 and n >= 1:
            return RamseyHit(kind, None, (0,))
        return None
    if kind == "biclique":
        na, nb = col.shape
        for c in sorted(set(col.ravel().tolist())):
            for X in combinations(range(na), target):
                Y = [b for b in range(nb) if all(col[x, b] == c for x in X)]
                if len(Y) >= target:
                    return RamseyHit(kind, c, X, tuple(Y[:target]))
        return None
    N = col.shape[0]
    for I in combinations(range(N), target):
        for J in combinations(range(N), target):
            cells = [(i, j) for i in I for j in J]
            table = {}
            ok = True
            for a in cells:
                for b in cells:
                    key = (_otp(a[0], b[0]), _otp(a[1], b[1]))
                    c = col[a[0], a[1], b[0], b[1]]
                    if table.setdefault(key, c) != c:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return RamseyHit(kind, {k: int(v) for k, v in table.items()}, I, J)
    return None


# ---------------------------------------------------------------- rockets

@dataclass(frozen=True)
class RocketWitness:
    A: tuple
    B: tuple          # tuple of vertex tuples B_1..B_n
    C: tuple          # C_i ⊆ B_i
    flip: FlipSpec | None
    rho: int


def verify_rocket_witness(g: Graph, w: RocketWitness):
    """Check R.1-R.4 in the flipped graph. Returns (ok, list of violations)."""
    H = apply_flip(g, w.flip) if w.flip is not None else g
    bad = []
    A = list(w.A)
    n = len(A)
    if len(w.B) != n or len(w.C) != n:
        bad.append(f"R.0: expected {n} sets B_i and C_i, got {len(w.B)} and {len(w.C)}")
        return False, bad
    allsets = [set(A)] + [set(b) for b in w.B]
    seen = set()
    for s in allsets:
        if seen & s:
            bad.append("R.0: A and the B_i are not pairwise disjoint")
            break
        seen |= s
    for i, (Bi, Ci) in enumerate(zip(w.B, w.C)):
        if not set(Ci) <= set(Bi):
            bad.append(f"R.0: C_{i + 1} is not inside B_{i + 1}")
    if bad:
        return False, bad
    adj = H.adj_sets()
    for i, (Bi, Ci) in enumerate(zip(w.B, w.C)):
        Ci_set = set(Ci)
        # R.1: A and C_i form an induced perfect matching between the two sides
        if len(Ci) != n:
            bad.append(f"R.1: |C_{i + 1}| = {len(Ci)} != |A| = {n}")
        for a in A:
            k = len(adj[a] & Ci_set)
            if k != 1:
                bad.append(f"R.1: vertex {a} of A has {k} neighbors in C_{i + 1}")
        Aset = set(A)
        for c in Ci:
            k = len(adj[c] & Aset)
            if k != 1:
                bad.append(f"R.1: vertex {c} of C_{i + 1} has {k} neighbors in A")
        D = set(Bi) - Ci_set
        # R.2
        for a in A:
            hit = adj[a] & D
            if hit:
                bad.append(f"R.2: edge {a}-{min(hit)} between A and B_{i + 1}\\C_{i + 1}")
        # R.3
        for j, Bj in enumerate(w.B):
            if j == i:
                continue
            Bj_set = set(Bj)
            for x in D:
                hit = adj[x] & Bj_set
                if hit:
                    bad.append(f"R.3: edge {x}-{min(hit)} between B_{i + 1}\\C_{i + 1} and B_{j + 1}")
                    break
        # R.4: every pair in C_i joined through D by a path of length 2..rho
        for u, v in combinations(Ci, 2):
            if _inner_path_length(adj, u, v, D) > w.rho:
                bad.append(f"R.4: no path of length <= {w.rho} between {u} and {v} inside B_{i + 1}\\C_{i + 1}")
    return not bad, bad


def _inner_path_length(adj, u, v, D):
    """Shortest u-v path whose interior lies in D and is nonempty (length >= 2)."""
    start = adj[u] & D
    goal = adj[v] & D
    if not start or not goal:
        return math.inf
    dist = {x: 1 for x in start}
    frontier = list(start)
    while frontier:
        nxt = []
        for x in frontier:
            if x in goal:
                return dist[x] + 1
        for x in frontier:
            for y in adj[x] & D:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return math.inf


# ------------------------------------------------------ growth counting

ISO_SUBSET_CAP = 3_000_000


def _sufficient_host(kind: str, n: int):
    """A host order large enough that every n-vertex induced subgraph of the family appears."""
    if kind == "half_graph":
        return n
    if kind in ("subdivided_clique", "web"):
        return max(2 * n, 2)
    if kind in ("biweb", "subdivided_biclique"):
        return n
    if kind == "rook":
        return n
    raise BadParams(kind)


def count_iso_classes(kind: str, n: int, r: int | None = None, subset_cap: int = ISO_SUBSET_CAP):
    """Number of isomorphism classes among n-vertex induced subgraphs of the family.

    The host is the smallest member that provably contains all of them (each
    n-vertex induced subgraph touches at most n, resp. 2n, native positions);
    the count is also compared against the next smaller host, as a stability check.
    Returns (count, host_order).
    """
    if n > 7:
        raise SizeLimitExceeded("counting capped at n <= 7")
    if n <= 0:
        return (1, 0)
    h = _sufficient_host(kind, n)

    def host(order):
        if kind in ("biweb", "subdivided_biclique"):
            return pattern(kind, order, order, r)
        return pattern(kind, order, r=r)

    g = host(h)
    if math.comb(g.n, n) > subset_cap:
        raise SizeLimitExceeded(f"{math.comb(g.n, n)} subsets of a {g.n}-vertex host exceed the cap")
    return (len(_iso_classes(g, n)), h)


def _iso_classes(g: Graph, n: int) -> set:
    keys = set()
    masks = g.adj_masks()
    cache = {}
    for S in combinations(range(g.n), n):
        # relabelled adjacency of the subset, then canonical form (cached by raw form)
        raw = tuple(masks[S[i]] >> S[j] & 1 for i in range(n) for j in range(i + 1, n))
        k = cache.get(raw)
        if k is None:
            edges = []
            t = 0
            for i in range(n):
                for j in range(i + 1, n):
                    if raw[t]:
                        edges.append((i, j))
                    t += 1
            k = canonical_form(build_graph(n, edges))
            cache[raw] = k
        keys.add(k)
    return keys


# ------------------------------------------------- forbidden substructures

def neighborhood_2k2_or_c4(g: Graph):
    """First (v, quadruple) such that N(v) contains an induced 2K2 or C4, else None."""
    adj = g.adj_sets()
    for v in range(g.n):
        nb = sorted(adj[v])
        for quad in combinations(nb, 4):
            e = [(a, b) for a, b in combinations(quad, 2) if b in adj[a]]
            if len(e) == 2:
                (a, b), (c, d) = e
                if len({a, b, c, d}) == 4:
                    return v, quad
            elif len(e) == 4:
                deg = {x: 0 for x in quad}
                for a, b in e:
                    deg[a] += 1
                    deg[b] += 1
                if all(x == 2 for x in deg.values()):
                    return v, quad
    return None


def semi_induced_k22(g: Graph):
    """Two vertices with two common neighbors (a semi-induced K_{2,2}), else None."""
    adj = g.adj_sets()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            common = adj[u] & adj[v]
            if len(common) >= 2:
                return (u, v), tuple(sorted(common)[:2])
    return None
