"""Encoding arbitrary graphs into r-biwebs and r-bicliques, the existential
interpretation that reads them back, and undoing layer flips by majority votes
against probe sets."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import BadParams, ColorUndetermined, InvariantViolation, NotAutomorphism, NotPopular, ParameterTooSmall
from .graph_core import Graph, all_pairs_distances, build_graph, disjoint_union, induced_subgraph
from .patterns import FlipSpec, apply_flip, bi_vertex, pattern
from .rng import substream

VARIANTS = ("biweb", "biclique")
_PATTERN_KIND = {"biweb": "biweb", "biclique": "subdivided_biclique"}
DEFAULT_S = 5


def _check_variant(variant):
    if variant not in VARIANTS:
        raise BadParams(f"variant must be one of {VARIANTS}")


# ----------------------------------------------------------- colour graphs

def neighborhoods(c: int, R) -> list:
    """N_M(i) for i = 1..c, as frozensets (index 0 unused)."""
    out = [frozenset()]
    for i in range(1, c + 1):
        out.append(frozenset(j for j in range(1, c + 1) if (i, j) in R))
    return out


def merge_twins(lc, R):
    """Merge twin colours (equal neighborhoods in M = ([c], R)) into the lowest id,
    then renumber the surviving colours 1..c in increasing order.

    Returns (lc', R', c').
    """
    lc = [int(x) for x in lc]
    R = {(int(a), int(b)) for a, b in R}
    R |= {(b, a) for a, b in R}
    colors = sorted(set(lc))
    while True:
        nb = {i: frozenset(j for j in colors if (i, j) in R) for i in colors}
        pair = next(((i, j) for i in colors for j in colors if i < j and nb[i] == nb[j]), None)
        if pair is None:
            break
        keep, drop = pair
        lc = [keep if x == drop else x for x in lc]
        colors.remove(drop)
        R = {(a, b) for a, b in R if a != drop and b != drop}
    ren = {c: k + 1 for k, c in enumerate(colors)}
    return [ren[x] for x in lc], frozenset((ren[a], ren[b]) for a, b in R if a in ren and b in ren), len(colors)


def random_layer_spec(c: int, ell: int, rng):
    """Random surjective lc: layers -> [c] and symmetric R with M twin-free and exactly c colours."""
    if c > ell:
        raise BadParams("cannot use more colours than layers")
    for _ in range(10_000):
        lc = list(rng.permutation(np.resize(np.arange(1, c + 1), ell)))
        R = set()
        for i in range(1, c + 1):
            for j in range(i, c + 1):
                if rng.random() < 0.5:
                    R.add((i, j))
                    R.add((j, i))
        lc2, R2, c2 = merge_twins(lc, R)
        if c2 == c:
            return [int(x) for x in lc2], R2
    raise BadParams(f"no twin-free relation found for c={c}")


# ---------------------------------------------------------- layered flips

@dataclass(frozen=True)
class LayeredPattern:
    graph: Graph              # the unflipped pattern of order t
    flipped: Graph
    t: int
    r: int
    lc: tuple                 # lc[k-1] is the colour of layer k
    R: frozenset
    variant: str

    @property
    def ell(self) -> int:
        return self.r + 2

    @property
    def c(self) -> int:
        return len(set(self.lc))

    @property
    def exceptional(self) -> frozenset:
        return frozenset({self.lc[1], self.lc[self.ell - 2]})

    def layers(self) -> list:
        """Vertex lists L_1..L_ell (index 0 unused)."""
        out = [[] for _ in range(self.ell + 1)]
        for v, lay in enumerate(self.graph.labels["layer"]):
            out[lay].append(v)
        return out


def layer_coloring(g: Graph, lc) -> list:
    return [int(lc[lay - 1]) for lay in g.labels["layer"]]


def canonical_flip(t: int, r: int, lc, R, variant: str = "biweb"):
    """Merge twin colours, then flip the order-t pattern layer by layer.

    Returns (LayeredPattern, flipped graph).
    """
    _check_variant(variant)
    if len(lc) != r + 2:
        raise BadParams(f"lc needs one colour per layer ({r + 2})")
    lc2, R2, _ = merge_twins(lc, R)
    g = pattern(_PATTERN_KIND[variant], t, t, r)
    flipped = apply_flip(g, FlipSpec(tuple(layer_coloring(g, lc2)), R2))
    return LayeredPattern(g, flipped, t, r, tuple(lc2), R2, variant), flipped


# ---------------------------------------------------------------- probes

@dataclass(frozen=True)
class ProbeSets:
    sets: tuple               # sets[i-1] = W_i, vertex ids
    s: int
    layers: tuple             # layer each W_i was drawn from
    batches: tuple            # batch id of each vertex of W_i (cone it sits in), or () if not exceptional
    offset: int = 0

    def shifted(self, offset: int) -> "ProbeSets":
        return ProbeSets(tuple(tuple(v + offset for v in W) for W in self.sets), self.s, self.layers,
                         self.batches, self.offset + offset)


def select_probes(p: LayeredPattern, s: int = DEFAULT_S, faithful: bool = False) -> ProbeSets:
    """One probe set per colour, each drawn from its own order-s^2 copy of the pattern.

    Colour i uses natives [(i-1)s^2, i s^2) on both sides. Exceptional colours take
    s batches of s vertices from s different cones; other colours take s^2 vertices
    of one layer. All properties are rechecked on the flipped pattern before returning.
    """
    c = p.c
    if faithful:
        if c != 1:
            raise BadParams("the large probe parameter is only supported for c = 1")
        s = 8 * c * p.ell + (1 - (8 * c * p.ell) % 2)
    if s < 3 or s % 2 == 0:
        raise ParameterTooSmall("s must be odd and at least 3")
    if p.t < c * s * s:
        raise ParameterTooSmall(f"t = {p.t} < c*s^2 = {c * s * s}")
    t, r, ell = p.t, p.r, p.ell
    X = p.exceptional
    sets, layers, batches = [], [], []
    for i in range(1, c + 1):
        base = (i - 1) * s * s
        cand = [k for k in range(1, ell + 1) if p.lc[k - 1] == i]
        if i in X:
            cand = [k for k in cand if k in (2, ell - 1)]
        L = cand[0]
        first = range(base, base + s)
        if L == 2:
            W = [bi_vertex(t, t, r, a, b, 1) for a in first for b in first]
            bt = [a - base for a in first for b in first]
        elif L == ell - 1:
            W = [bi_vertex(t, t, r, a, b, r) for b in first for a in first]
            bt = [b - base for b in first for a in first]
        elif L == 1:
            W = list(range(base, base + s * s))
            bt = []
        elif L == ell:
            W = [t + q for q in range(base, base + s * s)]
            bt = []
        else:
            W = [bi_vertex(t, t, r, a, b, L - 1) for a in first for b in first]
            bt = []
        sets.append(tuple(W))
        layers.append(L)
        batches.append(tuple(bt))
    probes = ProbeSets(tuple(sets), s, tuple(layers), tuple(batches))
    bad = probe_violations(p, probes)
    if bad:
        raise InvariantViolation("; ".join(bad))
    return probes


def _block(g: Graph, X, Y) -> np.ndarray:
    rows = np.unpackbits(g.packed()[list(X)], axis=1, count=g.n).astype(bool)
    return rows[:, list(Y)]


def probe_violations(p: LayeredPattern, probes: ProbeSets, g: Graph | None = None) -> list:
    """Recount P.1-P.5 (P.3 replaced by its star version for bicliques) in the flipped pattern."""
    g = p.flipped if g is None else g
    layer = p.graph.labels["layer"]
    off = probes.offset
    X = p.exceptional
    s = probes.s
    bad = []
    for idx, W in enumerate(probes.sets):
        i = idx + 1
        lays = {layer[v - off] for v in W}
        if len(lays) != 1 or p.lc[next(iter(lays)) - 1] != i:
            bad.append(f"P.1: W_{i} not inside one layer of colour {i}")
        if len(set(W)) != s * s:
            bad.append(f"P.2: |W_{i}| = {len(set(W))} != {s * s}")
        blk = _block(g, W, W)
        loop = (i, i) in p.R
        off_diag = ~np.eye(len(W), dtype=bool)
        if i in X:
            bt = np.array(probes.batches[idx])
            if len(bt) != len(W) or len(set(bt.tolist())) != s:
                bad.append(f"P.3: W_{i} is not {s} batches")
                continue
            if p.variant == "biweb":
                want = (bt[:, None] == bt[None, :]) ^ loop
            else:
                want = np.full(blk.shape, loop)
            if not np.array_equal(blk[off_diag], want[off_diag]):
                bad.append(f"P.3: W_{i} has the wrong internal structure")
        else:
            if not (blk[off_diag] == loop).all():
                bad.append(f"P.4: W_{i} is neither independent nor a clique as required")
        for jdx, Wj in enumerate(probes.sets):
            j = jdx + 1
            if j <= i:
                continue
            pb = _block(g, W, Wj)
            if not (pb == ((i, j) in p.R)).all():
                bad.append(f"P.5: W_{i}, W_{j} not homogeneous as R requires")
    return bad


# ------------------------------------------------------ colour prediction

def adjacency_counts(flipG: Graph, probes: ProbeSets) -> np.ndarray:
    """counts[v, j-1] = number of neighbors of v in A_j."""
    pk = flipG.packed()
    out = np.zeros((flipG.n, len(probes.sets)), dtype=np.int64)
    for j, A in enumerate(probes.sets):
        # adjacency is symmetric, so rows of A give the column counts for every v
        out[:, j] = np.unpackbits(pk[list(A)], axis=1, count=flipG.n).sum(axis=0)
    return out


def predicted_colors(flipG: Graph, probes: ProbeSets, R, c: int) -> np.ndarray:
    """predictedCol for every vertex: the colour i with {j : v sees >= half of A_j} = N_M(i)."""
    counts = adjacency_counts(flipG, probes)
    sizes = np.array([len(A) for A in probes.sets])
    major = 2 * counts >= sizes[None, :]
    nb = neighborhoods(c, R)
    sig = {}
    for i in range(1, c + 1):
        key = tuple(j in nb[i] for j in range(1, c + 1))
        sig.setdefault(key, i)
    keys = [tuple(row) for row in major.tolist()]
    pc = np.zeros(flipG.n, dtype=np.int64)
    for v, key in enumerate(keys):
        col = sig.get(key)
        if col is None:
            raise ColorUndetermined(f"vertex {v} matches no colour")
        pc[v] = col
    return pc


def decode_flip(flipG: Graph, probes: ProbeSets, p: LayeredPattern) -> Graph:
    """XOR every pair whose predicted colours are related in R."""
    pc = predicted_colors(flipG, probes, p.R, p.c)
    return apply_flip(flipG, FlipSpec(tuple(int(x) for x in pc), p.R))


@dataclass(frozen=True)
class PopularResult:
    f: tuple                  # f[i-1] = f*(i)
    counts: tuple             # counts[i-1][k-1] = vertices of colour k in A_i
    majority: bool            # every A_i has more than the variant's majority share of colour f*(i)
    popular_functions: int


def popular_function(flipG: Graph, probes: ProbeSets, colors, R, c: int, variant: str = "biweb") -> PopularResult:
    """The plurality colour map of the probe sets, certified as an automorphism of M.

    Every popular map (each A_i holds >= |A_i|/(4c) vertices of colour f(i)) is
    enumerated and checked for injectivity and the strong homomorphism property.
    """
    colors = np.asarray(colors)
    counts = []
    options = []
    for idx, A in enumerate(probes.sets):
        cnt = np.bincount(colors[list(A)], minlength=c + 1)[1:c + 1]
        counts.append(tuple(int(x) for x in cnt))
        ok = [k + 1 for k in range(c) if 4 * c * cnt[k] >= len(A)]
        if not ok:
            raise NotPopular(f"A_{idx + 1} has no colour reaching the popularity threshold")
        options.append(ok)
    nfun = 0
    for f in product(*options):
        nfun += 1
        if len(set(f)) != c:
            raise NotAutomorphism(f"popular map {f} is not injective")
        for i in range(1, c + 1):
            for j in range(1, c + 1):
                if ((i, j) in R) != ((f[i - 1], f[j - 1]) in R):
                    raise NotAutomorphism(f"popular map {f} breaks R on ({i},{j})")
    fstar = tuple(int(np.argmax(cn)) + 1 for cn in counts)
    share = 3 / 4 if variant == "biweb" else 1 / 2
    maj = all(counts[i][fstar[i] - 1] > share * len(A) for i, A in enumerate(probes.sets))
    return PopularResult(fstar, tuple(counts), maj, nfun)


def predicted_adjacency_violations(flipG: Graph, probes: ProbeSets, colors, R, fstar) -> int:
    """Vertices v and colours j where "v sees >= half of A_j" disagrees with (colour(v), f*(j)) in R."""
    counts = adjacency_counts(flipG, probes)
    sizes = np.array([len(A) for A in probes.sets])
    major = 2 * counts >= sizes[None, :]
    colors = np.asarray(colors)
    c = len(probes.sets)
    rel = np.zeros((max(int(colors.max()), c) + 1, c), dtype=bool)
    for a in range(rel.shape[0]):
        for j in range(c):
            rel[a, j] = (a, fstar[j]) in R
    return int((major != rel[colors]).sum())


# ----------------------------------------------------------------- encode

@dataclass(frozen=True)
class EncodedInstance:
    host: Graph
    source: Graph
    r: int
    t: int
    variant: str
    anchors: dict             # source vertex -> host vertex c_v
    pattern_offset: int       # host id of the first vertex of the order-t pattern
    meta: dict = field(default_factory=dict, compare=False)


def _biweb_gadgets(G: Graph, r: int, t: int):
    """Vertex set of B_G inside the biweb W^r_{n+2, n+m+t+1}, plus the anchors."""
    n = G.n
    E = list(G.edges())
    m = len(E)
    NA, NB = n + 2, n + m + t + 1
    V = lambda p, q, k: bi_vertex(NA, NB, r, p, q, k)
    q_vert = list(range(n))
    q_edge = [n + e for e in range(m)]
    extras = [n + m + j for j in range(t + 1)]
    inc = [[] for _ in range(n)]
    for e, (u, w) in enumerate(E):
        inc[u].append(e)
        inc[w].append(e)
    keep = set()
    anchors = {}
    for v in range(n):
        qv = q_vert[v]
        order = [qv] + [q_edge[e] for e in inc[v]] + extras + [q_vert[u] for u in range(n) if u != v]
        order += [q_edge[e] for e in range(m) if e not in inc[v]]
        clique = order[:t + n + 1]
        keep.update(V(v, q, 1) for q in clique)
        keep.update(V(v, qv, k) for k in range(2, r + 1))
        keep.update({V(n, qv, r), V(n + 1, qv, r), V(0, qv, r + 1)})
        anchors[v] = V(v, qv, 1)
    for e, (u, w) in enumerate(E):
        # x_1(u,q_e) ... x_r(u,q_e) - x_r(w,q_e) ... x_1(w,q_e), the middle edge from the cone at b_{q_e}
        for a in (u, w):
            keep.update(V(a, q_edge[e], k) for k in range(1, r + 1))
    return NA, NB, keep, anchors


def _biclique_gadgets(G: Graph, r: int, t: int):
    """Vertex set of B_G inside the biclique K^r_{n+3, n+m+t}, plus the anchors."""
    n = G.n
    E = list(G.edges())
    m = len(E)
    NA, NB = n + 3, n + m + t
    V = lambda p, q, k: bi_vertex(NA, NB, r, p, q, k)
    extras = [n + m + j for j in range(t)]
    keep = set()
    anchors = {}
    for v in range(n):
        qv = v
        keep.add(v)
        keep.update(V(v, q, 1) for q in extras)
        keep.update(V(v, qv, k) for k in range(1, r + 2))
        keep.update(V(p, qv, r) for p in (n, n + 1, n + 2))
        anchors[v] = v
    for e, (u, w) in enumerate(E):
        qe = n + e
        keep.add(V(0, qe, r + 1))
        for a in (u, w):
            keep.update(V(a, qe, k) for k in range(1, r + 1))
    return NA, NB, keep, anchors


def encode_graph(G: Graph, r: int = 3, t: int = 5, variant: str = "biweb") -> EncodedInstance:
    """Host f(G) = B_G + pattern of order t, with B_G cut out of a larger pattern.

    Biweb gadget per vertex v: a (t+n+1)-clique in the cone of A-native v, a path of
    length r-1 from c_v to a K4 in the cone of B-native q_v. Each edge uw is a path
    of length 2r-1 between unused clique vertices of u and w.
    Biclique gadget: c_v = A-native v with t petals, a path of length r+1 to the
    centre b_{q_v} of a star with 3 petals; edges are paths of length 2r+2.
    """
    _check_variant(variant)
    if r < 3:
        raise BadParams("r must be >= 3")
    if t < 5:
        raise BadParams("t must be >= 5")
    build = _biweb_gadgets if variant == "biweb" else _biclique_gadgets
    NA, NB, keep, anchors = build(G, r, t)
    big = pattern(_PATTERN_KIND[variant], NA, NB, r)
    bg, back = induced_subgraph(big, keep)
    fwd = {v: i for i, v in enumerate(back)}
    anchors = {v: fwd[a] for v, a in anchors.items()}
    pat = pattern(_PATTERN_KIND[variant], t, t, r)
    parts = []
    for part_id, g in enumerate((bg, pat)):
        labels = {"layer": g.labels["layer"], "native": g.labels["native"], "part": [part_id] * g.n}
        parts.append(g.with_labels(labels))
    host = disjoint_union(parts)
    return EncodedInstance(host, G, r, t, variant, anchors, bg.n, {"embedding": (NA, NB)})


def host_size(n: int, m: int, r: int, t: int, variant: str) -> int:
    """Closed-form vertex count of encode_graph's host."""
    pattern_size = 2 * t + r * t * t
    if variant == "biweb":
        return n * (4 + (r - 2) + (t + n + 1)) + m * (2 * r - 2) + pattern_size
    return n * (t + r + 5) + m * (2 * r + 1) + pattern_size


# ----------------------------------------------------------------- decode

def _induced_paths(adj, x, length):
    """Induced paths x = p_0, ..., p_length (as lists), depth first."""
    path = [x]
    on = {x}

    def rec():
        if len(path) == length + 1:
            yield list(path)
            return
        last = path[-1]
        for y in sorted(adj[last]):
            if y in on or any(y in adj[z] for z in path[:-1]):
                continue
            path.append(y)
            on.add(y)
            yield from rec()
            path.pop()
            on.discard(y)

    yield from rec()


def _gadget_at(adj, path, clique: bool) -> bool:
    """Three vertices around path[-1], off the path and away from its earlier vertices,
    pairwise adjacent (clique) or pairwise non-adjacent (star petals)."""
    end = path[-1]
    on = set(path)
    early = path[:-1]
    cand = sorted(y for y in adj[end] if y not in on and not any(y in adj[z] for z in early))
    k = len(cand)
    for a in range(k):
        for b in range(a + 1, k):
            if (cand[b] in adj[cand[a]]) != clique:
                continue
            for c in range(b + 1, k):
                if (cand[c] in adj[cand[a]]) == clique and (cand[c] in adj[cand[b]]) == clique:
                    return True
    return False


def has_anchor_gadget(g: Graph, x: int, r: int, variant: str) -> bool:
    """chi(x): an induced path from x to a K4 (biweb, length r-1) or to the centre of a
    3-petal star (biclique, length r+1)."""
    adj = g.adj_sets()
    length = r - 1 if variant == "biweb" else r + 1
    clique = variant == "biweb"
    return any(_gadget_at(adj, p, clique) for p in _induced_paths(adj, x, length))


def domain_threshold(t: int, variant: str) -> int:
    return t + 1 if variant == "biweb" else t


def interpretation_domain(H: Graph, r: int, t: int, variant: str = "biweb") -> list:
    _check_variant(variant)
    deg = H.degree()
    thr = domain_threshold(t, variant)
    return [int(x) for x in np.flatnonzero(deg > thr) if has_anchor_gadget(H, int(x), r, variant)]


def decode_interpretation(H: Graph, r: int, t: int, variant: str = "biweb") -> Graph:
    """Evaluate the interpretation: domain by degree plus gadget search, edges by distance."""
    dom = interpretation_domain(H, r, t, variant)
    if not dom:
        return build_graph(0, [])
    limit = 2 * r + 1 if variant == "biweb" else 2 * r + 2
    from .graph_core import distances_from
    edges = []
    pos = {x: i for i, x in enumerate(dom)}
    for i, x in enumerate(dom):
        d = distances_from(H, x, cutoff=limit)
        for y in dom[i + 1:]:
            if 0 < d[y] <= limit:
                edges.append((i, pos[y]))
    return build_graph(len(dom), edges, {"host_vertex": dom})


# ------------------------------------------------------------- flip pipeline

@dataclass(frozen=True)
class FlippedInstance:
    encoded: EncodedInstance
    layered: LayeredPattern
    flipped: Graph
    probes: ProbeSets         # in host coordinates
    colors: tuple             # lambda on the host


def flip_encoded(enc: EncodedInstance, lc, R, s: int = DEFAULT_S) -> FlippedInstance:
    """Layer-flip the whole host and place the probe sets inside its pattern part."""
    lp, _ = canonical_flip(enc.t, enc.r, lc, R, enc.variant)
    probes = select_probes(lp, s).shifted(enc.pattern_offset)
    colors = tuple(layer_coloring(enc.host, lp.lc))
    flipped = apply_flip(enc.host, FlipSpec(colors, lp.R))
    return FlippedInstance(enc, lp, flipped, probes, colors)


def random_flip_instance(G: Graph, c: int, r: int = 3, variant: str = "biweb", s: int = DEFAULT_S, seed: int = 0):
    rng = substream(seed, "layer-spec")
    lc, R = random_layer_spec(c, r + 2, rng)
    enc = encode_graph(G, r, c * s * s, variant)
    return flip_encoded(enc, lc, R, s)
