"""Graph substrate: immutable simple graphs on vertices 0..n-1, distances, powers,
induced and semi-induced pieces, a small-graph isomorphism search and file I/O.

Adjacency is kept as CSR arrays (``indptr``/``indices``). Very dense graphs, which
show up after flips, can instead be held as a bit-packed adjacency matrix; the two
forms convert lazily into each other.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import (
    EmptySet,
    FormatError,
    LoopEdge,
    OverlappingSides,
    SizeLimitExceeded,
    VertexOutOfRange,
)

SCHEMA_VERSION = 1

# distance sentinel for "no path"; arrays use -1, scalar results use math.inf
UNREACHABLE = -1
INF = math.inf

ISO_CAP = 64


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Undirected simple graph. Treat as immutable."""

    __slots__ = ("n", "labels", "_indptr", "_indices", "_packed", "_sets", "_masks", "_closed")

    def __init__(self, n, indptr=None, indices=None, labels=None, packed=None):
        self.n = int(n)
        self._indptr = None if indptr is None else _freeze(np.asarray(indptr, dtype=np.int64))
        self._indices = None if indices is None else _freeze(np.asarray(indices, dtype=np.int64))
        self._packed = None if packed is None else _freeze(packed)
        if self._indptr is None and self._packed is None:
            raise ValueError("graph needs CSR arrays or a packed matrix")
        self.labels = {} if not labels else {k: tuple(v) for k, v in labels.items()}
        for k, v in self.labels.items():
            if len(v) != self.n:
                raise ValueError(f"label {k!r} has {len(v)} entries for {self.n} vertices")
        self._sets = None
        self._masks = None
        self._closed = None

    # -- storage
    @property
    def indptr(self) -> np.ndarray:
        if self._indptr is None:
            self._csr_from_packed()
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        if self._indices is None:
            self._csr_from_packed()
        return self._indices

    def _csr_from_packed(self):
        n = self.n
        counts = np.zeros(n, dtype=np.int64)
        chunks = []
        step = max(1, (1 << 24) // max(n, 1))
        for lo in range(0, n, step):
            bits = np.unpackbits(self._packed[lo:lo + step], axis=1, count=n).astype(bool)
            cols = np.nonzero(bits)[1]
            counts[lo:lo + step] = bits.sum(axis=1)
            chunks.append(cols)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self._indptr = _freeze(indptr)
        self._indices = _freeze(np.concatenate(chunks).astype(np.int64) if chunks else np.zeros(0, np.int64))

    def packed(self) -> np.ndarray:
        """Bit-packed adjacency matrix, shape (n, ceil(n/8)), big-endian bit order."""
        if self._packed is None:
            n = self.n
            pk = np.zeros((n, (n + 7) // 8), dtype=np.uint8)
            if self.indices.size:
                rows = np.repeat(np.arange(n), np.diff(self.indptr))
                cols = self.indices
                np.bitwise_or.at(pk, (rows, cols >> 3), (128 >> (cols & 7)).astype(np.uint8))
            self._packed = _freeze(pk)
        return self._packed

    # -- basic queries
    @property
    def m(self) -> int:
        if self._indptr is None:
            return int(np.unpackbits(self._packed, axis=1, count=self.n).sum()) // 2
        return int(self._indices.size) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int | None = None):
        d = np.diff(self.indptr)
        return d if v is None else int(d[v])

    def has_edge(self, u: int, v: int) -> bool:
        if self._indptr is None:
            return bool(self._packed[u, v >> 3] & (128 >> (v & 7)))
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def edges(self):
        """Edges (u, v) with u < v in lexicographic order."""
        ip, ix = self.indptr, self.indices
        for u in range(self.n):
            for v in ix[ip[u]:ip[u + 1]]:
                if v > u:
                    yield (u, int(v))

    def edge_array(self) -> np.ndarray:
        ip, ix = self.indptr, self.indices
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(ip))
        keep = rows < ix
        return np.stack([rows[keep], ix[keep]], axis=1)

    def adj_sets(self) -> list:
        if self._sets is None:
            self._sets = [frozenset(int(x) for x in self.neighbors(v)) for v in range(self.n)]
        return self._sets

    def adj_masks(self) -> list:
        """Neighborhoods as python-int bitmasks (bit v set for neighbor v)."""
        if self._masks is None:
            masks = []
            for v in range(self.n):
                m = 0
                for u in self.neighbors(v):
                    m |= 1 << int(u)
                masks.append(m)
            self._masks = masks
        return self._masks

    def closed_matrix(self) -> np.ndarray:
        """Boolean n x n matrix of closed neighborhoods."""
        if self._closed is None:
            c = np.zeros((self.n, self.n), dtype=np.bool_)
            ea = self.edge_array()
            c[ea[:, 0], ea[:, 1]] = True
            c[ea[:, 1], ea[:, 0]] = True
            np.fill_diagonal(c, True)
            self._closed = _freeze(c)
        return self._closed

    def same_edges(self, other: "Graph") -> bool:
        if self.n != other.n:
            return False
        if self._indptr is not None and other._indptr is not None:
            return np.array_equal(self._indptr, other._indptr) and np.array_equal(self._indices, other._indices)
        return np.array_equal(self.packed(), other.packed())

    def edge_difference_count(self, other: "Graph") -> int:
        """Number of unordered pairs adjacent in exactly one of the two graphs."""
        if self.n != other.n:
            raise ValueError("vertex counts differ")
        x = np.bitwise_xor(self.packed(), other.packed())
        return int(np.unpackbits(x, axis=1, count=self.n).sum()) // 2

    def __eq__(self, other):
        return isinstance(other, Graph) and self.same_edges(other)

    def __hash__(self):
        return hash((self.n, self.m))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def with_labels(self, labels):
        g = Graph(self.n, self._indptr, self._indices, labels, self._packed)
        return g


def _csr_from_pairs(n, us, vs):
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    a = np.concatenate([us, vs])
    b = np.concatenate([vs, us])
    if a.size:
        key = np.unique(a * n + b)
        a, b = key // n, key % n
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, a + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, b


def build_graph(n: int, edges: Iterable[Sequence[int]], labels: Mapping | None = None) -> Graph:
    """Normalize an edge list into a Graph. Duplicate edges collapse; loops are rejected."""
    n = int(n)
    if n < 0:
        raise VertexOutOfRange(f"negative vertex count {n}")
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FormatError("edges must be pairs")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = arr[(arr < 0).any(axis=1) | (arr >= n).any(axis=1)][0]
        raise VertexOutOfRange(f"edge {tuple(int(x) for x in bad)} outside 0..{n - 1}")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        u = int(arr[loops][0, 0])
        raise LoopEdge(f"loop at vertex {u}")
    indptr, indices = _csr_from_pairs(n, arr[:, 0], arr[:, 1])
    return Graph(n, indptr, indices, labels)


def graph_from_packed(n: int, packed: np.ndarray, labels=None) -> Graph:
    return Graph(n, labels=labels, packed=np.ascontiguousarray(packed, dtype=np.uint8))


def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def disjoint_union(graphs: Sequence[Graph], label_defaults: Mapping | None = None) -> Graph:
    """Disjoint union, renumbering each part after the previous ones.

    Labels present on some parts only are padded with ``label_defaults[key]``
    (or None).
    """
    label_defaults = label_defaults or {}
    keys = []
    for g in graphs:
        for k in g.labels:
            if k not in keys:
                keys.append(k)
    us, vs, off = [], [], 0
    labels = {k: [] for k in keys}
    for g in graphs:
        ea = g.edge_array()
        us.append(ea[:, 0] + off)
        vs.append(ea[:, 1] + off)
        for k in keys:
            labels[k].extend(g.labels.get(k, (label_defaults.get(k),) * g.n))
        off += g.n
    if not graphs:
        return empty_graph(0)
    indptr, indices = _csr_from_pairs(off, np.concatenate(us), np.concatenate(vs))
    return Graph(off, indptr, indices, labels)


# ------------------------------------------------------------------ distances

def distances_from(g: Graph, v: int, cutoff: int = -1) -> np.ndarray:
    """BFS distances from v; unreachable entries hold UNREACHABLE (-1)."""
    if not 0 <= v < g.n:
        raise VertexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    return _kernels.active.bfs_from(g.indptr, g.indices, g.n, int(v), int(cutoff))


def all_pairs_distances(g: Graph, cutoff: int = -1) -> np.ndarray:
    return _kernels.active.bfs_all_pairs(g.indptr, g.indices, g.n, int(cutoff))


def graph_power(g: Graph, r: int) -> Graph:
    """uv is an edge iff 1 <= dist_g(u, v) <= r."""
    if r < 1:
        from .errors import BadParams
        raise BadParams("power needs r >= 1")
    if r == 1:
        return g
    d = all_pairs_distances(g, cutoff=r)
    rows, cols = np.nonzero(d > 0)
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.add.at(indptr, rows + 1, 1)
    np.cumsum(indptr, out=indptr)
    return Graph(g.n, indptr, cols, g.labels)


def weak_diameter(g: Graph, X: Iterable[int]) -> float:
    """Largest distance in g between two members of X (math.inf if some pair is disconnected)."""
    xs = sorted(set(int(x) for x in X))
    if not xs:
        raise EmptySet("weak diameter of an empty set")
    best = 0
    for x in xs:
        d = distances_from(g, x)[xs]
        if (d < 0).any():
            return INF
        best = max(best, int(d.max()))
    return best


# ------------------------------------------------------------ substructures

def induced_subgraph(g: Graph, S: Iterable[int]):
    """Subgraph induced by S, renumbered in increasing order of original id.

    Returns (subgraph, back) where back[i] is the original id of new vertex i.
    """
    back = np.array(sorted(set(int(s) for s in S)), dtype=np.int64)
    if back.size and (back[0] < 0 or back[-1] >= g.n):
        raise VertexOutOfRange("subset leaves the vertex range")
    fwd = np.full(g.n, -1, dtype=np.int64)
    fwd[back] = np.arange(back.size)
    us, vs = [], []
    for i, v in enumerate(back):
        nb = fwd[g.neighbors(v)]
        nb = nb[nb > i]
        us.append(np.full(nb.size, i, dtype=np.int64))
        vs.append(nb)
    k = back.size
    if k:
        indptr, indices = _csr_from_pairs(k, np.concatenate(us), np.concatenate(vs))
    else:
        indptr, indices = np.zeros(1, np.int64), np.zeros(0, np.int64)
    labels = {key: [val[v] for v in back] for key, val in g.labels.items()}
    return Graph(k, indptr, indices, labels), tuple(int(b) for b in back)


class BipartiteGraph:
    """Bipartite graph with ordered sides A and B (vertex ids) and A-B edges.

    Internally each b in B has a bitmask over A-positions and each a a bitmask
    over B-positions.
    """

    __slots__ = ("side_a", "side_b", "b_masks", "a_masks")

    def __init__(self, side_a, side_b, b_masks):
        self.side_a = tuple(side_a)
        self.side_b = tuple(side_b)
        if set(self.side_a) & set(self.side_b):
            raise OverlappingSides("sides share vertices")
        self.b_masks = tuple(int(x) for x in b_masks)
        if len(self.b_masks) != len(self.side_b):
            raise ValueError("one mask per B vertex")
        a_masks = [0] * len(self.side_a)
        for j, bm in enumerate(self.b_masks):
            while bm:
                low = bm & -bm
                a_masks[low.bit_length() - 1] |= 1 << j
                bm ^= low
        self.a_masks = tuple(a_masks)

    @classmethod
    def from_edges(cls, side_a, side_b, edges):
        side_a, side_b = tuple(side_a), tuple(side_b)
        pa = {a: i for i, a in enumerate(side_a)}
        pb = {b: j for j, b in enumerate(side_b)}
        masks = [0] * len(side_b)
        for a, b in edges:
            if a in pa and b in pb:
                masks[pb[b]] |= 1 << pa[a]
            elif b in pa and a in pb:
                masks[pb[a]] |= 1 << pa[b]
            else:
                raise ValueError(f"edge {(a, b)} does not join the two sides")
        return cls(side_a, side_b, masks)

    @property
    def na(self):
        return len(self.side_a)

    @property
    def nb(self):
        return len(self.side_b)

    def edges(self):
        for j, bm in enumerate(self.b_masks):
            for i in range(self.na):
                if bm >> i & 1:
                    yield (self.side_a[i], self.side_b[j])

    @property
    def m(self):
        return sum(bin(x).count("1") for x in self.b_masks)

    def b_degree(self, j):
        return bin(self.b_masks[j]).count("1")

    def to_graph(self) -> Graph:
        """As a plain graph: A-positions 0..|A|-1, then B-positions."""
        na = self.na
        pairs = [(i, na + j) for j, bm in enumerate(self.b_masks) for i in range(na) if bm >> i & 1]
        return build_graph(na + self.nb, pairs)

    def __eq__(self, other):
        return (isinstance(other, BipartiteGraph) and self.side_a == other.side_a
                and self.side_b == other.side_b and self.b_masks == other.b_masks)

    def __hash__(self):
        return hash((self.side_a, self.side_b, self.b_masks))

    def __repr__(self):
        return f"BipartiteGraph(|A|={self.na}, |B|={self.nb}, m={self.m})"


def semi_induced(g: Graph, A: Iterable[int], B: Iterable[int]) -> BipartiteGraph:
    """Bipartite graph on sides A, B keeping exactly the A-B edges of g."""
    A = tuple(sorted(set(int(a) for a in A)))
    B = tuple(sorted(set(int(b) for b in B)))
    if set(A) & set(B):
        raise OverlappingSides("A and B intersect")
    pa = {a: i for i, a in enumerate(A)}
    masks = []
    for b in B:
        m = 0
        for a in g.neighbors(b):
            i = pa.get(int(a))
            if i is not None:
                m |= 1 << i
        masks.append(m)
    return BipartiteGraph(A, B, masks)


# ------------------------------------------------------------- isomorphism

@dataclass(frozen=True)
class IsoWitness:
    mapping: dict | None = field(default=None)

    def __bool__(self):
        return self.mapping is not None


def refine_colors(masks: Sequence[int], n: int, init=None) -> list:
    """Colour refinement (1-WL) on bitmask adjacency. Colours are canonical small ints."""
    col = list(init) if init is not None else [0] * n
    # relabel initial colours canonically
    rank = {c: i for i, c in enumerate(sorted(set(col)))}
    col = [rank[c] for c in col]
    while True:
        sig = []
        for v in range(n):
            cnt = {}
            m = masks[v]
            while m:
                low = m & -m
                c = col[low.bit_length() - 1]
                cnt[c] = cnt.get(c, 0) + 1
                m ^= low
            sig.append((col[v], tuple(sorted(cnt.items()))))
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if len(rank) == len(set(col)):
            return new
        col = new


def are_isomorphic(g: Graph, h: Graph, cap: int = ISO_CAP) -> IsoWitness:
    """Exact isomorphism test by refinement-guided backtracking.

    Raises SizeLimitExceeded when either graph has more than ``cap`` vertices;
    pass ``cap=None`` to lift the limit.
    """
    if cap is not None and max(g.n, h.n) > cap:
        raise SizeLimitExceeded(f"isomorphism search capped at {cap} vertices")
    if g.n != h.n or g.m != h.m:
        return IsoWitness(None)
    n = g.n
    if n == 0:
        return IsoWitness({})
    if sorted(g.degree().tolist()) != sorted(h.degree().tolist()):
        return IsoWitness(None)
    gm, hm = g.adj_masks(), h.adj_masks()
    # refine on the disjoint union so colours are comparable across g and h
    union = list(gm) + [m << n for m in hm]
    col = refine_colors(union, 2 * n)
    cg, ch = col[:n], col[n:]
    if sorted(cg) != sorted(ch):
        return IsoWitness(None)
    by_col = {}
    for v in range(n):
        by_col.setdefault(ch[v], []).append(v)
    # visit g's vertices rare-colour first, then by BFS adjacency to mapped ones
    order = []
    seen = 0
    rare = sorted(range(n), key=lambda v: (len(by_col[cg[v]]), cg[v], v))
    for root in rare:
        if seen >> root & 1:
            continue
        queue = [root]
        seen |= 1 << root
        while queue:
            u = queue.pop(0)
            order.append(u)
            nb = sorted((w for w in range(n) if gm[u] >> w & 1 and not seen >> w & 1),
                        key=lambda w: (len(by_col[cg[w]]), w))
            for w in nb:
                seen |= 1 << w
                queue.append(w)
    fmap = [-1] * n
    used = [False] * n

    def ok(u, x, depth):
        gu, hx = gm[u], hm[x]
        for k in range(depth):
            w = order[k]
            if (gu >> w & 1) != (hx >> fmap[w] & 1):
                return False
        return True

    def solve(depth):
        if depth == n:
            return True
        u = order[depth]
        for x in by_col[cg[u]]:
            if used[x] or not ok(u, x, depth):
                continue
            fmap[u] = x
            used[x] = True
            if solve(depth + 1):
                return True
            used[x] = False
            fmap[u] = -1
        return False

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        found = solve(0)
    finally:
        sys.setrecursionlimit(old)
    return IsoWitness({u: fmap[u] for u in range(n)}) if found else IsoWitness(None)


def check_isomorphism(g: Graph, h: Graph, mapping: Mapping[int, int]) -> bool:
    """Independent check that mapping is a bijection preserving edges and non-edges."""
    if g.n != h.n or sorted(mapping) != list(range(g.n)) or sorted(mapping.values()) != list(range(h.n)):
        return False
    if g.m != h.m:
        return False
    return all(h.has_edge(mapping[u], mapping[v]) for u, v in g.edges())


# ---------------------------------------------------------------------- I/O

def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise FormatError("edge list must start with 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if len(pairs) != m:
        raise FormatError(f"header promises {m} edges, found {len(pairs)}")
    return build_graph(n, pairs)


def to_json_obj(g: Graph) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": g.n,
        "edges": [[u, v] for u, v in g.edges()],
        "labels": {k: list(v) for k, v in sorted(g.labels.items())},
    }


def from_json_obj(obj: Mapping) -> Graph:
    try:
        return build_graph(obj["n"], [tuple(e) for e in obj["edges"]], obj.get("labels") or None)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad graph JSON: {exc}") from None


def _edges_text(g: Graph) -> str:
    ea = g.edge_array()
    parts = []
    step = 1 << 20   # chunked so dense flipped hosts do not build one giant list
    for lo in range(0, len(ea), step):
        parts.append(",".join(f"[{u},{v}]" for u, v in ea[lo:lo + step].tolist()))
    return "[" + ",".join(parts) + "]"


def to_json(g: Graph) -> str:
    """Compact JSON with sorted keys (same bytes as json.dumps of to_json_obj)."""
    labels = json.dumps({k: list(v) for k, v in sorted(g.labels.items())}, sort_keys=True, separators=(",", ":"))
    return f'{{"edges":{_edges_text(g)},"labels":{labels},"n":{g.n},"schema_version":{SCHEMA_VERSION}}}\n'


def from_json(text: str) -> Graph:
    # fast path for our own layout: parse the edge array with numpy, the rest with json
    i = text.find('"edges":[')
    if i >= 0:
        a = i + len('"edges":')
        b = text.find("]]", a)
        b = a + 2 if text.startswith("[]", a) else (b + 2 if b >= 0 else -1)
        if b > a:
            body = text[a:b].translate({91: 32, 93: 32})
            try:
                obj = json.loads(text[:a] + "[]" + text[b:])
            except json.JSONDecodeError:
                obj = None
            if isinstance(obj, dict) and "n" in obj:
                flat = np.fromstring(body, dtype=np.int64, sep=",") if body.strip() else np.zeros(0, np.int64)
                if flat.size % 2:
                    raise FormatError("edges must be pairs")
                try:
                    return build_graph(obj["n"], flat.reshape(-1, 2), obj.get("labels") or None)
                except (KeyError, TypeError) as exc:
                    raise FormatError(f"bad graph JSON: {exc}") from None
    return from_json_obj(json.loads(text))


def read_graph(path: str, fmt: str | None = None) -> Graph:
    with open(path) as fh:
        text = fh.read()
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "edgelist"
    return from_json(text) if fmt == "json" else from_edgelist(text)


def write_graph(g: Graph, path: str, fmt: str = "edgelist") -> None:
    with open(path, "w") as fh:
        fh.write(to_json(g) if fmt == "json" else to_edgelist(g))


# ----------------------------------------------------------- canonical form

def canonical_form(g: Graph, cap: int = 10) -> tuple:
    """Isomorphism-invariant key: the lexicographically least upper-triangle adjacency
    string over all orderings that respect the refined colour classes."""
    n = g.n
    if n > cap:
        raise SizeLimitExceeded(f"canonical form capped at {cap} vertices")
    masks = g.adj_masks()
    col = refine_colors(masks, n, init=[bin(m).count("1") for m in masks])
    cells = {}
    for v in range(n):
        cells.setdefault(col[v], []).append(v)
    cell_order = [cells[c] for c in sorted(cells)]
    from itertools import permutations, product

    best = None
    for choice in product(*[permutations(c) for c in cell_order]):
        perm = [v for part in choice for v in part]
        word = tuple(1 if masks[perm[i]] >> perm[j] & 1 else 0 for i in range(n) for j in range(i + 1, n))
        if best is None or word < best:
            best = word
    sig = tuple(len(c) for c in cell_order)
    return (n, sig, best or ())


# ------------------------------------------------------------ small families

def grid_graph(rows: int, cols: int | None = None) -> Graph:
    """rows x cols grid, vertex (i, j) -> i*cols + j."""
    cols = rows if cols is None else cols
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(rows * cols, edges)


def random_graph(n: int, p: float, rng) -> Graph:
    """G(n, p) drawn from a numpy Generator."""
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return build_graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
