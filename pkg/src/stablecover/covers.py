"""Compact partitions along a vertex order and the neighborhood covers built from them."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph_core import BipartiteGraph, Graph, all_pairs_distances, graph_power
from .set_system import LinearOrder, crossing_number, neighborhood_system, welzl_order


@dataclass(frozen=True)
class CompactPartition:
    order: LinearOrder
    intervals: tuple   # tuple of tuples, consecutive runs of the order
    witnesses: tuple   # witnesses[i] = u with intervals[i] ⊆ N[u]


@dataclass(frozen=True)
class Cover:
    clusters: tuple    # tuple of sorted vertex tuples
    source: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.clusters)


@dataclass(frozen=True)
class CoverReport:
    is_cover_at_r: bool
    diameter: float     # max weak diameter; math.inf if a cluster spans components
    overlap: int
    r: int
    uncovered: tuple = ()   # vertices whose r-ball fits in no cluster
    crossing: int | None = None

    def as_dict(self):
        return {
            "is_cover_at_r": self.is_cover_at_r,
            "diameter": None if self.diameter == math.inf else int(self.diameter),
            "diameter_infinite": self.diameter == math.inf,
            "overlap": self.overlap,
            "r": self.r,
            "uncovered": list(self.uncovered),
            "crossing": self.crossing,
        }


def compact_partition(g: Graph, order: LinearOrder) -> CompactPartition:
    """Cut the order greedily into maximal compact prefixes.

    Keeps the candidate set {u : prefix ⊆ N[u]} and closes the interval as soon
    as the next vertex would empty it. The lowest-id survivor is the witness.
    """
    if sorted(order.perm) != list(range(g.n)):
        raise ValueError("order must permute the vertex set")
    perm = np.array(order.perm, dtype=np.int64)
    starts, wit = _kernels.active.compact_intervals(g.closed_matrix(), perm)
    bounds = list(starts) + [g.n]
    intervals = tuple(tuple(order.perm[bounds[i]:bounds[i + 1]]) for i in range(len(starts)))
    return CompactPartition(order, intervals, tuple(int(w) for w in wit))


def cover_from_partition(g: Graph, p: CompactPartition, source=None) -> Cover:
    """One cluster N[I] per interval I."""
    closed = g.closed_matrix()
    clusters = []
    for I in p.intervals:
        clusters.append(tuple(int(x) for x in np.flatnonzero(closed[list(I)].any(axis=0))))
    return Cover(tuple(clusters), dict(source or {}))


def cover_overlap(g: Graph, cover: Cover) -> int:
    cnt = np.zeros(g.n, dtype=np.int64)
    for C in cover.clusters:
        cnt[list(C)] += 1
    return int(cnt.max()) if g.n else 0


def verify_cover(g: Graph, cover: Cover, r: int, dist: np.ndarray | None = None) -> CoverReport:
    """Recompute validity at radius r, the diameter and the overlap from scratch."""
    if dist is None:
        dist = all_pairs_distances(g)
    n = g.n
    inside = np.zeros((len(cover.clusters), n), dtype=np.bool_)
    for i, C in enumerate(cover.clusters):
        if C:
            inside[i, list(C)] = True
    uncovered = []
    for u in range(n):
        ball = (dist[u] >= 0) & (dist[u] <= r)
        hold = inside[:, u]
        if not hold.any() or not (inside[hold] | ~ball).all(axis=1).any():
            uncovered.append(u)
    diam = 0
    for C in cover.clusters:
        if not C:
            continue
        sub = dist[np.ix_(list(C), list(C))]
        if (sub < 0).any():
            diam = math.inf
            break
        diam = max(diam, int(sub.max()))
    overlap = int(inside.sum(axis=0).max()) if n and len(cover.clusters) else 0
    return CoverReport(not uncovered, diam, overlap, int(r), tuple(uncovered))


def distance_r_cover(g: Graph, r: int = 1, seed: int = 0, timings: dict | None = None):
    """power -> neighborhood system -> greedy order -> compact partition -> cover.

    The report is checked against g at radius r. Returns (cover, report).
    """
    t0 = time.perf_counter()
    gp = graph_power(g, r)
    t1 = time.perf_counter()
    sys = neighborhood_system(gp)
    wz = welzl_order(sys, seed)
    t2 = time.perf_counter()
    part = compact_partition(gp, wz.order)
    cover = cover_from_partition(gp, part, {"order": list(wz.order.perm), "r": int(r), "seed": int(seed)})
    t3 = time.perf_counter()
    rep = verify_cover(g, cover, r)
    t4 = time.perf_counter()
    rep = CoverReport(rep.is_cover_at_r, rep.diameter, rep.overlap, rep.r, rep.uncovered, wz.crossing)
    if timings is not None:
        timings.update(power=t1 - t0, order=t2 - t1, partition=t3 - t2, verify=t4 - t3)
    return cover, rep


def incidence_graph(g: Graph, cover: Cover):
    """Vertices vs clusters membership graph and its edge density |E|/|V|.

    Cluster i is represented by vertex id g.n + i.
    """
    side_b = tuple(g.n + i for i in range(len(cover.clusters)))
    masks = []
    for C in cover.clusters:
        m = 0
        for v in C:
            m |= 1 << v
        masks.append(m)
    bip = BipartiteGraph(tuple(range(g.n)), side_b, masks)
    nv = g.n + len(side_b)
    return bip, (bip.m / nv if nv else 0.0)


def lemma_chain_check(g: Graph, order: LinearOrder) -> dict:
    """Compact cover along ``order`` with its overlap, diameter and the order's crossing number."""
    part = compact_partition(g, order)
    cov = cover_from_partition(g, part)
    rep = verify_cover(g, cov, 1)
    cr = crossing_number(neighborhood_system(g), order)
    return {"overlap": rep.overlap, "diameter": rep.diameter, "crossing": cr, "valid": rep.is_cover_at_r,
            "partition": part, "cover": cov}
