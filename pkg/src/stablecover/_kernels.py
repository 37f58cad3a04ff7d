"""Hot loops, each in two flavours: a numba-compiled one and a plain numpy one.

The active flavour is picked once at import. Set ``STABLECOVER_NO_NUMBA=1`` to
force the numpy path (numba is also skipped when it fails to import). Both
flavours are importable directly as ``numba_impl`` / ``numpy_impl`` so the
benchmark and the parity tests can run them side by side.
"""
import os
import types

import numpy as np

# weights in the greedy order are rescaled by this power of two once they grow past it
_RESCALE_AT = 2.0 ** 64
_RESCALE_BY = 2.0 ** -64


# ---------------------------------------------------------------- numpy path

def _np_bfs_from(indptr, indices, n, src, cutoff):
    dist = np.full(n, -1, dtype=np.int32)
    dist[src] = 0
    frontier = np.array([src], dtype=np.int64)
    level = 0
    while frontier.size and (cutoff < 0 or level < cutoff):
        starts = indptr[frontier]
        lens = indptr[frontier + 1] - starts
        total = int(lens.sum())
        if total == 0:
            break
        # gather all neighbor slices of the frontier in one shot
        offs = np.repeat(starts - np.cumsum(lens) + lens, lens)
        nbrs = indices[offs + np.arange(total)]
        nbrs = nbrs[dist[nbrs] < 0]
        if nbrs.size == 0:
            break
        nbrs = np.unique(nbrs)
        level += 1
        dist[nbrs] = level
        frontier = nbrs
    return dist


def _np_bfs_all_pairs(indptr, indices, n, cutoff):
    out = np.empty((n, n), dtype=np.int32)
    for s in range(n):
        out[s] = _np_bfs_from(indptr, indices, n, s, cutoff)
    return out


def _np_welzl_greedy(member, rank, start):
    nsets, nu = member.shape
    w = np.ones(nsets, dtype=np.float64)
    picked = np.zeros(nu, dtype=np.bool_)
    perm = np.empty(nu, dtype=np.int64)
    perm[0] = start
    picked[start] = True
    last = start
    for step in range(1, nu):
        cand = np.flatnonzero(~picked)
        crossed = member[:, cand] != member[:, last:last + 1]
        # axis-0 reduction adds rows in order, matching the compiled loop
        cost = (crossed * w[:, None]).sum(axis=0)
        best = cost.min()
        ties = cand[cost == best]
        u = ties[np.argmin(rank[ties])]
        w[member[:, u] != member[:, last]] *= 2.0
        if w.max() > _RESCALE_AT:
            w *= _RESCALE_BY
        perm[step] = u
        picked[u] = True
        last = u
    return perm


def _np_crossings(member, perm):
    if perm.size < 2:
        return np.zeros(member.shape[0], dtype=np.int64)
    m = member[:, perm]
    return (m[:, 1:] != m[:, :-1]).sum(axis=1).astype(np.int64)


def _np_compact_intervals(closed, perm):
    n = perm.size
    starts = []
    witnesses = []
    cand = None
    for i in range(n):
        v = perm[i]
        if cand is not None:
            nxt = cand & closed[v]
            if nxt.any():
                cand = nxt
                continue
            witnesses.append(int(np.argmax(cand)))
        starts.append(i)
        cand = closed[v].copy()
    if cand is not None:
        witnesses.append(int(np.argmax(cand)))
    return np.array(starts, dtype=np.int64), np.array(witnesses, dtype=np.int64)


numpy_impl = types.SimpleNamespace(
    name="numpy",
    bfs_from=_np_bfs_from,
    bfs_all_pairs=_np_bfs_all_pairs,
    welzl_greedy=_np_welzl_greedy,
    crossings=_np_crossings,
    compact_intervals=_np_compact_intervals,
)


# ---------------------------------------------------------------- numba path

def _build_numba():
    from numba import njit

    @njit(cache=True)
    def bfs_from(indptr, indices, n, src, cutoff):
        dist = np.full(n, -1, dtype=np.int32)
        queue = np.empty(n, dtype=np.int64)
        dist[src] = 0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if cutoff >= 0 and du >= cutoff:
                continue
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
        return dist

    @njit(cache=True)
    def bfs_all_pairs(indptr, indices, n, cutoff):
        out = np.empty((n, n), dtype=np.int32)
        for s in range(n):
            out[s] = bfs_from(indptr, indices, n, s, cutoff)
        return out

    @njit(cache=True)
    def welzl_greedy(member, rank, start):
        nsets, nu = member.shape
        w = np.ones(nsets, dtype=np.float64)
        picked = np.zeros(nu, dtype=np.bool_)
        perm = np.empty(nu, dtype=np.int64)
        cost = np.zeros(nu, dtype=np.float64)
        perm[0] = start
        picked[start] = True
        last = start
        for step in range(1, nu):
            for u in range(nu):
                cost[u] = 0.0
            for x in range(nsets):
                wx = w[x]
                ml = member[x, last]
                for u in range(nu):
                    if not picked[u] and member[x, u] != ml:
                        cost[u] += wx
            best = -1
            for u in range(nu):
                if picked[u]:
                    continue
                if best < 0 or cost[u] < cost[best] or (cost[u] == cost[best] and rank[u] < rank[best]):
                    best = u
            wmax = 0.0
            for x in range(nsets):
                if member[x, best] != member[x, last]:
                    w[x] *= 2.0
                if w[x] > wmax:
                    wmax = w[x]
            if wmax > _RESCALE_AT:
                for x in range(nsets):
                    w[x] *= _RESCALE_BY
            perm[step] = best
            picked[best] = True
            last = best
        return perm

    @njit(cache=True)
    def crossings(member, perm):
        nsets = member.shape[0]
        out = np.zeros(nsets, dtype=np.int64)
        for x in range(nsets):
            c = 0
            for i in range(1, perm.size):
                if member[x, perm[i]] != member[x, perm[i - 1]]:
                    c += 1
            out[x] = c
        return out

    @njit(cache=True)
    def compact_intervals(closed, perm):
        n = perm.size
        nv = closed.shape[1]
        starts = np.empty(n, dtype=np.int64)
        wit = np.empty(n, dtype=np.int64)
        cand = np.zeros(nv, dtype=np.bool_)
        k = 0
        for i in range(n):
            v = perm[i]
            if i > 0:
                alive = False
                for u in range(nv):
                    if cand[u] and closed[v, u]:
                        alive = True
                        break
                if alive:
                    for u in range(nv):
                        cand[u] = cand[u] and closed[v, u]
                    continue
                for u in range(nv):
                    if cand[u]:
                        wit[k - 1] = u
                        break
            starts[k] = i
            k += 1
            for u in range(nv):
                cand[u] = closed[v, u]
        if n > 0:
            for u in range(nv):
                if cand[u]:
                    wit[k - 1] = u
                    break
        return starts[:k].copy(), wit[:k].copy()

    return types.SimpleNamespace(
        name="numba",
        bfs_from=bfs_from,
        bfs_all_pairs=bfs_all_pairs,
        welzl_greedy=welzl_greedy,
        crossings=crossings,
        compact_intervals=compact_intervals,
    )


numba_impl = None
if os.environ.get("STABLECOVER_NO_NUMBA", "").strip() not in ("1", "true", "yes"):
    try:
        numba_impl = _build_numba()
    except ImportError:
        numba_impl = None

active = numba_impl if numba_impl is not None else numpy_impl
BACKEND = active.name


def impl(name=None):
    """Return the kernel namespace for ``name`` ('numba' / 'numpy'), or the active one."""
    if name is None:
        return active
    if name == "numpy":
        return numpy_impl
    if name == "numba":
        if numba_impl is None:
            raise RuntimeError("numba backend unavailable")
        return numba_impl
    raise ValueError(name)
