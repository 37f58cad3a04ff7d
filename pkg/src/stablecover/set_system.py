"""Set systems over vertex universes: traces, crossing numbers and low-crossing orders."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import BadParams, SizeLimitExceeded
from .graph_core import Graph
from .rng import substream

BRUTE_FORCE_CAP = 9


class SetSystem:
    """Universe U plus a family F of subsets of U (duplicates allowed unless deduplicated)."""

    __slots__ = ("universe", "family", "tags", "dedup", "_pos", "_member")

    def __init__(self, universe: Sequence[int], family: Iterable[Iterable[int]], tags=None, dedup=False):
        self.universe = tuple(int(u) for u in universe)
        if len(set(self.universe)) != len(self.universe):
            raise BadParams("universe has repeated elements")
        self._pos = {u: i for i, u in enumerate(self.universe)}
        fam = [tuple(sorted(set(int(x) for x in X))) for X in family]
        for X in fam:
            for x in X:
                if x not in self._pos:
                    raise BadParams(f"set element {x} outside the universe")
        tags = list(tags) if tags is not None else [None] * len(fam)
        if dedup:
            seen, keep_f, keep_t = set(), [], []
            for X, t in zip(fam, tags):
                if X not in seen:
                    seen.add(X)
                    keep_f.append(X)
                    keep_t.append(t)
            fam, tags = keep_f, keep_t
        self.family = tuple(fam)
        self.tags = tuple(tags)
        self.dedup = bool(dedup)
        self._member = None

    def __len__(self):
        return len(self.family)

    def position(self, u: int) -> int:
        return self._pos[u]

    @property
    def member(self) -> np.ndarray:
        """Incidence matrix, shape (|F|, |U|), uint8."""
        if self._member is None:
            m = np.zeros((len(self.family), len(self.universe)), dtype=np.uint8)
            for i, X in enumerate(self.family):
                if X:
                    m[i, [self._pos[x] for x in X]] = 1
            m.flags.writeable = False
            self._member = m
        return self._member

    def __repr__(self):
        return f"SetSystem(|U|={len(self.universe)}, |F|={len(self.family)})"


def neighborhood_system(g: Graph) -> SetSystem:
    """U = V(g), F = closed neighborhoods, one per vertex, tagged by that vertex."""
    fam = [tuple(sorted([v, *map(int, g.neighbors(v))])) for v in range(g.n)]
    return SetSystem(range(g.n), fam, tags=range(g.n))


def trace_count(sys: SetSystem, A: Iterable[int]) -> int:
    """Number of distinct traces X ∩ A over X in the family (the empty family has none)."""
    A = sorted(set(int(a) for a in A))
    if not sys.family:
        return 0
    if not A:
        return 1
    cols = [sys.position(a) for a in A]
    sub = np.ascontiguousarray(sys.member[:, cols])
    return len({row.tobytes() for row in np.packbits(sub, axis=1)})


def trace_growth_sweep(sys: SetSystem, sizes: Iterable[int], reps: int, seed: int) -> list:
    """For each size, draw ``reps`` random subsets A of U and record (size, median, max) traces."""
    rng = substream(seed, "growth")
    U = np.array(sys.universe, dtype=np.int64)
    rows = []
    for k in sizes:
        k = int(k)
        if k > U.size:
            raise BadParams(f"sample size {k} exceeds |U|={U.size}")
        counts = [trace_count(sys, rng.choice(U, size=k, replace=False)) for _ in range(reps)]
        rows.append((k, float(np.median(counts)), int(max(counts))))
    return rows


class LinearOrder:
    """A permutation of the universe with O(1) rank lookup."""

    __slots__ = ("perm", "rank")

    def __init__(self, perm: Sequence[int]):
        self.perm = tuple(int(u) for u in perm)
        self.rank = {u: i for i, u in enumerate(self.perm)}
        if len(self.rank) != len(self.perm):
            raise BadParams("order repeats an element")

    def __len__(self):
        return len(self.perm)

    def __iter__(self):
        return iter(self.perm)

    def __eq__(self, other):
        return isinstance(other, LinearOrder) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def reversed(self) -> "LinearOrder":
        return LinearOrder(self.perm[::-1])

    def __repr__(self):
        return f"LinearOrder({list(self.perm)})"


def _perm_positions(sys: SetSystem, order: LinearOrder) -> np.ndarray:
    if sorted(order.perm) != sorted(sys.universe):
        raise BadParams("order is not a permutation of the universe")
    return np.array([sys.position(u) for u in order.perm], dtype=np.int64)


def crossings_per_set(sys: SetSystem, order: LinearOrder) -> np.ndarray:
    return _kernels.active.crossings(sys.member, _perm_positions(sys, order))


def crossing_number(sys: SetSystem, order: LinearOrder) -> int:
    """Max over sets of the number of consecutive pairs with exactly one end in the set."""
    if not sys.family:
        return 0
    return int(crossings_per_set(sys, order).max())


@dataclass(frozen=True)
class WelzlResult:
    order: LinearOrder
    crossing: int
    priorities: tuple  # tie-break rank of each universe element (lower wins)
    seed: int


def welzl_order(sys: SetSystem, seed: int = 0, backend: str | None = None) -> WelzlResult:
    """Multiplicative-weights greedy order.

    All sets start with weight 1. Starting from the element of lowest random
    priority, repeatedly append the unpicked element whose pairing with the
    current last element crosses the least total weight, then double the weight
    of every set that pair crosses. Ties go to the lower random priority.
    """
    nu = len(sys.universe)
    if nu < 1:
        raise BadParams("empty universe")
    rng = substream(seed, "welzl-ties")
    rank = rng.permutation(nu).astype(np.int64)
    start = int(np.argmin(rank))
    k = _kernels.impl(backend)
    if len(sys.family):
        perm_pos = k.welzl_greedy(np.ascontiguousarray(sys.member), rank, start)
    else:
        perm_pos = np.argsort(rank, kind="stable")
    order = LinearOrder([sys.universe[i] for i in perm_pos])
    cr = int(k.crossings(sys.member, np.asarray(perm_pos, dtype=np.int64)).max()) if len(sys.family) else 0
    return WelzlResult(order, cr, tuple(int(x) for x in rank), int(seed))


def random_order(sys: SetSystem, seed: int) -> LinearOrder:
    rng = substream(seed, "random-order")
    perm = rng.permutation(len(sys.universe))
    return LinearOrder([sys.universe[i] for i in perm])


def brute_force_optimal_order(sys: SetSystem):
    """Exact minimum crossing number by branch and bound over all orders.

    Orders are explored lexicographically over the sorted universe, and the first
    minimizer found is returned. Raises SizeLimitExceeded beyond 9 elements.
    """
    U = sorted(sys.universe)
    n = len(U)
    if n > BRUTE_FORCE_CAP:
        raise SizeLimitExceeded(f"brute force capped at |U| <= {BRUTE_FORCE_CAP}")
    if n == 0:
        return LinearOrder([]), 0
    # col[i]: bitmask of family indices containing U[i]
    col = [0] * n
    elem_pos = {u: i for i, u in enumerate(U)}
    for xi, X in enumerate(sys.family):
        for x in X:
            col[elem_pos[x]] |= 1 << xi
    nsets = len(sys.family)
    counts = [0] * nsets
    best = [nsets * n + 1, None]
    path = []

    def rec(last, used, cur_max):
        if len(path) == n:
            if cur_max < best[0]:
                best[0] = cur_max
                best[1] = list(path)
            return
        for i in range(n):
            if used >> i & 1:
                continue
            crossed = col[last] ^ col[i]
            touched = []
            new_max = cur_max
            m = crossed
            while m:
                low = m & -m
                x = low.bit_length() - 1
                counts[x] += 1
                touched.append(x)
                if counts[x] > new_max:
                    new_max = counts[x]
                m ^= low
            if new_max < best[0]:
                path.append(i)
                rec(i, used | 1 << i, new_max)
                path.pop()
            for x in touched:
                counts[x] -= 1
            if best[0] == 0:
                return

    for first in range(n):
        path.append(first)
        rec(first, 1 << first, 0)
        path.pop()
        if best[0] == 0:
            break
    return LinearOrder([U[i] for i in best[1]]), int(best[0])
