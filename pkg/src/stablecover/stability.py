"""Branching index, the unique-neighbor sampler, the neighborhood reduction and
half-graph search.

Subsets of B are python-int bitmasks over B-positions; A-sets are bitmasks over
A-positions. Public functions accept and return vertex ids.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    BadParams,
    BranchingBoundViolated,
    DegreeZeroVertex,
    InvariantViolation,
    RetryBudgetExhausted,
    SizeLimitExceeded,
)
from .graph_core import BipartiteGraph, Graph
from .rng import substream

ALPHA = 1.1
MEMO_BUDGET = 2_000_000


class _AboveCap:
    __slots__ = ()

    def __repr__(self):
        return "AboveCap"

    def __reduce__(self):
        return (_above_cap, ())


def _above_cap():
    return ABOVE_CAP


ABOVE_CAP = _AboveCap()


def popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def b_mask(bip: BipartiteGraph, U: Iterable[int] | None) -> int:
    if U is None:
        return (1 << bip.nb) - 1
    pos = {b: j for j, b in enumerate(bip.side_b)}
    m = 0
    for b in U:
        if b not in pos:
            raise BadParams(f"{b} is not a B-vertex")
        m |= 1 << pos[b]
    return m


class BranchingOracle:
    """Memoized branching index for one fixed bipartite graph.

    Twins in B (equal neighborhoods over all of A) can never be separated, so a
    set U is replaced by the set of class representatives it meets before lookup.
    """

    def __init__(self, bip: BipartiteGraph, memo_budget: int = MEMO_BUDGET):
        self.bip = bip
        self.memo_budget = memo_budget
        first = {}
        rep = []
        for j, m in enumerate(bip.b_masks):
            rep.append(first.setdefault(m, j))
        self.rep = rep
        self.a_masks = bip.a_masks
        self.memo = {}  # key -> (value, exact)

    def canon(self, U: int) -> int:
        rep = self.rep
        key = 0
        for j in _bits(U):
            key |= 1 << rep[j]
        return key

    def value(self, U: int, limit: int | None = None) -> int:
        """min(br(U), limit); exact br(U) when limit is None."""
        if U == 0:
            return -1
        return self._br(self.canon(U), limit if limit is not None else 1 << 30)

    def _br(self, key: int, limit: int) -> int:
        if key == 0:
            return -1
        if limit <= 0:
            return limit
        hit = self.memo.get(key)
        if hit is not None:
            val, exact = hit
            if exact or val >= limit:
                return min(val, limit)
        size = popcount(key)
        # splitting depth d needs 2^d distinct classes
        ub = size.bit_length() - 1
        if ub == 0:
            self._store(key, 0, True)
            return 0
        best = 0
        target = min(ub, limit)
        for am in self.a_masks:
            inside = key & am
            if inside == 0 or inside == key:
                continue
            outside = key & ~am
            small, large = (inside, outside) if popcount(inside) <= popcount(outside) else (outside, inside)
            if popcount(small).bit_length() <= best:
                continue  # 1 + br(small) cannot beat best
            v1 = self._br(small, target - 1)
            if 1 + v1 <= best:
                continue
            v2 = self._br(large, min(v1, target - 1))
            term = 1 + min(v1, v2)
            if term > best:
                best = term
                if best >= target:
                    break
        exact = best < limit
        self._store(key, best, exact)
        return min(best, limit)

    def _store(self, key, val, exact):
        if len(self.memo) >= self.memo_budget:
            raise SizeLimitExceeded(f"branching-index memo exceeded {self.memo_budget} entries")
        self.memo[key] = (val, exact)


def branching_index(bip: BipartiteGraph, U: Iterable[int] | None = None, cap: int | None = None,
                    memo_budget: int = MEMO_BUDGET):
    """Branching index of U ⊆ B (default U = B).

    -1 for the empty set; otherwise 1 + max over a in A of the smaller index of
    the two parts a cuts U into (a part may be empty). With ``cap`` set, values
    above it come back as ABOVE_CAP.
    """
    orc = BranchingOracle(bip, memo_budget)
    mask = b_mask(bip, U)
    if cap is None:
        return orc.value(mask)
    v = orc.value(mask, cap + 1)
    return ABOVE_CAP if v > cap else v


# ------------------------------------------------------------------ sampling

@dataclass(frozen=True)
class SampleResult:
    X: tuple          # A vertex ids
    B_prime: tuple    # B vertex ids, each with exactly one neighbor in X
    bucket: int       # exponent i of the degree bucket [α^i, α^(i+1)) used
    draws: int        # random draws spent in total
    bound: float      # |B| / (150 ln |A|)


def degree_bucket(deg: int) -> int:
    i = int(math.floor(math.log(deg) / math.log(ALPHA)))
    while ALPHA ** (i + 1) <= deg:
        i += 1
    while i > 0 and ALPHA ** i > deg:
        i -= 1
    return i


def sample_masks(na: int, b_masks, rng, budget: int | None = None):
    """Bitmask core of the sampler. Returns (Xmask, list of chosen B-positions, bucket, draws)."""
    nb = len(b_masks)
    if na < 2:
        raise BadParams("sampling needs |A| >= 2")
    for j, m in enumerate(b_masks):
        if m == 0:
            raise DegreeZeroVertex(f"B-position {j} has no neighbor")
    if nb == 0:
        return 0, [], 0, 0
    bound = nb / (150.0 * math.log(na))
    if budget is None:
        budget = math.ceil(40 * math.log(na + 2))
    buckets = {}
    for j, m in enumerate(b_masks):
        buckets.setdefault(degree_bucket(popcount(m)), []).append(j)
    order = sorted(buckets, key=lambda i: (-len(buckets[i]), i))
    draws = 0
    for i in order:
        members = buckets[i]
        p = 1.0 / ALPHA ** i
        for _ in range(budget):
            draws += 1
            pick = rng.random(na) < p
            X = 0
            for a in np.flatnonzero(pick):
                X |= 1 << int(a)
            chosen = [j for j in members if popcount(b_masks[j] & X) == 1]
            if len(chosen) >= bound:
                # drop X-vertices that touch none of the chosen; uniqueness is unaffected
                touch = 0
                for j in chosen:
                    touch |= b_masks[j]
                return X & touch, chosen, i, draws
    raise RetryBudgetExhausted(f"no draw reached the bound {bound:.4f} within {budget} tries per bucket")


def sample_unique_neighbor(bip: BipartiteGraph, seed: int = 0, rng=None, budget: int | None = None) -> SampleResult:
    """Pick X ⊆ A and B' ⊆ B such that every b in B' has exactly one neighbor in X
    and |B'| >= |B| / (150 ln |A|).

    Degrees are bucketed into [α^i, α^(i+1)) with α = 1.1; starting from the
    largest bucket, X includes each A-vertex independently with probability α^-i
    until the bound is met or the per-bucket budget runs out.
    """
    if rng is None:
        rng = substream(seed, "sample")
    X, chosen, bucket, draws = sample_masks(bip.na, bip.b_masks, rng, budget)
    bound = bip.nb / (150.0 * math.log(bip.na)) if bip.na >= 2 else math.inf
    return SampleResult(
        tuple(bip.side_a[i] for i in _bits(X)),
        tuple(bip.side_b[j] for j in chosen),
        bucket, draws, bound,
    )


# ----------------------------------------------------------------- reduction

@dataclass
class StageRecord:
    k: int                 # stage index; produces B_{k+1}, X_{k+1}
    case: int              # 1 = sampled from B+, 2 = kept B-
    size_b: int            # |B_k|
    X: tuple               # X_{k+1} as A ids
    size_b_next: int       # |B_{k+1}|
    n_classes: int
    e0_size: int
    size_plus: int
    size_minus: int
    same_nbd_ok: bool = True
    same_split_ok: bool = True
    classes_ok: bool = True
    unique_ok: bool = True

    def as_dict(self):
        return dict(self.__dict__, X=list(self.X))


@dataclass
class ReductionResult:
    A_prime: tuple
    B_prime: tuple
    G_prime: BipartiteGraph   # G_d restricted to A' x B'
    G_final: BipartiteGraph   # G_d on the full sides
    trace: list
    d: int
    invariants: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "d": self.d,
            "A_prime": list(self.A_prime),
            "B_prime": list(self.B_prime),
            "edges_prime": [list(e) for e in self.G_prime.edges()],
            "stages": [s.as_dict() for s in self.trace],
            "invariants": self.invariants,
        }


def _classes(bset, masks, Xu):
    groups = {}
    for j in bset:
        groups.setdefault(masks[j] & Xu, []).append(j)
    out = []
    for js in groups.values():
        m = 0
        for j in js:
            m |= 1 << j
        out.append(m)
    return out


def reduce_neighborhoods(bip: BipartiteGraph, d: int, seed: int = 0, check: bool = True,
                         memo_budget: int = MEMO_BUDGET) -> ReductionResult:
    """Shrink B so that the survivors have at most d neighbors in the chosen A' and
    pairwise distinct neighborhoods there.

    Stage k computes the k-classes, flips the edges E0 of A_k × P for every class
    P and vertex a with br(N(a) ∩ P) = d - k, then either samples unique
    neighbors among the vertices B+ still seeing A_k (Case 1, if that is at
    least half of B_k) or keeps the rest B- (Case 2).
    """
    na, nb = bip.na, bip.nb
    if na < 2:
        raise BadParams("reduction needs |A| >= 2")
    if d < 0:
        raise BadParams("d must be >= 0")
    if len(set(bip.b_masks)) != nb:
        raise BadParams("B-vertices must have pairwise distinct neighborhoods")
    top = BranchingOracle(bip, memo_budget).value((1 << nb) - 1, d + 1)
    if top > d:
        raise BranchingBoundViolated(f"branching index of B exceeds d={d}")

    rng = substream(seed, "reduce")
    allA = (1 << na) - 1
    masks = list(bip.b_masks)          # G_k, per B-position bitmask over A
    bset = list(range(nb))             # B_k
    Xs = [0]                           # X_0 = empty
    trace = []
    for k in range(d):
        Xu = 0
        for x in Xs:
            Xu |= x
        Ak = allA & ~Xu
        gk = BipartiteGraph(bip.side_a, bip.side_b, masks)
        orc = BranchingOracle(gk, memo_budget)
        classes = _classes(bset, masks, Xu)
        rec = StageRecord(k, 0, len(bset), (), 0, len(classes), 0, 0, 0)
        budget_br = d - k
        flip = [0] * nb                # per B-position, A-bits toggled by E0
        e0 = 0
        for P in classes:
            if orc.value(P, budget_br + 1) > budget_br:
                raise BranchingBoundViolated(f"stage {k}: a class has branching index above {budget_br}")
            # classes must be separated by A_k (distinct neighborhoods outside X)
            seen = set()
            for j in _bits(P):
                key = masks[j] & Ak
                if key in seen:
                    rec.classes_ok = False
                seen.add(key)
            hit = 0
            for i in _bits(Ak):
                if orc.value(gk.a_masks[i] & P, budget_br + 1) == budget_br:
                    hit |= 1 << i
            if hit:
                for j in _bits(P):
                    flip[j] |= hit
                e0 += popcount(hit) * popcount(P)
        new_masks = [m ^ f for m, f in zip(masks, flip)]
        rec.e0_size = e0
        # same neighborhoods inside X_0..X_k, and each a cuts every class the same way
        rec.same_nbd_ok = all((a & Xu) == (b & Xu) for a, b in zip(masks, new_masks))
        g_next = BipartiteGraph(bip.side_a, bip.side_b, new_masks)
        for P in classes:
            for i in range(na):
                old_in, new_in = gk.a_masks[i] & P, g_next.a_masks[i] & P
                if {old_in, P & ~old_in} != {new_in, P & ~new_in}:
                    rec.same_split_ok = False
        minus = [j for j in bset if new_masks[j] & Ak == 0]
        plus = [j for j in bset if new_masks[j] & Ak]
        rec.size_plus, rec.size_minus = len(plus), len(minus)
        if 2 * len(plus) >= len(bset):
            rec.case = 1
            if not plus:
                X, nxt = 0, []
            elif popcount(Ak) == 1:
                X, nxt = Ak, list(plus)
            else:
                apos = list(_bits(Ak))
                sub = []
                for j in plus:
                    m = 0
                    for t, i in enumerate(apos):
                        if new_masks[j] >> i & 1:
                            m |= 1 << t
                    sub.append(m)
                Xl, chosen, _, _ = sample_masks(len(apos), sub, rng)
                X = 0
                for t in _bits(Xl):
                    X |= 1 << apos[t]
                nxt = [plus[c] for c in chosen]
            rec.unique_ok = all(popcount(new_masks[j] & X) == 1 for j in nxt)
        else:
            rec.case = 2
            X, nxt = 0, minus
        rec.X = tuple(bip.side_a[i] for i in _bits(X))
        rec.size_b_next = len(nxt)
        trace.append(rec)
        if check and not (rec.same_nbd_ok and rec.same_split_ok and rec.classes_ok and rec.unique_ok):
            raise InvariantViolation(f"stage {k} failed a per-stage check: {rec.as_dict()}")
        masks = new_masks
        bset = nxt
        Xs.append(X)

    Ap = 0
    for x in Xs:
        Ap |= x
    a_pos = list(_bits(Ap))
    final = BipartiteGraph(bip.side_a, bip.side_b, masks)
    sub_masks = []
    for j in bset:
        m = 0
        for t, i in enumerate(a_pos):
            if masks[j] >> i & 1:
                m |= 1 << t
        sub_masks.append(m)
    g_prime = BipartiteGraph(tuple(bip.side_a[i] for i in a_pos), tuple(bip.side_b[j] for j in bset), sub_masks)
    inv = reduction_invariants(bip, g_prime, d)
    if check and not all(inv[k] for k in ("degree_ok", "distinct_ok", "size_ok")):
        raise InvariantViolation(f"final invariants failed: {inv}")
    return ReductionResult(g_prime.side_a, g_prime.side_b, g_prime, final, trace, d, inv)


def reduction_invariants(bip: BipartiteGraph, g_prime: BipartiteGraph, d: int) -> dict:
    """Recount degree <= d, distinct neighborhoods and |B'| >= |B| / (300 ln n)^d."""
    degs = [popcount(m) for m in g_prime.b_masks]
    n = bip.na
    need = bip.nb / (300.0 * math.log(n)) ** d if n >= 2 else 0.0
    return {
        "max_degree": max(degs, default=0),
        "degree_ok": all(x <= d for x in degs),
        "distinct_ok": len(set(g_prime.b_masks)) == len(g_prime.b_masks),
        "size": g_prime.nb,
        "size_needed": need,
        "size_ok": g_prime.nb >= need,
    }


# ---------------------------------------------------------------- half-graphs

HALFGRAPH_LIMIT_CAP = 12
HALFGRAPH_VERTEX_CAP = 256


def max_semi_induced_halfgraph(g: Graph, limit: int):
    """Largest n <= limit with a_1..a_n, b_1..b_n (all distinct) and a_i b_j ∈ E iff i <= j.

    Edges inside the a's or inside the b's are ignored. Returns (n, (a-tuple, b-tuple)).
    Any prefix of a witness is again a witness, so the search extends witnesses
    by a new last pair: b' adjacent to all current a's, and a' adjacent to b'
    but to none of the current b's.
    """
    if limit > HALFGRAPH_LIMIT_CAP or g.n > HALFGRAPH_VERTEX_CAP:
        raise SizeLimitExceeded(f"half-graph search capped at limit {HALFGRAPH_LIMIT_CAP}, {HALFGRAPH_VERTEX_CAP} vertices")
    adj = g.adj_masks()
    full = (1 << g.n) - 1
    best = [0, ((), ())]

    def extend(avs, bvs, used, common_a, union_b):
        k = len(avs)
        if k > best[0]:
            best[0] = k
            best[1] = (tuple(avs), tuple(bvs))
        if k >= limit or best[0] >= limit:
            return
        cand_b = common_a & ~used
        for b in _bits(cand_b):
            cand_a = adj[b] & ~union_b & ~used & ~(1 << b)
            for a in _bits(cand_a):
                avs.append(a)
                bvs.append(b)
                extend(avs, bvs, used | 1 << a | 1 << b, common_a & adj[a], union_b | adj[b])
                avs.pop()
                bvs.pop()
                if best[0] >= limit:
                    return

    if limit >= 1:
        extend([], [], 0, full, 0)
    return best[0], best[1]
