"""Slow, obviously-correct reference implementations used only by the tests."""
import math
from collections import deque
from functools import lru_cache
from itertools import combinations, permutations

import networkx as nx


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def bfs(adj, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def adjacency(g):
    return [set(int(x) for x in g.neighbors(v)) for v in range(g.n)]


def branching_index_naive(a_nbhds, U):
    """Straight from the recursive definition. a_nbhds: list of frozensets of B-ids."""
    @lru_cache(maxsize=None)
    def br(U):
        if not U:
            return -1
        if not a_nbhds:
            return 0
        # br >= -1 everywhere, so an empty side makes the min -1 without recursing on U itself
        return 1 + max(-1 if not (U & N) or not (U - N) else min(br(U & N), br(U - N)) for N in a_nbhds)

    return br(frozenset(U))


def crossing_naive(family, order):
    best = 0
    for X in family:
        X = set(X)
        k = sum(1 for u, w in zip(order, order[1:]) if (u in X) != (w in X))
        best = max(best, k)
    return best


def optimal_crossing_naive(universe, family):
    return min(crossing_naive(family, list(p)) for p in permutations(universe))


def traces_naive(family, A):
    A = set(A)
    return len({frozenset(set(X) & A) for X in family}) if family else 0


def is_compact(closed_sets, I):
    return any(set(I) <= N for N in closed_sets)


def weak_diameter_naive(adj, X):
    best = 0
    for u in X:
        d = bfs(adj, u)
        for w in X:
            if w not in d:
                return math.inf
            best = max(best, d[w])
    return best


def induced_edge_count(adj, S):
    return sum(1 for u, v in combinations(sorted(S), 2) if v in adj[u])
