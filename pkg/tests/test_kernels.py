import os
import subprocess
import sys

import numpy as np
import pytest

from stablecover import _kernels
from stablecover.graph_core import grid_graph, random_graph
from stablecover.set_system import neighborhood_system

needs_numba = pytest.mark.skipif(_kernels.numba_impl is None, reason="numba unavailable")


def _fixtures():
    rng = np.random.default_rng(5)
    yield grid_graph(7)
    for n, p in ((30, 0.1), (45, 0.3), (12, 0.0)):
        yield random_graph(n, p, rng)


@needs_numba
@pytest.mark.parametrize("idx", range(4))
def test_backend_parity(idx):
    g = list(_fixtures())[idx]
    nb, np_ = _kernels.numba_impl, _kernels.numpy_impl
    for cutoff in (-1, 2):
        assert np.array_equal(nb.bfs_all_pairs(g.indptr, g.indices, g.n, cutoff),
                              np_.bfs_all_pairs(g.indptr, g.indices, g.n, cutoff))
    member = np.ascontiguousarray(neighborhood_system(g).member)
    rank = np.random.default_rng(idx).permutation(g.n).astype(np.int64)
    start = int(np.argmin(rank))
    p1 = nb.welzl_greedy(member, rank, start)
    p2 = np_.welzl_greedy(member, rank, start)
    assert np.array_equal(p1, p2)
    perm = np.asarray(p1, dtype=np.int64)
    assert np.array_equal(nb.crossings(member, perm), np_.crossings(member, perm))
    s1, w1 = nb.compact_intervals(g.closed_matrix(), perm)
    s2, w2 = np_.compact_intervals(g.closed_matrix(), perm)
    assert np.array_equal(s1, s2) and np.array_equal(w1, w2)


def test_env_flag_selects_numpy():
    env = dict(os.environ, STABLECOVER_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from stablecover import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_impl_lookup():
    assert _kernels.impl("numpy") is _kernels.numpy_impl
    assert _kernels.impl() is _kernels.active
    with pytest.raises(ValueError):
        _kernels.impl("fortran")
