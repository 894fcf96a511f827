"""The interpreted kernel definitions (the no-numba fallback) must agree
with their compiled twins."""

import numpy as np

import oracles
from conftest import graph_from_edges
from eosgraph import _kernels


def csr_pair(seed):
    n, edges = oracles.random_digraph(seed, max_nodes=60)
    g = graph_from_edges(edges)
    indptr, indices = g.out_csr()
    und = g.undirected_projection()
    return g, indptr, indices, und


def test_scc_labels_py_func_matches_compiled():
    for seed in range(6):
        _, indptr, indices, _ = csr_pair(seed)
        compiled_labels, compiled_count = _kernels.scc_labels(indptr, indices)
        py_labels, py_count = _kernels.scc_labels.py_func(indptr, indices)
        assert compiled_count == py_count
        # same partition (label ids may differ only by renaming; here both use
        # completion order so they match exactly)
        assert np.array_equal(compiled_labels, py_labels)


def test_flood_labels_py_func_matches_compiled():
    for seed in range(6):
        _, _, _, und = csr_pair(seed)
        c_labels, c_count = _kernels.flood_labels(und.indptr, und.indices)
        p_labels, p_count = _kernels.flood_labels.py_func(und.indptr, und.indices)
        assert c_count == p_count
        assert np.array_equal(c_labels, p_labels)


def test_bfs_py_func_matches_compiled():
    _, _, _, und = csr_pair(3)
    n = und.node_count
    for src in range(0, n, 7):
        dist_c = np.full(n, -1, np.int64)
        dist_p = np.full(n, -1, np.int64)
        queue = np.empty(n, np.int64)
        ecc_c, touched_c = _kernels.bfs_eccentricity(und.indptr, und.indices, src, dist_c, queue)
        ecc_p, touched_p = _kernels.bfs_eccentricity.py_func(
            und.indptr, und.indices, src, dist_p, np.empty(n, np.int64)
        )
        assert (ecc_c, touched_c) == (ecc_p, touched_p)
        assert np.array_equal(dist_c, dist_p)


def test_triangle_counts_py_func_matches_compiled():
    for seed in range(6):
        _, _, _, und = csr_pair(seed)
        compiled = _kernels.triangle_pair_counts(und.indptr, und.indices)
        interpreted = _kernels.triangle_pair_counts.py_func(und.indptr, und.indices)
        assert np.array_equal(compiled, interpreted)
