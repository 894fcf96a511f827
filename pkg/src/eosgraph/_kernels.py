"""Array kernels behind the metric suite.

All kernels operate on CSR adjacency (indptr, indices) with int64 arrays and
are written in nopython-compatible style. When numba is importable they are
JIT-compiled (cached on disk, nogil); otherwise the pure-Python definitions
run as-is, which keeps small graphs and the test oracles usable without a
compiler. Each compiled kernel keeps its interpreted twin on ``.py_func``.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def decorate(fn):
            fn.py_func = fn
            return fn

        return decorate


@njit(cache=True, nogil=True)
def scc_labels(indptr, indices):
    """Strongly connected components via iterative Tarjan.

    Returns (labels, count); labels are assigned in completion order, which
    is deterministic for a given CSR. Linear in nodes + edges; the explicit
    DFS stack bounds recursion by n.
    """
    n = indptr.shape[0] - 1
    order = np.full(n, -1, np.int64)  # visitation index, -1 = unvisited
    low = np.empty(n, np.int64)
    on_stack = np.zeros(n, np.uint8)
    stack = np.empty(n, np.int64)
    sp = 0
    labels = np.full(n, -1, np.int64)
    ncomp = 0
    counter = 0
    dfs_node = np.empty(n, np.int64)
    dfs_edge = np.empty(n, np.int64)
    for root in range(n):
        if order[root] != -1:
            continue
        top = 0
        dfs_node[0] = root
        dfs_edge[0] = indptr[root]
        order[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        on_stack[root] = 1
        while top >= 0:
            v = dfs_node[top]
            e = dfs_edge[top]
            if e < indptr[v + 1]:
                dfs_edge[top] = e + 1
                w = indices[e]
                if order[w] == -1:
                    order[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    on_stack[w] = 1
                    top += 1
                    dfs_node[top] = w
                    dfs_edge[top] = indptr[w]
                elif on_stack[w] == 1 and order[w] < low[v]:
                    low[v] = order[w]
            else:
                top -= 1
                if top >= 0 and low[v] < low[dfs_node[top]]:
                    low[dfs_node[top]] = low[v]
                if low[v] == order[v]:
                    while True:
                        w = stack[sp - 1]
                        sp -= 1
                        on_stack[w] = 0
                        labels[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return labels, ncomp


@njit(cache=True, nogil=True)
def flood_labels(indptr, indices):
    """Connected-component labels by BFS flood fill over an undirected CSR."""
    n = indptr.shape[0] - 1
    labels = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    ncomp = 0
    for s in range(n):
        if labels[s] != -1:
            continue
        labels[s] = ncomp
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if labels[v] == -1:
                    labels[v] = ncomp
                    queue[tail] = v
                    tail += 1
        ncomp += 1
    return labels, ncomp


@njit(cache=True, nogil=True)
def bfs_eccentricity(indptr, indices, src, dist, queue):
    """BFS from ``src``; returns (eccentricity, touched count).

    ``dist`` must be -1 for every node in src's component on entry; the
    traversal never leaves that component. ``queue[:touched]`` lists the
    visited nodes so the caller can cheaply reset ``dist``.
    """
    dist[src] = 0
    queue[0] = src
    head, tail = 0, 1
    ecc = 0
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if dist[v] == -1:
                dist[v] = du + 1
                if du + 1 > ecc:
                    ecc = du + 1
                queue[tail] = v
                tail += 1
    return ecc, tail


@njit(cache=True, nogil=True)
def component_diameter_allpairs(indptr, indices, members, dist, queue):
    """Exact diameter of one component by BFS from each member."""
    diam = 0
    for i in range(members.shape[0]):
        ecc, touched = bfs_eccentricity(indptr, indices, members[i], dist, queue)
        if ecc > diam:
            diam = ecc
        for j in range(touched):
            dist[queue[j]] = -1
    return diam


@njit(cache=True, nogil=True)
def triangle_pair_counts(indptr, indices):
    """Per-node count of (ordered) adjacent neighbor pairs closed by an edge.

    For each node u the result equals twice the number of triangles through
    u; rows of ``indices`` must be sorted. Cost is one sorted merge per edge,
    i.e. O(sum over edges of deg(u)+deg(v)).
    """
    n = indptr.shape[0] - 1
    closed = np.zeros(n, np.int64)
    for u in range(n):
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if v <= u:
                continue
            i = indptr[u]
            j = indptr[v]
            iu = indptr[u + 1]
            jv = indptr[v + 1]
            common = 0
            while i < iu and j < jv:
                a = indices[i]
                b = indices[j]
                if a == b:
                    common += 1
                    i += 1
                    j += 1
                elif a < b:
                    i += 1
                else:
                    j += 1
            closed[u] += common
            closed[v] += common
    return closed


@njit(cache=True, nogil=True)
def tree_depths(indptr, indices, root, depth, queue):
    """Depths from ``root`` over directed out-edges (callers ensure a tree)."""
    n = depth.shape[0]
    for i in range(n):
        depth[i] = -1
    depth[root] = 0
    queue[0] = root
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if depth[v] == -1:
                depth[v] = depth[u] + 1
                queue[tail] = v
                tail += 1
    return tail


def warm_up() -> None:
    """Compile every kernel on a two-node graph (no-op without numba)."""
    indptr = np.array([0, 1, 2], np.int64)
    indices = np.array([1, 0], np.int64)
    dist = np.full(2, -1, np.int64)
    queue = np.empty(2, np.int64)
    scc_labels(indptr, indices)
    flood_labels(indptr, indices)
    _, touched = bfs_eccentricity(indptr, indices, 0, dist, queue)
    for j in range(touched):
        dist[queue[j]] = -1
    component_diameter_allpairs(indptr, indices, np.array([0, 1], np.int64), dist, queue)
    triangle_pair_counts(indptr, indices)
    tree_depths(indptr, indices, 0, dist, queue)
