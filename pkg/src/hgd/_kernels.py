"""Compiled inner loops for the two exhaustive engines.

Both kernels take a half-open index range so callers can split the work
across threads; numba releases the GIL inside them.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _rank_u64(rows, work, dim):
    for i in range(dim):
        work[i] = rows[i]
    rank = 0
    for col in range(dim):
        bit = np.uint64(1) << np.uint64(col)
        pivot = -1
        for r in range(rank, dim):
            if work[r] & bit:
                pivot = r
                break
        if pivot < 0:
            continue
        tmp = work[pivot]
        work[pivot] = work[rank]
        work[rank] = tmp
        for r in range(rank + 1, dim):
            if work[r] & bit:
                work[r] ^= tmp
        rank += 1
    return rank


@njit(cache=True, nogil=True)
def rank_histogram(pos_i, pos_j, dim, start, stop, hist):
    """Add the rank of every assignment in ``[start, stop)`` (Gray-code order) to ``hist``.

    Free bit ``b`` toggles entries ``(pos_i[b], pos_j[b])`` and its mirror.
    """
    if stop <= start:
        return
    nbits = pos_i.shape[0]
    rows = np.zeros(max(dim, 1), dtype=np.uint64)
    work = np.zeros(max(dim, 1), dtype=np.uint64)
    g = start ^ (start >> 1)
    for b in range(nbits):
        if (g >> b) & 1:
            i = pos_i[b]
            j = pos_j[b]
            rows[i] ^= np.uint64(1) << np.uint64(j)
            if i != j:
                rows[j] ^= np.uint64(1) << np.uint64(i)
    hist[_rank_u64(rows, work, dim)] += 1
    for a in range(start + 1, stop):
        b = 0
        while not ((a >> b) & 1):
            b += 1
        i = pos_i[b]
        j = pos_j[b]
        rows[i] ^= np.uint64(1) << np.uint64(j)
        if i != j:
            rows[j] ^= np.uint64(1) << np.uint64(i)
        hist[_rank_u64(rows, work, dim)] += 1


@njit(cache=True, nogil=True)
def _count_orbits(rot, dart_head, flip, twist, visited):
    """Number of orbits of the sided-dart permutation.

    ``rot[v, p]`` is the p-th outgoing dart at ``v`` in reference order;
    dart ``d`` runs along edge ``d >> 1`` and ``d ^ 1`` is its reversal.
    A state is ``2 * dart + side``.
    """
    ndarts = dart_head.shape[0]
    nstates = 2 * ndarts
    for s in range(nstates):
        visited[s] = 0
    orbits = 0
    for s0 in range(nstates):
        if visited[s0]:
            continue
        orbits += 1
        s = s0
        while not visited[s]:
            visited[s] = 1
            d = s >> 1
            side = (s & 1) ^ twist[d >> 1]
            v = dart_head[d]
            back = d ^ 1
            p = 0
            while rot[v, p] != back:
                p += 1
            if side ^ flip[v]:
                p = (p + 2) % 3
            else:
                p = (p + 1) % 3
            s = (rot[v, p] << 1) | side
    return orbits


@njit(cache=True, nogil=True)
def genus_histogram(rot, dart_head, cotree_edges, n_vertices, n_edges, start, stop, hist):
    """Histogram Euler genus over rotation-system indices in ``[start, stop)``.

    The low ``n_vertices`` bits of an index flip vertex rotations; the
    remaining bits twist the co-tree edges in ``cotree_edges`` order.
    """
    flip = np.zeros(n_vertices, dtype=np.int64)
    twist = np.zeros(n_edges, dtype=np.int64)
    visited = np.zeros(4 * n_edges, dtype=np.uint8)
    nct = cotree_edges.shape[0]
    base = 2 - n_vertices + n_edges
    for idx in range(start, stop):
        for v in range(n_vertices):
            flip[v] = (idx >> v) & 1
        for c in range(nct):
            twist[cotree_edges[c]] = (idx >> (n_vertices + c)) & 1
        orbits = _count_orbits(rot, dart_head, flip, twist, visited)
        faces = orbits // 2
        genus = base - faces
        if genus < 0 or genus >= hist.shape[0] or (orbits & 1):
            return idx
        hist[genus] += 1
    return -1


@njit(cache=True, nogil=True)
def count_faces(rot, dart_head, flip, twist):
    visited = np.zeros(2 * dart_head.shape[0], dtype=np.uint8)
    return _count_orbits(rot, dart_head, flip, twist, visited)
