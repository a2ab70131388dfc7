"""Compiled inner loops for component labelling and subset sweeps."""

from __future__ import annotations

import math

import numba
import numpy as np

_ONE = np.uint64(1)
_ZERO = np.uint64(0)


@numba.njit(cache=True, nogil=True)
def component_labels(indptr, indices, alive):
    """Label surviving vertices by component; faulty vertices get -1.

    Components are numbered in order of their smallest vertex.
    """
    nv = alive.shape[0]
    labels = np.full(nv, -1, dtype=np.int64)
    stack = np.empty(nv, dtype=np.int64)
    ncomp = 0
    for s in range(nv):
        if not alive[s] or labels[s] >= 0:
            continue
        labels[s] = ncomp
        top = 0
        stack[top] = s
        top += 1
        while top > 0:
            top -= 1
            x = stack[top]
            for p in range(indptr[x], indptr[x + 1]):
                y = indices[p]
                if alive[y] and labels[y] < 0:
                    labels[y] = ncomp
                    stack[top] = y
                    top += 1
        ncomp += 1
    return labels


@numba.njit(cache=True, nogil=True)
def _survivors_connected(adj, nv, alive):
    if alive == _ZERO:
        return True
    low = alive & (~alive + _ONE)
    reach = low
    frontier = low
    while frontier != _ZERO:
        grown = reach
        for v in range(nv):
            if (frontier >> np.uint64(v)) & _ONE:
                grown |= adj[v]
        grown &= alive
        frontier = grown & ~reach
        reach = grown
        if reach == alive:
            return True
    return reach == alive


@numba.njit(cache=True, nogil=True)
def scan_separating(adj, nv, combo, count):
    """Test ``count`` subsets in lexicographic order starting at ``combo``.

    ``adj`` holds one uint64 neighbour mask per vertex (nv <= 64).  Returns
    the masks of subsets whose removal disconnects the graph.  ``combo`` is
    advanced in place.
    """
    size = combo.shape[0]
    full = _ZERO
    for v in range(nv):
        full |= _ONE << np.uint64(v)
    found = []
    for _ in range(count):
        mask = _ZERO
        for i in range(size):
            mask |= _ONE << np.uint64(combo[i])
        if not _survivors_connected(adj, nv, full & ~mask):
            found.append(mask)
        # next combination in lexicographic order
        i = size - 1
        while i >= 0 and combo[i] == nv - size + i:
            i -= 1
        if i < 0:
            break
        combo[i] += 1
        for j in range(i + 1, size):
            combo[j] = combo[j - 1] + 1
    out = np.empty(len(found), dtype=np.uint64)
    for i in range(len(found)):
        out[i] = found[i]
    return out


def unrank_combination(r: int, nv: int, size: int) -> np.ndarray:
    """The ``r``-th ``size``-subset of ``range(nv)`` in lexicographic order."""
    out = np.empty(size, dtype=np.int64)
    x = 0
    for i in range(size):
        while True:
            block = math.comb(nv - x - 1, size - i - 1)
            if r < block:
                break
            r -= block
            x += 1
        out[i] = x
        x += 1
    return out


def neighbor_masks(adjacency) -> np.ndarray:
    masks = np.zeros(len(adjacency), dtype=np.uint64)
    for v, nb in enumerate(adjacency):
        m = 0
        for u in nb:
            m |= 1 << u
        masks[v] = np.uint64(m)
    return masks
