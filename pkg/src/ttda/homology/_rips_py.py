"""Pure-Python/numpy Rips persistence kernels.

Same algorithm and tie-breaking as the compiled ``_rips_ext`` module, so the
two backends produce identical pairs. Used when the extension is not built.

Simplices are indexed in the combinatorial number system: edge {i < j} is
C(j, 2) + i and triangle {a < b < c} is C(c, 3) + C(b, 2) + a. Among equal
filtration values the simplex with the larger index comes first.
"""
import heapq

import numpy as np


def connected_components(n, ei, ej, ev):
    """Union-find over edges sorted by filtration order.

    Returns (death values of merging edges, boolean mask of merging edges,
    number of surviving components).
    """
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merging = np.zeros(len(ei), dtype=bool)
    deaths = []
    for e in range(len(ei)):
        a, b = find(int(ei[e])), find(int(ej[e]))
        if a == b:
            continue
        parent[max(a, b)] = min(a, b)
        merging[e] = True
        deaths.append(ev[e])
    return np.array(deaths, dtype=np.float64), merging, n - len(deaths)


class _Coboundary:
    def __init__(self, D, threshold, ei, ej, ev):
        self.D = D
        self.thr = threshold
        self.ei, self.ej, self.ev = ei, ej, ev
        n = D.shape[0]
        k = np.arange(n + 1, dtype=np.int64)
        self.c2 = k * (k - 1) // 2
        self.c3 = k * (k - 1) * (k - 2) // 6

    def __call__(self, e):
        """(diameters, indices) of the triangles containing edge ``e``."""
        i, j = int(self.ei[e]), int(self.ej[e])
        di, dj = self.D[i], self.D[j]
        mask = (di <= self.thr) & (dj <= self.thr)
        mask[i] = mask[j] = False
        ks = np.flatnonzero(mask)
        diam = np.maximum(np.maximum(di[ks], dj[ks]), self.ev[e])
        a = np.minimum(ks, i)
        c = np.maximum(ks, j)
        b = i + j + ks - a - c
        idx = self.c3[c] + self.c2[b] + a
        return diam, idx

    def entries(self, e):
        diam, idx = self(e)
        return list(zip(diam.tolist(), (-idx).tolist()))


def _first_cofacet(diam, idx):
    """Oldest cofacet: smallest diameter, then largest index."""
    m = diam.min()
    return float(m), int(idx[diam == m].max())


def _pop_pivot(heap):
    """Pop Z/2-cancelling duplicates; return the surviving minimum or None."""
    while heap:
        top = heapq.heappop(heap)
        count = 1
        while heap and heap[0] == top:
            heapq.heappop(heap)
            count += 1
        if count % 2:
            heapq.heappush(heap, top)
            return top
    return None


def cohomology_dim1(D, threshold, ei, ej, ev, merging):
    """Persistent cohomology in dimension 1 with clearing by the merging edges.

    Edges are visited from youngest to oldest. Returns (births, deaths) with
    ``inf`` for essential classes.
    """
    cob = _Coboundary(D, threshold, ei, ej, ev)
    pivot_owner = {}
    reductions = {}
    births, deaths = [], []
    for e in range(len(ei) - 1, -1, -1):
        if merging[e]:
            continue
        diam, idx = cob(e)
        births.append(ev[e])
        if idx.size == 0:
            deaths.append(np.inf)
            continue
        d, t = _first_cofacet(diam, idx)
        if t not in pivot_owner:
            pivot_owner[t] = e
            reductions[e] = (e,)
            deaths.append(d)
            continue
        heap = list(zip(diam.tolist(), (-idx).tolist()))
        heapq.heapify(heap)
        used = {e}
        piv = _pop_pivot(heap)
        while piv is not None:
            other = pivot_owner.get(-piv[1])
            if other is None:
                break
            for f in reductions[other]:
                used ^= {f}
                for item in cob.entries(f):
                    heapq.heappush(heap, item)
            piv = _pop_pivot(heap)
        if piv is None:
            deaths.append(np.inf)
        else:
            pivot_owner[-piv[1]] = e
            reductions[e] = tuple(sorted(used))
            deaths.append(piv[0])
    return np.array(births, dtype=np.float64), np.array(deaths, dtype=np.float64)
