# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled Rips persistence kernels (dimensions 0 and 1).

Mirrors ``_rips_py`` exactly: simplices indexed in the combinatorial number
system, ties in filtration value broken by larger index first, cohomology
reduction from youngest edge to oldest with merging edges cleared. Working
columns are lazy heaps of (-diameter, index) so the top is the pivot.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY
from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.unordered_map cimport unordered_map
from libcpp.queue cimport priority_queue
from cython.operator cimport dereference as deref

cnp.import_array()

ctypedef pair[double, long long] Entry


def connected_components(Py_ssize_t n, const int[::1] ei, const int[::1] ej, const double[::1] ev):
    cdef vector[int] parent
    cdef Py_ssize_t m = ei.shape[0], e
    cdef int a, b
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] merging = np.zeros(m, dtype=np.uint8)
    deaths = []
    parent.resize(n)
    for e in range(n):
        parent[e] = <int>e
    for e in range(m):
        a = _find(parent, ei[e])
        b = _find(parent, ej[e])
        if a == b:
            continue
        if a < b:
            parent[b] = a
        else:
            parent[a] = b
        merging[e] = 1
        deaths.append(ev[e])
    return np.array(deaths, dtype=np.float64), merging.astype(bool), n - len(deaths)


cdef inline int _find(vector[int]& parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef void _push_coboundary(const double[:, ::1] D, double thr, Py_ssize_t n,
                           const long long* c2, const long long* c3,
                           int i, int j, double v, priority_queue[Entry]& heap) noexcept nogil:
    cdef Py_ssize_t k
    cdef double dik, djk, diam
    cdef long long a, b, c
    cdef const double* row_i = &D[i, 0]
    cdef const double* row_j = &D[j, 0]
    for k in range(n):
        if k == i or k == j:
            continue
        dik = row_i[k]
        djk = row_j[k]
        if dik > thr or djk > thr:
            continue
        diam = v
        if dik > diam:
            diam = dik
        if djk > diam:
            diam = djk
        if k < i:
            a = k; b = i; c = j
        elif k < j:
            a = i; b = k; c = j
        else:
            a = i; b = j; c = k
        heap.push(Entry(-diam, c3[c] + c2[b] + a))


cdef bint _first_cofacet(const double[:, ::1] D, double thr, Py_ssize_t n,
                         const long long* c2, const long long* c3,
                         int i, int j, double v, Entry* best) noexcept nogil:
    """Oldest cofacet of edge (i, j) without materializing the column.

    Triangle indices grow with the third vertex k, so scanning k downward
    meets larger indices first and the first cofacet with diameter equal to
    the edge's own length is the answer.
    """
    cdef Py_ssize_t k
    cdef double dik, djk, diam
    cdef long long a, b, c
    cdef bint found = False
    cdef const double* row_i = &D[i, 0]
    cdef const double* row_j = &D[j, 0]
    for k in range(n - 1, -1, -1):
        if k == i or k == j:
            continue
        dik = row_i[k]
        djk = row_j[k]
        if dik > thr or djk > thr:
            continue
        diam = v
        if dik > diam:
            diam = dik
        if djk > diam:
            diam = djk
        if found and diam >= -best.first:
            continue
        if k < i:
            a = k; b = i; c = j
        elif k < j:
            a = i; b = k; c = j
        else:
            a = i; b = j; c = k
        best.first = -diam
        best.second = c3[c] + c2[b] + a
        found = True
        if diam == v:
            break
    return found


cdef bint _pop_pivot(priority_queue[Entry]& heap, Entry* out) noexcept nogil:
    """Cancel duplicate pairs at the top (Z/2); leave the pivot on the heap."""
    cdef Entry top
    cdef int count
    while not heap.empty():
        top = heap.top()
        heap.pop()
        count = 1
        while not heap.empty() and heap.top() == top:
            heap.pop()
            count += 1
        if count % 2:
            heap.push(top)
            out[0] = top
            return True
    return False


cdef void _sym_diff(vector[int]& acc, vector[int]& add, vector[int]& tmp) noexcept nogil:
    # both kept sorted ascending
    cdef size_t p = 0, q = 0
    tmp.clear()
    while p < acc.size() and q < add.size():
        if acc[p] < add[q]:
            tmp.push_back(acc[p]); p += 1
        elif add[q] < acc[p]:
            tmp.push_back(add[q]); q += 1
        else:
            p += 1; q += 1
    while p < acc.size():
        tmp.push_back(acc[p]); p += 1
    while q < add.size():
        tmp.push_back(add[q]); q += 1
    acc.swap(tmp)


def cohomology_dim1(const double[:, ::1] D, double threshold,
                    const int[::1] ei, const int[::1] ej, const double[::1] ev,
                    merging):
    cdef Py_ssize_t n = D.shape[0]
    cdef Py_ssize_t m = ei.shape[0]
    cdef Py_ssize_t e, t, f
    cdef const cnp.uint8_t[::1] clear = np.ascontiguousarray(merging, dtype=np.uint8)
    cdef vector[long long] c2, c3
    cdef unordered_map[long long, int] pivot_owner
    cdef unordered_map[long long, int].iterator it
    cdef vector[vector[int]] reductions
    cdef vector[int] used, used_tmp, add
    cdef priority_queue[Entry] heap
    cdef Entry piv
    cdef bint found
    cdef vector[double] births, deaths
    cdef int other
    cdef long long kk

    c2.resize(n + 1)
    c3.resize(n + 1)
    for kk in range(n + 1):
        c2[kk] = kk * (kk - 1) // 2
        c3[kk] = kk * (kk - 1) * (kk - 2) // 6
    reductions.resize(m)
    with nogil:
        for e in range(m - 1, -1, -1):
            if clear[e]:
                continue
            births.push_back(ev[e])
            found = _first_cofacet(D, threshold, n, c2.data(), c3.data(),
                                   ei[e], ej[e], ev[e], &piv)
            if not found:
                deaths.push_back(INFINITY)
                continue
            it = pivot_owner.find(piv.second)
            if it == pivot_owner.end():
                pivot_owner[piv.second] = <int>e
                reductions[e].push_back(<int>e)
                deaths.push_back(-piv.first)
                continue
            while not heap.empty():
                heap.pop()
            _push_coboundary(D, threshold, n, c2.data(), c3.data(), ei[e], ej[e], ev[e], heap)
            used.clear()
            used.push_back(<int>e)
            found = _pop_pivot(heap, &piv)
            while found:
                it = pivot_owner.find(piv.second)
                if it == pivot_owner.end():
                    break
                other = deref(it).second
                for t in range(<Py_ssize_t>reductions[other].size()):
                    f = reductions[other][t]
                    _push_coboundary(D, threshold, n, c2.data(), c3.data(),
                                     ei[f], ej[f], ev[f], heap)
                _sym_diff(used, reductions[other], used_tmp)
                found = _pop_pivot(heap, &piv)
            if found:
                pivot_owner[piv.second] = <int>e
                reductions[e] = used
                deaths.push_back(-piv.first)
            else:
                deaths.push_back(INFINITY)
    return (np.asarray([births[t] for t in range(births.size())], dtype=np.float64),
            np.asarray([deaths[t] for t in range(deaths.size())], dtype=np.float64))
