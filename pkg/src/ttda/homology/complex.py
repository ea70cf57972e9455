"""Exact simplicial homology with signed integer boundary operators.

This is the small-scale oracle: matrices are dense and ranks are computed
exactly, so it is only meant for complexes with a few hundred simplices.
"""
from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..errors import DomainError

Simplex = Tuple[int, ...]

EXACT_RANK_LIMIT = 500
RANK_TOL = 1e-8


class SimplicialComplex:
    """Closure-complete set of simplices, stored per dimension in sorted order."""

    def __init__(self, simplices: Iterable[Sequence[int]] = ()):
        self._by_dim: Dict[int, set] = {}
        for s in simplices:
            self.add(s)

    def add(self, simplex: Sequence[int]):
        """Add ``simplex`` and all of its faces."""
        s = tuple(sorted(int(v) for v in simplex))
        if len(s) == 0:
            raise DomainError("empty simplex")
        if len(set(s)) != len(s):
            raise DomainError(f"simplex {simplex} repeats a vertex")
        for k in range(1, len(s) + 1):
            for face in combinations(s, k):
                self._by_dim.setdefault(k - 1, set()).add(face)

    @classmethod
    def from_maximal(cls, simplices):
        return cls(simplices)

    @property
    def dimension(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    @property
    def vertices(self) -> List[int]:
        return [s[0] for s in self.simplices(0)]

    def simplices(self, k: int) -> List[Simplex]:
        return sorted(self._by_dim.get(k, ()))

    def count(self, k: int) -> int:
        return len(self._by_dim.get(k, ()))

    def __contains__(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        return s in self._by_dim.get(len(s) - 1, ())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(v) for k, v in self._by_dim.items())

    def __repr__(self):
        counts = ", ".join(f"{self.count(k)}" for k in range(self.dimension + 1))
        return f"SimplicialComplex(counts=[{counts}])"


def boundary_matrix(K: SimplicialComplex, k: int) -> np.ndarray:
    """Signed incidence matrix from k-simplices (columns) to (k-1)-simplices (rows).

    The face obtained by dropping vertex ``i`` of a sorted simplex carries
    the sign ``(-1)**i``.
    """
    if k < 1 or k > K.dimension:
        raise DomainError(f"boundary operator B_{k} undefined for complex of dimension {K.dimension}")
    rows = K.simplices(k - 1)
    cols = K.simplices(k)
    index = {s: i for i, s in enumerate(rows)}
    B = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, s in enumerate(cols):
        for i in range(len(s)):
            B[index[s[:i] + s[i + 1 :]], j] = (-1) ** i
    return B


def _boundary_or_zero(K: SimplicialComplex, k: int) -> np.ndarray:
    if 1 <= k <= K.dimension:
        return boundary_matrix(K, k)
    return np.zeros((K.count(k - 1), K.count(k)), dtype=np.int64)


def hodge_laplacian(K: SimplicialComplex, k: int) -> np.ndarray:
    """L_k = B_{k+1} B_{k+1}^T + B_k^T B_k, missing operators taken as zero maps."""
    if k < 0:
        raise DomainError(f"negative dimension {k}")
    up = _boundary_or_zero(K, k + 1)
    down = _boundary_or_zero(K, k)
    return up @ up.T + down.T @ down


def exact_rank(M: np.ndarray) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination on Python ints."""
    rows = [[int(v) for v in r] for r in np.asarray(M)]
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for c in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for r in range(rank + 1, n_rows):
            f = rows[r][c]
            row_r = rows[r]
            row_p = rows[rank]
            for cc in range(c, n_cols):
                # Bareiss division is exact
                row_r[cc] = (p * row_r[cc] - f * row_p[cc]) // prev
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def numerical_rank(M: np.ndarray, tol: float = RANK_TOL) -> int:
    if M.size == 0:
        return 0
    sv = np.linalg.svd(np.asarray(M, dtype=np.float64), compute_uv=False)
    return int(np.sum(sv > tol))


def betti(K: SimplicialComplex, k: int) -> int:
    """Dimension of the kernel of the k-th Hodge Laplacian."""
    n = K.count(k)
    if n == 0:
        return 0
    L = hodge_laplacian(K, k)
    if n <= EXACT_RANK_LIMIT:
        return n - exact_rank(L)
    return n - numerical_rank(L)


def betti_numbers(K: SimplicialComplex, max_dim: int = 2) -> List[int]:
    return [betti(K, k) for k in range(max_dim + 1)]


def clique_complex(dist: np.ndarray, radius: float, max_dim: int = 2) -> SimplicialComplex:
    """Vietoris-Rips complex at a fixed radius by brute-force clique enumeration."""
    n = dist.shape[0]
    K = SimplicialComplex((v,) for v in range(n))
    for k in range(2, max_dim + 2):
        for s in combinations(range(n), k):
            if all(dist[a, b] <= radius for a, b in combinations(s, 2)):
                K.add(s)
    return K
