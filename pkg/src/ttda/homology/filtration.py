"""Explicit Vietoris-Rips filtrations and boundary-matrix reduction over Z/2.

Everything here materializes every simplex, so it only scales to a few dozen
points. Large clouds go through :func:`ttda.homology.rips.rips_persistence`,
which never builds the triangle list.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..embed import DistanceMatrix, enclosing_radius
from ..errors import DomainError, IntegrityError
from .diagram import PersistenceDiagram

Simplex = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Filtration:
    simplices: List[Simplex]
    values: np.ndarray

    def __len__(self):
        return len(self.simplices)

    def count(self, dim: int) -> int:
        return sum(1 for s in self.simplices if len(s) == dim + 1)

    def values_of(self, dim: int) -> np.ndarray:
        return np.array([v for s, v in zip(self.simplices, self.values) if len(s) == dim + 1])

    @classmethod
    def from_simplices(cls, items: Sequence[Tuple[Sequence[int], float]], sort: bool = True):
        pairs = [(tuple(sorted(int(v) for v in s)), float(val)) for s, val in items]
        if sort:
            pairs.sort(key=lambda p: (p[1], len(p[0]), p[0]))
        return cls([p[0] for p in pairs], np.array([p[1] for p in pairs], dtype=np.float64))


def rips_filtration(
    m: DistanceMatrix, max_dim: int = 2, threshold: Optional[float] = None
) -> Filtration:
    if m.size == 0:
        raise DomainError("Rips filtration of an empty distance matrix")
    if max_dim not in (0, 1, 2):
        raise DomainError(f"max_dim must be 0, 1 or 2, got {max_dim}")
    if threshold is None:
        threshold = enclosing_radius(m)
    if threshold < 0:
        raise DomainError(f"threshold must be non-negative, got {threshold}")
    D = m.values
    n = m.size
    items: List[Tuple[Simplex, float]] = [((v,), 0.0) for v in range(n)]
    if max_dim >= 1:
        items += [((i, j), D[i, j]) for i, j in combinations(range(n), 2) if D[i, j] <= threshold]
    if max_dim >= 2:
        for i, j, k in combinations(range(n), 3):
            v = max(D[i, j], D[i, k], D[j, k])
            if v <= threshold:
                items.append(((i, j, k), v))
    return Filtration.from_simplices(items)


def _boundary_columns(f: Filtration) -> List[List[int]]:
    index: Dict[Simplex, int] = {}
    cols: List[List[int]] = []
    for j, s in enumerate(f.simplices):
        if s in index:
            raise IntegrityError(f"duplicate simplex {s}")
        col = []
        if len(s) > 1:
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                fi = index.get(face)
                if fi is None:
                    raise IntegrityError(f"face {face} of {s} missing or appears after it")
                if f.values[fi] > f.values[j]:
                    raise IntegrityError(
                        f"face {face} enters at {f.values[fi]} after coface {s} at {f.values[j]}"
                    )
                col.append(fi)
        index[s] = j
        cols.append(col)
    return cols


def reduce_boundary(f: Filtration) -> Tuple[List[Tuple[int, int]], List[int]]:
    """Column reduction with clearing, highest dimension first.

    Returns the (birth index, death index) pairs and the indices of
    unpaired (essential) simplices.
    """
    cols = [set(c) for c in _boundary_columns(f)]
    dims = [len(s) - 1 for s in f.simplices]
    top = max(dims)
    pivot_owner: Dict[int, int] = {}
    cleared = set()
    pairs = []
    for dim in range(top, 0, -1):
        for j in (j for j in range(len(cols)) if dims[j] == dim):
            if j in cleared:
                cols[j] = set()
                continue
            col = cols[j]
            while col:
                low = max(col)
                other = pivot_owner.get(low)
                if other is None:
                    break
                col ^= cols[other]
            if col:
                low = max(col)
                pivot_owner[low] = j
                cleared.add(low)
                pairs.append((low, j))
    paired = {i for p in pairs for i in p}
    essential = [j for j in range(len(cols)) if j not in paired and not cols[j]]
    return pairs, essential


def persistence(f: Filtration, max_dim: int = 1) -> PersistenceDiagram:
    """Diagram of dimensions ``0..max_dim``; zero-persistence pairs are dropped."""
    pairs, essential = reduce_boundary(f)
    rows = []
    for b, d in pairs:
        dim = len(f.simplices[b]) - 1
        if dim <= max_dim and f.values[d] > f.values[b]:
            rows.append((dim, f.values[b], f.values[d]))
    for b in essential:
        dim = len(f.simplices[b]) - 1
        if dim <= max_dim:
            rows.append((dim, f.values[b], np.inf))
    return PersistenceDiagram(np.array(rows, dtype=np.float64).reshape(-1, 3))
