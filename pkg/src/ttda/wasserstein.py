"""1-Wasserstein distance between persistence diagrams.

Ground metric is L-infinity; a point (b, d) left unmatched is paired with its
orthogonal projection onto the diagonal at cost (d - b) / 2. The optimal
partial matching is found as a square assignment problem in which each
diagram is padded with the other's diagonal projections.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DomainError
from .homology.diagram import PersistenceDiagram

__all__ = ["Matching", "augmented_cost_matrix", "diagram_distance", "optimal_matching"]

DiagramLike = Union[PersistenceDiagram, np.ndarray, list, tuple]


@dataclass(frozen=True)
class Matching:
    """Optimal matching. ``pairs`` holds (i, j) with ``None`` standing for the diagonal."""

    pairs: List[Tuple[Optional[int], Optional[int]]]
    total_cost: float
    costs: Tuple[float, ...] = ()


def _as_points(d: DiagramLike, dim: Optional[int]) -> np.ndarray:
    if isinstance(d, PersistenceDiagram):
        if dim is None:
            dims = np.unique(d.features[:, 0])
            if dims.size > 1:
                raise DomainError(
                    f"diagram mixes homology dimensions {dims.tolist()}; pass dim= to select one"
                )
            pts = d.features[:, 1:]
        else:
            pts = d.pairs(dim)
    else:
        pts = np.asarray(d, dtype=np.float64).reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        raise DomainError(
            "diagram contains infinite features; drop essential classes before matching"
        )
    return pts


def augmented_cost_matrix(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """(n+m) x (n+m) costs: real points first, then diagonal slots.

    Row ``i < n`` may go to column ``j < m`` (point of q) or to its own
    diagonal slot ``m + i``; diagonal rows ``n + j`` absorb point ``j`` of q
    or any of p's diagonal slots for free.
    """
    n, m = len(p), len(q)
    C = np.full((n + m, n + m), np.inf)
    if n and m:
        C[:n, :m] = np.max(np.abs(p[:, None, :] - q[None, :, :]), axis=2)
    half_p = (p[:, 1] - p[:, 0]) / 2 if n else np.zeros(0)
    half_q = (q[:, 1] - q[:, 0]) / 2 if m else np.zeros(0)
    C[np.arange(n), m + np.arange(n)] = half_p
    C[n + np.arange(m), np.arange(m)] = half_q
    C[n:, m:] = 0.0
    return C


def optimal_matching(D1: DiagramLike, D2: DiagramLike, dim: Optional[int] = None) -> Matching:
    p, q = _as_points(D1, dim), _as_points(D2, dim)
    n, m = len(p), len(q)
    if n + m == 0:
        return Matching([], 0.0)
    C = augmented_cost_matrix(p, q)
    rows, cols = linear_sum_assignment(C)
    pairs, costs = [], []
    for r, c in zip(rows, cols):
        if r < n and c < m:
            pairs.append((int(r), int(c)))
        elif r < n:
            pairs.append((int(r), None))
        elif c < m:
            pairs.append((None, int(c)))
        else:
            continue
        costs.append(float(C[r, c]))
    key = lambda pc: (pc[0][0] is None, pc[0][0] or 0, pc[0][1] is None, pc[0][1] or 0)
    ordered = sorted(zip(pairs, costs), key=key)
    return Matching(
        [pc[0] for pc in ordered],
        math.fsum(costs),
        tuple(pc[1] for pc in ordered),
    )


def diagram_distance(D1: DiagramLike, D2: DiagramLike, dim: Optional[int] = None) -> float:
    return optimal_matching(D1, D2, dim).total_cost
