"""Vietoris-Rips persistent homology in dimensions 0 and 1 for point clouds.

The triangle list is never materialized: dimension 0 comes from union-find on
the sorted edges and dimension 1 from a cohomology reduction whose columns
are enumerated on demand. The inner loops live in the compiled ``_rips_ext``
module; ``_rips_py`` is a drop-in fallback selected when the extension is
missing or when ``TTDA_BACKEND=python`` is set.
"""
from __future__ import annotations

import os
from typing import Optional, Union

import numpy as np

from ..embed import DistanceMatrix, PointCloud, distance_matrix, enclosing_radius
from ..errors import ConfigError, DomainError
from . import _rips_py
from .diagram import PersistenceDiagram

try:
    from . import _rips_ext
except ImportError:  # extension not built
    _rips_ext = None

BACKENDS = {"python": _rips_py}
if _rips_ext is not None:
    BACKENDS["compiled"] = _rips_ext


def default_backend() -> str:
    forced = os.environ.get("TTDA_BACKEND", "").strip().lower()
    if forced:
        if forced not in ("python", "compiled"):
            raise ConfigError(f"TTDA_BACKEND must be 'python' or 'compiled', got {forced!r}")
        if forced not in BACKENDS:
            raise ConfigError("TTDA_BACKEND=compiled but the extension is not built")
        return forced
    return "compiled" if "compiled" in BACKENDS else "python"


def sorted_edges(D: np.ndarray, threshold: float):
    """Edges with length <= threshold in filtration order.

    Ties in length put the larger combinatorial index C(j, 2) + i first.
    """
    n = D.shape[0]
    iu, ju = np.triu_indices(n, 1)
    vals = D[iu, ju]
    keep = vals <= threshold
    iu, ju, vals = iu[keep], ju[keep], vals[keep]
    index = ju.astype(np.int64) * (ju - 1) // 2 + iu
    order = np.lexsort((-index, vals))
    return (
        np.ascontiguousarray(iu[order], dtype=np.int32),
        np.ascontiguousarray(ju[order], dtype=np.int32),
        np.ascontiguousarray(vals[order], dtype=np.float64),
    )


def rips_persistence(
    data: Union[PointCloud, DistanceMatrix, np.ndarray],
    threshold: Optional[float] = None,
    backend: Optional[str] = None,
    keep_zero: bool = False,
) -> PersistenceDiagram:
    """Dimension 0 and 1 Rips diagram of a point cloud or distance matrix.

    ``threshold`` defaults to the enclosing radius, past which the complex is
    a cone and no 1-cycle survives. Pairs with birth == death are dropped
    unless ``keep_zero`` is set.
    """
    if isinstance(data, PointCloud):
        m = distance_matrix(data)
    elif isinstance(data, DistanceMatrix):
        m = data
    else:
        m = DistanceMatrix(np.asarray(data, dtype=np.float64))
    if m.size == 0:
        raise DomainError("persistence of an empty point cloud")
    if threshold is None:
        threshold = enclosing_radius(m)
    if threshold < 0:
        raise DomainError(f"threshold must be non-negative, got {threshold}")
    kernel = BACKENDS[backend or default_backend()]
    D = np.ascontiguousarray(m.values, dtype=np.float64)

    ei, ej, ev = sorted_edges(D, threshold)
    deaths0, merging, n_components = kernel.connected_components(m.size, ei, ej, ev)
    b1, d1 = kernel.cohomology_dim1(D, float(threshold), ei, ej, ev, merging)

    rows = [np.column_stack([np.zeros(len(deaths0)), np.zeros(len(deaths0)), deaths0])]
    rows.append(np.tile([0.0, 0.0, np.inf], (n_components, 1)))
    rows.append(np.column_stack([np.ones(len(b1)), b1, d1]))
    f = np.vstack(rows)
    if not keep_zero:
        f = f[f[:, 2] > f[:, 1]]
    return PersistenceDiagram(f)
