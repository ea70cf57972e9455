"""Simplicial homology: exact Betti-number oracle and Rips persistence engine."""
from .complex import (
    SimplicialComplex,
    betti,
    betti_numbers,
    boundary_matrix,
    clique_complex,
    exact_rank,
    hodge_laplacian,
)
from .diagram import PersistenceDiagram, betti_curve
from .filtration import Filtration, persistence, reduce_boundary, rips_filtration
from .rips import BACKENDS, default_backend, rips_persistence

__all__ = [
    "BACKENDS",
    "Filtration",
    "PersistenceDiagram",
    "SimplicialComplex",
    "betti",
    "betti_curve",
    "betti_numbers",
    "boundary_matrix",
    "clique_complex",
    "default_backend",
    "exact_rank",
    "hodge_laplacian",
    "persistence",
    "reduce_boundary",
    "rips_filtration",
    "rips_persistence",
]
