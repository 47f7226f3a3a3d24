"""BuZZ: Hopf-bifurcation detection with zigzag persistence of Rips complexes."""

from .geometry import (
    PointCloud,
    delay_embed,
    disjoint_union,
    greedy_permutation,
    pairwise_distances,
)
from .complexes import SimplicialComplex, betti_numbers, boundary_matrix, rips_complex
from .zigzag_builder import (
    ZigzagSchedule,
    build_schedule_fixed,
    build_schedule_variable,
    validate_schedule,
)
from .zigzag_engine import (
    PersistencePoint,
    ZigzagDiagram,
    betti_consistency,
    compute_zigzag,
    standard_persistence,
)

__version__ = "0.1.0"

__all__ = [
    "PointCloud",
    "delay_embed",
    "disjoint_union",
    "greedy_permutation",
    "pairwise_distances",
    "SimplicialComplex",
    "betti_numbers",
    "boundary_matrix",
    "rips_complex",
    "ZigzagSchedule",
    "build_schedule_fixed",
    "build_schedule_variable",
    "validate_schedule",
    "PersistencePoint",
    "ZigzagDiagram",
    "betti_consistency",
    "compute_zigzag",
    "standard_persistence",
]
