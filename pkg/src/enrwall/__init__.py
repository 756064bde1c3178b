"""Exact-arithmetic wall-crossing toolkit for Bridgeland moduli spaces on
Enriques surfaces."""

from .lattice_core import (
    LatticeError,
    MukaiVector,
    ParityClass,
    QMukai,
    SurfaceModel,
    default_surface,
    det_parities,
    ell,
    is_primitive,
    mukai_pair,
    mukai_square,
    u_surface,
)
from .pell import PellSolution, compose, mixed_sequence, pell_fundamental, root_sequence
from .hyperbolic_cones import (
    ConeOrientation,
    LatticeCase,
    RankTwoLattice,
    build_sublattice,
    canonical_orientation,
    effective_cone,
    enumerate_roots,
    find_isotropic,
    is_effective,
    lattice_case,
    orientation_from_generators,
)
from .weyl import (
    ChamberIndex,
    ReflectionWord,
    chamber_index,
    ilgu_reflection,
    minimalize,
    reflect_in_d,
    reflect_root,
    theta_transport,
)
from .hn_calculus import (
    Decomposition,
    codim,
    enumerate_decompositions,
    filtration_dim,
    min_codim,
    stack_dim,
)
from .wall_classifier import WallReport, classify, cross_validate
from .stab_slice import SlicePoint, WallLocus, central_charge, orientation_from_point, wall_locus, xi

__all__ = [name for name in dir() if not name.startswith("_")]
