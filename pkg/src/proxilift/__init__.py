"""Exact computational analysis of semigroup actions on finite metric spaces
and of their lifts to probability-measure simplices.

The library decides proximality and strong proximality with replayable
witnesses, implements measure pushforward, convolution, and the barycenter
map in exact rational arithmetic, and packages the equivalences between base
and lifted dynamics as executable harnesses.
"""

from .actions import (
    ActionSystem,
    Kind,
    MonoidClosure,
    SemigroupTable,
    StochasticMatrix,
    Transformation,
    Word,
    closure,
    convolution,
    dobrushin,
    pushforward,
)
from .affine import (
    AffineVertexMap,
    CorollaryReport,
    SimplexModel,
    apply_map,
    corollary_harness,
    embed,
    extract,
    f_equivariance_check,
    vertex_system,
)
from .errors import (
    DimensionMismatch,
    EnumerationLimit,
    NotInHull,
    ProxiliftError,
    SpecError,
    UnsupportedKind,
    ValidationError,
)
from .lift import (
    CheckReport,
    HarnessMode,
    HarnessReport,
    HarnessRow,
    LiftedSystem,
    MetaMeasure,
    barycenter,
    equivalence_harness,
    invariant_metas,
    lift_system,
    meta_is_vertex_point_mass,
    psi_checks,
    psi_homomorphism_check,
    push_meta,
)
from .proximality import (
    Budget,
    Status,
    Verdict,
    is_proximal,
    measure_pair_proximal,
    proximal_pair,
    reset_word,
    strongly_proximal,
)
from .spaces import (
    FiniteSpace,
    GridSimplex,
    Measure,
    grid_atoms,
    random_measure,
    tight_at,
    tightness_profile,
    tv_distance,
    w1_distance,
)

__version__ = "0.1.0"

__all__ = [
    "ActionSystem",
    "AffineVertexMap",
    "Budget",
    "CheckReport",
    "CorollaryReport",
    "DimensionMismatch",
    "EnumerationLimit",
    "FiniteSpace",
    "GridSimplex",
    "HarnessMode",
    "HarnessReport",
    "HarnessRow",
    "Kind",
    "LiftedSystem",
    "Measure",
    "MetaMeasure",
    "MonoidClosure",
    "NotInHull",
    "ProxiliftError",
    "SemigroupTable",
    "SimplexModel",
    "SpecError",
    "Status",
    "StochasticMatrix",
    "Transformation",
    "UnsupportedKind",
    "ValidationError",
    "Verdict",
    "Word",
    "apply_map",
    "barycenter",
    "closure",
    "convolution",
    "corollary_harness",
    "dobrushin",
    "embed",
    "equivalence_harness",
    "extract",
    "f_equivariance_check",
    "grid_atoms",
    "invariant_metas",
    "is_proximal",
    "lift_system",
    "measure_pair_proximal",
    "meta_is_vertex_point_mass",
    "proximal_pair",
    "psi_checks",
    "psi_homomorphism_check",
    "push_meta",
    "pushforward",
    "random_measure",
    "reset_word",
    "strongly_proximal",
    "tight_at",
    "tightness_profile",
    "tv_distance",
    "vertex_system",
    "w1_distance",
]
