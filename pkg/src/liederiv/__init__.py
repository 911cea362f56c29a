"""Exact computation of the Lie derivations of R_n(K, J) = NT_n(K) + M_n(J)."""

from .algebra import (
    FpAlgebra,
    IdealSubspace,
    annihilator,
    center,
    ideal_closure,
    ideal_square,
    make_algebra,
)
from .config import InstanceConfig, load_config, parse_config
from .decompose import Decomposition, assert_stage_pattern, decompose
from .errors import (
    LieDerivError,
    EvenCharacteristic,
    NotAssociative,
    NoIdentity,
    SizeTooSmall,
    IdealMismatch,
    RingMismatch,
    MembershipError,
    FormulaMismatch,
    DimensionMismatch,
    InvalidParams,
    WrongSize,
    ShapeViolation,
    HypothesisViolation,
    InternalExtractionError,
    StagePatternViolation,
    CapacityExceeded,
    TheoremFailure,
    ConfigError,
)
from .families import (
    DERIVATION_KINDS,
    EXTRA_KINDS,
    KINDS,
    AdditiveEndo,
    FamilyParams,
    admissible_kinds,
    build_family,
    family_parameter_space,
    is_derivation,
    is_lie_derivation,
    shape_check,
    shape_violations,
    validate_family_params,
)
from .linalg import Subspace, kernel, rank, rref, solve, subspace_equal
from .matrix_ring import RMatrix, RRing, ann_R, bracket, center_R, make_matrix_ring
from .solver import (
    TheoremReport,
    families_span,
    family_ranks,
    lie_derivation_module,
    main_theorem_check,
)

__version__ = "0.1.0"

__all__ = [
    "FpAlgebra",
    "IdealSubspace",
    "annihilator",
    "center",
    "ideal_closure",
    "ideal_square",
    "make_algebra",
    "InstanceConfig",
    "load_config",
    "parse_config",
    "Decomposition",
    "assert_stage_pattern",
    "decompose",
    "DERIVATION_KINDS",
    "EXTRA_KINDS",
    "KINDS",
    "AdditiveEndo",
    "FamilyParams",
    "admissible_kinds",
    "build_family",
    "family_parameter_space",
    "is_derivation",
    "is_lie_derivation",
    "shape_check",
    "shape_violations",
    "validate_family_params",
    "Subspace",
    "kernel",
    "rank",
    "rref",
    "solve",
    "subspace_equal",
    "RMatrix",
    "RRing",
    "ann_R",
    "bracket",
    "center_R",
    "make_matrix_ring",
    "TheoremReport",
    "families_span",
    "family_ranks",
    "lie_derivation_module",
    "main_theorem_check",
    "LieDerivError",
    "EvenCharacteristic",
    "NotAssociative",
    "NoIdentity",
    "SizeTooSmall",
    "IdealMismatch",
    "RingMismatch",
    "MembershipError",
    "FormulaMismatch",
    "DimensionMismatch",
    "InvalidParams",
    "WrongSize",
    "ShapeViolation",
    "HypothesisViolation",
    "InternalExtractionError",
    "StagePatternViolation",
    "CapacityExceeded",
    "TheoremFailure",
    "ConfigError",
]
