"""Birkhoff-James and directional orthogonality in finite-dimensional complex spaces."""

__version__ = "0.1.0"

from .arcs import ArcSet, HalfCircle, arc_membership, direction_set, scalar_multiple_directions
from .errors import DegenerateTranslation, IsometryError, StructuralViolation, UnsupportedSpace
from .functionals import (NormingSet, OrthogonalityPair, is_smooth_point, norming_set,
                          orthogonality_pairs_sample, witness)
from .numrange import (BhatiaSemrlResult, NumericalRangeSample, WitnessSolution,
                       bhatia_semrl_check, classical_numerical_range, contains_zero,
                       convexity_witness, directional_operator_check, isometry_constant,
                       restricted_numerical_range, zero_witness)
from .ortho import (Direction, Part, check_bj_orthogonal, check_dir_orthogonal,
                    dir_orthogonal_hilbert, is_bj_orthogonal, is_dir_orthogonal,
                    is_dir_orthogonal_many, min_norm_over_line, min_norm_over_lines,
                    min_norm_over_plane, part_sign)
from .spaces import (Functional, LinearOperator, NormAttainmentSet, NormSpec, dual_norm,
                     inner, norm, norm_attainment_set, norming_functional, operator_norm)

__all__ = [
    "__version__", "ArcSet", "HalfCircle", "arc_membership", "direction_set",
    "scalar_multiple_directions", "DegenerateTranslation", "IsometryError",
    "StructuralViolation", "UnsupportedSpace", "NormingSet", "OrthogonalityPair",
    "is_smooth_point", "norming_set", "orthogonality_pairs_sample", "witness",
    "BhatiaSemrlResult", "NumericalRangeSample", "WitnessSolution",
    "bhatia_semrl_check", "classical_numerical_range", "contains_zero",
    "convexity_witness", "directional_operator_check", "isometry_constant",
    "restricted_numerical_range", "zero_witness", "Direction", "Part",
    "check_bj_orthogonal", "check_dir_orthogonal", "dir_orthogonal_hilbert",
    "is_bj_orthogonal", "is_dir_orthogonal", "is_dir_orthogonal_many",
    "min_norm_over_line", "min_norm_over_lines", "min_norm_over_plane", "part_sign",
    "Functional", "LinearOperator", "NormAttainmentSet", "NormSpec", "dual_norm",
    "inner", "norm", "norm_attainment_set", "norming_functional", "operator_norm",
]
