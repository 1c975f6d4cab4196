"""Soft g-frames over finite parameter sets and finite-dimensional spaces."""

from .composition import (
    LocalFrameFamily,
    compose_frame,
    composed_dual_pair,
    tight_local_canonical_dual,
)
from .dual import DualPair, atomic_resolution, canonical_dual, dual_pair_check, reconstruct
from .errors import (
    ContractViolation,
    FrameSpecError,
    NotAFrameError,
    NotHermitianError,
    NotPositiveDefiniteError,
    ParameterMismatchError,
    PreconditionError,
    ShapeMismatchError,
    SoftGFrameError,
    VerificationError,
)
from .gframe import (
    FrameBoundsCertificate,
    SoftGFrame,
    analysis,
    frame_bounds,
    frame_energy,
    frame_operator,
    induced_from_vectors,
    is_exact,
    synthesis,
)
from .operators import (
    SoftOperator,
    SpectralBoundsReport,
    adjoint,
    apply,
    compose,
    hermitian_eig_extremes,
    invert_hpd,
    operator_norm_upper,
    solve_hpd,
)
from .soft_core import (
    DirectSumSoftVector,
    ParameterSet,
    SoftComplex,
    SoftReal,
    SoftVector,
    direct_sum_inner_product,
    soft_ge,
    soft_gt,
    soft_inner_product,
    soft_le,
    soft_lt,
    soft_norm,
)
from .verify import PropertyReport, RandomModel, oracle_frame_operator, run_suite

__version__ = "0.1.0"
