"""Canonical duals, reconstruction and atomic resolutions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import NotAFrameError, ShapeMismatchError
from .gframe import DEFAULT_TOL, SoftGFrame, analysis, frame_bounds, frame_operator, synthesis
from .operators import SoftOperator, apply, compose, invert_hpd
from .soft_core import SoftVector, check_same_params

__all__ = [
    "DualPair",
    "canonical_dual",
    "reconstruct",
    "atomic_resolution",
    "dual_pair_check",
    "random_probe",
]


@dataclass(frozen=True)
class DualPair:
    frame: SoftGFrame
    dual: SoftGFrame
    s_inverse: SoftOperator


def canonical_dual(F: SoftGFrame, tol: float = DEFAULT_TOL) -> DualPair:
    """Build ``{Λ_j S^-1}`` from an explicit dense inverse of the frame operator."""
    cert = frame_bounds(F, tol)
    if not cert.is_frame:
        raise NotAFrameError(
            f"not a frame at parameters {cert.failing_labels(tol)}; no canonical dual"
        )
    s_inv = invert_hpd(frame_operator(F))
    dual = SoftGFrame([compose(b, s_inv) for b in F.blocks])
    return DualPair(frame=F, dual=dual, s_inverse=s_inv)


def _resynthesize(outer: SoftGFrame, inner: SoftGFrame, f: SoftVector) -> SoftVector:
    """``Σ_j outer_j* inner_j f``."""
    if outer.block_dims != inner.block_dims or outer.ambient_dim != inner.ambient_dim:
        raise ShapeMismatchError(
            f"frames do not pair: {outer.block_dims} vs {inner.block_dims}"
        )
    return synthesis(outer, analysis(inner, f))


def reconstruct(
    pair: DualPair,
    f: SoftVector,
    order: Literal["dual_inside", "dual_outside"] = "dual_inside",
) -> SoftVector:
    """Expand ``f`` through the dual pair.

    ``dual_inside`` evaluates ``Σ Λ_j* Λ_j S^-1 f`` and ``dual_outside``
    evaluates ``Σ S^-1 Λ_j* Λ_j f``; both return ``f`` up to rounding.
    """
    if order == "dual_inside":
        return _resynthesize(pair.frame, pair.dual, f)
    if order == "dual_outside":
        return _resynthesize(pair.dual, pair.frame, f)
    raise ValueError(f"unknown order {order!r}")


def atomic_resolution(
    pair: DualPair,
    T: SoftOperator,
    f: SoftVector,
    side: Literal["dual_first", "frame_first"] = "dual_first",
) -> SoftVector:
    """Resolve ``T f`` through the dual pair.

    ``dual_first`` is ``Σ Λ_j* Λ~_j T f``; ``frame_first`` is ``Σ Λ~_j* Λ_j T f``.
    """
    check_same_params(pair.frame, T)
    n = pair.frame.ambient_dim
    if T.shape != (n, n):
        raise ShapeMismatchError(f"operator must be {n}x{n}, got {T.shape}")
    tf = apply(T, f)
    if side == "dual_first":
        return _resynthesize(pair.frame, pair.dual, tf)
    if side == "frame_first":
        return _resynthesize(pair.dual, pair.frame, tf)
    raise ValueError(f"unknown side {side!r}")


def random_probe(params, dim: int, rng: np.random.Generator) -> SoftVector:
    """A unit-variance complex Gaussian soft vector."""
    shape = (len(params), dim)
    return SoftVector(params, (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2))


def dual_pair_check(
    F: SoftGFrame,
    G: SoftGFrame,
    trials: int = 200,
    tol: float = 1e-8,
    seed: int = 0,
) -> bool:
    """Test both reconstruction identities on ``trials`` random vectors.

    Passes iff ``||Σ Λ_j* Γ_j f - f|| <= tol ||f||`` and the same for
    ``Σ Γ_j* Λ_j f`` at every parameter and every probe.
    """
    check_same_params(F, G)
    if F.block_dims != G.block_dims or F.ambient_dim != G.ambient_dim:
        raise ShapeMismatchError(f"frames do not pair: {F.block_dims} vs {G.block_dims}")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        f = random_probe(F.params, F.ambient_dim, rng)
        scale = np.linalg.norm(f.values, axis=1)
        for outer, inner in ((F, G), (G, F)):
            err = np.linalg.norm((_resynthesize(outer, inner, f) - f).values, axis=1)
            if np.any(err > tol * scale):
                return False
    return True
