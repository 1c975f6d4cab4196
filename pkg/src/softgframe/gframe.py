"""Soft g-frames: analysis, synthesis, frame operator and optimal bounds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NotAFrameError, ShapeMismatchError
from .operators import SoftOperator, hermitian_eig_extremes, scale
from .soft_core import (
    DirectSumSoftVector,
    ParameterSet,
    SoftReal,
    SoftVector,
    check_same_params,
)

__all__ = [
    "DEFAULT_TOL",
    "SoftGFrame",
    "FrameBoundsCertificate",
    "analysis",
    "synthesis",
    "synthesis_operator",
    "frame_operator",
    "frame_bounds",
    "is_exact",
    "induced_from_vectors",
    "frame_vectors",
    "frame_energy",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SoftGFrame:
    """A finite family of soft operators ``Λ_j : U -> V_j`` sharing one parameter set.

    ``blocks[j]`` maps the ambient space (dimension ``ambient_dim``) into a
    block space of dimension ``blocks[j].rows``.
    """

    params: ParameterSet
    ambient_dim: int
    blocks: tuple[SoftOperator, ...]

    def __init__(self, blocks: Sequence[SoftOperator]):
        blocks = tuple(blocks)
        if not blocks:
            raise ShapeMismatchError("a g-frame needs at least one block")
        params = check_same_params(*blocks)
        n = blocks[0].cols
        for j, b in enumerate(blocks):
            if b.cols != n:
                raise ShapeMismatchError(
                    f"block {j} acts on dimension {b.cols}, expected {n}"
                )
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "blocks", blocks)

    @property
    def block_dims(self) -> tuple[int, ...]:
        return tuple(b.rows for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def stacked(self) -> np.ndarray:
        """All blocks stacked vertically, shape ``(|A|, sum d_j, n)``."""
        return np.concatenate([b.values for b in self.blocks], axis=1)

    def scaled(self, alpha) -> "SoftGFrame":
        return SoftGFrame([scale(b, alpha) for b in self.blocks])

    def without(self, j: int) -> "SoftGFrame":
        return SoftGFrame(self.blocks[:j] + self.blocks[j + 1:])


@dataclass(frozen=True)
class FrameBoundsCertificate:
    lower: SoftReal
    upper: SoftReal
    is_frame: bool
    is_tight: bool

    @property
    def condition(self) -> SoftReal:
        with np.errstate(divide="ignore", invalid="ignore"):
            c = np.where(self.lower.values > 0, self.upper.values / self.lower.values, np.inf)
        return SoftReal(self.lower.params, c)

    def failing_labels(self, tol: float = DEFAULT_TOL) -> list[str]:
        lo, hi = self.lower.values, self.upper.values
        return [label for label, ok in zip(self.lower.params, lo > tol * hi) if not ok]


def _check_vector(F: SoftGFrame, f: SoftVector):
    check_same_params(F, f)
    if f.dim != F.ambient_dim:
        raise ShapeMismatchError(f"vector has dim {f.dim}, frame acts on {F.ambient_dim}")


def analysis(F: SoftGFrame, f: SoftVector) -> DirectSumSoftVector:
    """``f -> {Λ_j f}``, the adjoint of the synthesis operator."""
    _check_vector(F, f)
    return DirectSumSoftVector(
        F.params, [np.einsum("aij,aj->ai", b.values, f.values) for b in F.blocks]
    )


def synthesis(F: SoftGFrame, g: DirectSumSoftVector) -> SoftVector:
    """``{g_j} -> Σ_j Λ_j* g_j`` (the pre g-frame operator), summed in block order."""
    check_same_params(F, g)
    if g.block_dims != F.block_dims:
        raise ShapeMismatchError(f"block dims {g.block_dims} do not match frame {F.block_dims}")
    total = np.zeros((len(F.params), F.ambient_dim), dtype=complex)
    for b, gj in zip(F.blocks, g.blocks):
        total = total + np.einsum("aji,aj->ai", b.values.conj(), gj)
    return SoftVector(F.params, total)


def synthesis_operator(F: SoftGFrame) -> SoftOperator:
    """The synthesis map as one ``n x sum(d_j)`` matrix per parameter."""
    return SoftOperator(F.params, np.conj(np.swapaxes(F.stacked(), 1, 2)))


def _gram_sum(blocks) -> np.ndarray:
    total = None
    for b in blocks:
        term = np.conj(np.swapaxes(b.values, 1, 2)) @ b.values
        total = term if total is None else total + term
    return total


def frame_operator(F: SoftGFrame) -> SoftOperator:
    """``S = Σ_j Λ_j* Λ_j`` per parameter."""
    return SoftOperator(F.params, _gram_sum(F.blocks))


def frame_bounds(F: SoftGFrame, tol: float = DEFAULT_TOL) -> FrameBoundsCertificate:
    """Optimal soft bounds: the per-parameter extreme eigenvalues of ``S``.

    A frame requires ``lower > tol * upper`` at every parameter.  Tightness
    is judged at the same relative tolerance.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    report = hermitian_eig_extremes(frame_operator(F))
    hi = report.max_eig.values
    lo = np.clip(report.min_eig.values, 0.0, None)
    is_frame = bool(np.all(lo > tol * hi))
    is_tight = is_frame and bool(np.all(np.abs(hi - lo) <= tol * hi))
    return FrameBoundsCertificate(
        lower=SoftReal(F.params, lo),
        upper=SoftReal(F.params, hi),
        is_frame=is_frame,
        is_tight=is_tight,
    )


def is_exact(F: SoftGFrame, tol: float = DEFAULT_TOL) -> list[bool]:
    """For each block, whether removing it destroys the frame property."""
    if not frame_bounds(F, tol).is_frame:
        raise NotAFrameError("exactness is only defined for frames")
    flags = []
    for j in range(len(F)):
        rest = F.blocks[:j] + F.blocks[j + 1:]
        if not rest:
            flags.append(True)
            continue
        flags.append(not frame_bounds(SoftGFrame(rest), tol).is_frame)
    return flags


def induced_from_vectors(vectors: Sequence[SoftVector]) -> SoftGFrame:
    """The g-frame of functionals ``f -> <f, f_j>`` induced by a vector family."""
    vectors = list(vectors)
    if not vectors:
        raise ShapeMismatchError("need at least one vector")
    check_same_params(*vectors)
    dims = {v.dim for v in vectors}
    if len(dims) != 1:
        raise ShapeMismatchError(f"vectors have mixed dimensions {sorted(dims)}")
    return SoftGFrame([SoftOperator(v.params, v.values.conj()[:, None, :]) for v in vectors])


def frame_vectors(F: SoftGFrame) -> list[SoftVector]:
    """Inverse of :func:`induced_from_vectors` for frames of rank-one functionals."""
    if any(d != 1 for d in F.block_dims):
        raise ShapeMismatchError("only frames with one-dimensional blocks carry vectors")
    return [SoftVector(F.params, b.values[:, 0, :].conj()) for b in F.blocks]


def frame_energy(F: SoftGFrame, f: SoftVector) -> SoftReal:
    """``Σ_j ||Λ_j f||^2`` per parameter."""
    coeffs = analysis(F, f)
    total = np.zeros(len(F.params))
    for gj in coeffs.blocks:
        total = total + np.sum(np.abs(gj) ** 2, axis=1)
    return SoftReal(F.params, total)
