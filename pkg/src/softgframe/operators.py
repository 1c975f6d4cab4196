"""Soft linear operators: one dense complex matrix per parameter."""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

from .errors import NotHermitianError, NotPositiveDefiniteError, ShapeMismatchError
from .soft_core import (
    ParameterSet,
    SoftComplex,
    SoftReal,
    SoftVector,
    _frozen,
    _SoftScalar,
    check_same_params,
)

__all__ = [
    "SoftOperator",
    "SpectralBoundsReport",
    "apply",
    "adjoint",
    "compose",
    "add",
    "scale",
    "hermitian_eig_extremes",
    "solve_hpd",
    "invert_hpd",
    "operator_norm_upper",
    "HERMITIAN_TOL",
    "PD_EPS",
]

HERMITIAN_TOL = 1e-10
PD_EPS = 1e-12


class SoftOperator:
    """A function from parameters to ``rows x cols`` complex matrices."""

    __slots__ = ("params", "values")

    def __init__(self, params: ParameterSet, values):
        values = _frozen(values, complex)
        if values.ndim != 3 or values.shape[0] != len(params) or 0 in values.shape[1:]:
            raise ShapeMismatchError(
                f"soft operator over {len(params)} parameters needs shape "
                f"({len(params)}, rows, cols), got {values.shape}"
            )
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("SoftOperator is immutable")

    @property
    def rows(self) -> int:
        return self.values.shape[1]

    @property
    def cols(self) -> int:
        return self.values.shape[2]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape[1:]

    @classmethod
    def identity(cls, params: ParameterSet, n: int) -> "SoftOperator":
        return cls(params, np.broadcast_to(np.eye(n), (len(params), n, n)))

    @classmethod
    def zeros(cls, params: ParameterSet, rows: int, cols: int) -> "SoftOperator":
        return cls(params, np.zeros((len(params), rows, cols)))

    @classmethod
    def constant(cls, params: ParameterSet, matrix) -> "SoftOperator":
        matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
        return cls(params, np.broadcast_to(matrix, (len(params),) + matrix.shape))

    @classmethod
    def from_mapping(cls, params: ParameterSet, mapping) -> "SoftOperator":
        return cls(params, np.stack([np.asarray(mapping[label], dtype=complex) for label in params]))

    def __getitem__(self, label: str) -> np.ndarray:
        return self.values[self.params.index(label)]

    def __eq__(self, other):
        if not isinstance(other, SoftOperator):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.params, self.values.shape, self.values.tobytes()))

    def __repr__(self):
        return f"SoftOperator({self.rows}x{self.cols}, params={self.params.labels})"


@dataclass(frozen=True)
class SpectralBoundsReport:
    min_eig: SoftReal
    max_eig: SoftReal
    condition: SoftReal


def apply(op: SoftOperator, x: SoftVector) -> SoftVector:
    check_same_params(op, x)
    if op.cols != x.dim:
        raise ShapeMismatchError(f"operator has {op.cols} columns, vector has dim {x.dim}")
    return SoftVector(op.params, np.einsum("aij,aj->ai", op.values, x.values))


def adjoint(op: SoftOperator) -> SoftOperator:
    return SoftOperator(op.params, np.conj(np.swapaxes(op.values, 1, 2)))


def compose(a: SoftOperator, b: SoftOperator) -> SoftOperator:
    """``a(λ) @ b(λ)`` for every parameter."""
    check_same_params(a, b)
    if a.cols != b.rows:
        raise ShapeMismatchError(f"cannot compose {a.shape} with {b.shape}")
    return SoftOperator(a.params, a.values @ b.values)


def add(a: SoftOperator, b: SoftOperator) -> SoftOperator:
    check_same_params(a, b)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"cannot add {a.shape} and {b.shape}")
    return SoftOperator(a.params, a.values + b.values)


def scale(op: SoftOperator, alpha) -> SoftOperator:
    """Multiply by a plain number or pointwise by a soft scalar."""
    if isinstance(alpha, _SoftScalar):
        check_same_params(op, alpha)
        return SoftOperator(op.params, alpha.values[:, None, None] * op.values)
    if isinstance(alpha, Number):
        return SoftOperator(op.params, alpha * op.values)
    raise TypeError(f"cannot scale a soft operator by {type(alpha).__name__}")


def _hermitian_part(op: SoftOperator) -> np.ndarray:
    if op.rows != op.cols:
        raise NotHermitianError(f"operator is not square: {op.shape}")
    v = op.values
    vh = np.conj(np.swapaxes(v, 1, 2))
    defect = np.abs(v - vh).max(axis=(1, 2))
    size = np.maximum(1.0, np.abs(v).max(axis=(1, 2)))
    bad = np.flatnonzero(defect > HERMITIAN_TOL * size)
    if bad.size:
        label = op.params.labels[bad[0]]
        raise NotHermitianError(
            f"operator is not Hermitian at parameter {label!r} "
            f"(max |op - op*| = {defect[bad[0]]:.3g})"
        )
    return (v + vh) / 2


def hermitian_eig_extremes(op: SoftOperator) -> SpectralBoundsReport:
    """Smallest and largest eigenvalue of a Hermitian soft operator."""
    eigs = np.linalg.eigvalsh(_hermitian_part(op))
    lo, hi = eigs[:, 0], eigs[:, -1]
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(lo > 0, hi / np.where(lo > 0, lo, 1.0), np.inf)
    return SpectralBoundsReport(
        min_eig=SoftReal(op.params, lo),
        max_eig=SoftReal(op.params, hi),
        condition=SoftReal(op.params, cond),
    )


def _check_hpd(op: SoftOperator) -> np.ndarray:
    h = _hermitian_part(op)
    eigs = np.linalg.eigvalsh(h)
    for i, label in enumerate(op.params):
        lo, hi = eigs[i, 0], eigs[i, -1]
        if not (hi > 0 and lo > PD_EPS * hi):
            raise NotPositiveDefiniteError(
                f"operator is not positive definite at parameter {label!r} "
                f"(eigenvalues in [{lo:.3g}, {hi:.3g}])",
                label=label,
            )
    return h


def solve_hpd(op: SoftOperator, rhs: SoftVector) -> SoftVector:
    """Solve ``op(λ) x(λ) = rhs(λ)`` for a Hermitian positive definite operator."""
    check_same_params(op, rhs)
    if op.cols != rhs.dim:
        raise ShapeMismatchError(f"operator is {op.shape}, right-hand side has dim {rhs.dim}")
    h = _check_hpd(op)
    out = np.empty_like(rhs.values)
    for i in range(len(op.params)):
        c = np.linalg.cholesky(h[i])
        y = np.linalg.solve(c, rhs.values[i])
        out[i] = np.linalg.solve(c.conj().T, y)
    return SoftVector(op.params, out)


def invert_hpd(op: SoftOperator) -> SoftOperator:
    """Dense inverse of a Hermitian positive definite operator, per parameter."""
    h = _check_hpd(op)
    n = op.rows
    out = np.empty_like(h)
    eye = np.eye(n)
    for i in range(len(op.params)):
        c = np.linalg.cholesky(h[i])
        c_inv = np.linalg.solve(c, eye)
        inv = c_inv.conj().T @ c_inv
        out[i] = (inv + inv.conj().T) / 2
    return SoftOperator(op.params, out)


def operator_norm_upper(op: SoftOperator) -> SoftReal:
    """Largest singular value per parameter."""
    return SoftReal(op.params, np.linalg.svd(op.values, compute_uv=False)[:, 0])


def as_soft_complex(op: SoftOperator) -> SoftComplex:
    """View a ``1 x 1`` soft operator as a soft complex number."""
    if op.shape != (1, 1):
        raise ShapeMismatchError(f"expected a 1x1 operator, got {op.shape}")
    return SoftComplex(op.params, op.values[:, 0, 0])
