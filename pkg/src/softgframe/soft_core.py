"""Soft scalars and soft vectors over a finite parameter set.

Every soft object stores one value per parameter label.  Values are kept as
stacked numpy arrays whose leading axis follows the order of the
:class:`ParameterSet`, so ``values[i]`` belongs to ``params.labels[i]``.
Objects are immutable: arrays are copied on construction and marked
read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ParameterMismatchError, ShapeMismatchError

__all__ = [
    "ParameterSet",
    "SoftReal",
    "SoftComplex",
    "SoftVector",
    "DirectSumSoftVector",
    "soft_le",
    "soft_lt",
    "soft_ge",
    "soft_gt",
    "soft_eq",
    "soft_inner_product",
    "soft_norm",
    "direct_sum_inner_product",
]


def _frozen(array, dtype):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ParameterSet:
    """The finite, ordered set of parameter labels."""

    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(label) for label in labels)
        if not labels:
            raise ValueError("parameter set must be non-empty")
        if len(set(labels)) != len(labels):
            raise ValueError(f"parameter labels must be distinct, got {labels}")
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self.labels

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown parameter label {label!r}") from None


def check_same_params(*objects) -> ParameterSet:
    """Return the shared parameter set or raise ``ParameterMismatchError``."""
    first = objects[0].params
    for obj in objects[1:]:
        if obj.params != first:
            raise ParameterMismatchError(
                f"parameter sets differ: {first.labels} vs {obj.params.labels}"
            )
    return first


class _SoftScalar:
    _dtype: type = float
    params: ParameterSet
    values: np.ndarray

    def __init__(self, params: ParameterSet, values):
        values = _frozen(values, self._dtype)
        if values.shape != (len(params),):
            raise ShapeMismatchError(
                f"expected {len(params)} values, got shape {values.shape}"
            )
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def constant(cls, params: ParameterSet, value):
        return cls(params, np.full(len(params), value, dtype=cls._dtype))

    @classmethod
    def from_mapping(cls, params: ParameterSet, mapping: Mapping[str, Number]):
        missing = [label for label in params if label not in mapping]
        extra = [label for label in mapping if label not in params]
        if missing or extra:
            raise ParameterMismatchError(
                f"mapping keys do not match parameters (missing {missing}, extra {extra})"
            )
        return cls(params, [mapping[label] for label in params])

    def __getitem__(self, label: str):
        return self.values[self.params.index(label)].item()

    def items(self):
        return zip(self.params.labels, self.values.tolist())

    def as_dict(self) -> dict:
        return dict(self.items())

    def _coerce(self, other):
        if isinstance(other, _SoftScalar):
            check_same_params(self, other)
            return other.values
        if isinstance(other, Number):
            return other
        return NotImplemented

    def _wrap(self, values):
        cls = SoftComplex if np.iscomplexobj(values) else SoftReal
        return cls(self.params, values)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.values + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.values - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.values)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.values * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.values / o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o / self.values)

    def __neg__(self):
        return self._wrap(-self.values)

    def __abs__(self):
        return SoftReal(self.params, np.abs(self.values))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.params, self.values.tobytes()))

    def __repr__(self):
        body = ", ".join(f"{k}: {v!r}" for k, v in self.items())
        return f"{type(self).__name__}({{{body}}})"


class SoftReal(_SoftScalar):
    """A real number attached to every parameter (a soft real number)."""

    _dtype = float

    def sqrt(self) -> "SoftReal":
        return SoftReal(self.params, np.sqrt(self.values))

    def min(self) -> float:
        return float(self.values.min())

    def max(self) -> float:
        return float(self.values.max())


class SoftComplex(_SoftScalar):
    """A complex number attached to every parameter."""

    _dtype = complex

    @property
    def real(self) -> SoftReal:
        return SoftReal(self.params, self.values.real)

    @property
    def imag(self) -> SoftReal:
        return SoftReal(self.params, self.values.imag)

    def conj(self) -> "SoftComplex":
        return SoftComplex(self.params, self.values.conj())


def _compare(a: SoftReal, b: SoftReal, op) -> bool:
    check_same_params(a, b)
    return bool(np.all(op(a.values, b.values)))


def soft_le(a: SoftReal, b: SoftReal) -> bool:
    """``a(λ) <= b(λ)`` for every parameter.  The order is only partial."""
    return _compare(a, b, np.less_equal)


def soft_lt(a: SoftReal, b: SoftReal) -> bool:
    return _compare(a, b, np.less)


def soft_ge(a: SoftReal, b: SoftReal) -> bool:
    return _compare(a, b, np.greater_equal)


def soft_gt(a: SoftReal, b: SoftReal) -> bool:
    return _compare(a, b, np.greater)


def soft_eq(a, b, atol: float = 1e-10, rtol: float = 1e-10) -> bool:
    """Pointwise equality of two soft scalars within tolerance."""
    check_same_params(a, b)
    return bool(np.allclose(a.values, b.values, atol=atol, rtol=rtol))


class SoftVector:
    """A function from parameters to vectors of a fixed length ``dim``."""

    __slots__ = ("params", "values")

    def __init__(self, params: ParameterSet, values):
        values = _frozen(values, complex)
        if values.ndim != 2 or values.shape[0] != len(params) or values.shape[1] < 1:
            raise ShapeMismatchError(
                f"soft vector over {len(params)} parameters needs shape "
                f"({len(params)}, dim), got {values.shape}"
            )
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("SoftVector is immutable")

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @classmethod
    def null(cls, params: ParameterSet, dim: int) -> "SoftVector":
        return cls(params, np.zeros((len(params), dim)))

    @classmethod
    def constant(cls, params: ParameterSet, vector: Sequence[complex]) -> "SoftVector":
        vector = np.asarray(vector, dtype=complex)
        return cls(params, np.broadcast_to(vector, (len(params), vector.size)))

    @classmethod
    def from_mapping(cls, params: ParameterSet, mapping: Mapping[str, Sequence[complex]]):
        missing = [label for label in params if label not in mapping]
        extra = [label for label in mapping if label not in params]
        if missing or extra:
            raise ParameterMismatchError(
                f"mapping keys do not match parameters (missing {missing}, extra {extra})"
            )
        rows = [np.asarray(mapping[label], dtype=complex) for label in params]
        if len({row.shape for row in rows}) != 1:
            raise ShapeMismatchError("soft vector values must share one length")
        return cls(params, np.stack(rows))

    def __getitem__(self, label: str) -> np.ndarray:
        return self.values[self.params.index(label)]

    def _other(self, other):
        if not isinstance(other, SoftVector):
            return None
        check_same_params(self, other)
        if other.dim != self.dim:
            raise ShapeMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return other.values

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else SoftVector(self.params, self.values + o)

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else SoftVector(self.params, self.values - o)

    def __neg__(self):
        return SoftVector(self.params, -self.values)

    def __mul__(self, scalar):
        if isinstance(scalar, _SoftScalar):
            check_same_params(self, scalar)
            return SoftVector(self.params, scalar.values[:, None] * self.values)
        if isinstance(scalar, Number):
            return SoftVector(self.params, scalar * self.values)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SoftVector):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.params, self.values.shape, self.values.tobytes()))

    def __repr__(self):
        return f"SoftVector(dim={self.dim}, params={self.params.labels})"


class DirectSumSoftVector:
    """A soft element of the direct sum of the block spaces.

    ``blocks[j]`` has shape ``(len(params), block_dims[j])``.
    """

    __slots__ = ("params", "blocks")

    def __init__(self, params: ParameterSet, blocks: Sequence):
        frozen = tuple(_frozen(b, complex) for b in blocks)
        if not frozen:
            raise ShapeMismatchError("direct-sum vector needs at least one block")
        for j, b in enumerate(frozen):
            if b.ndim != 2 or b.shape[0] != len(params):
                raise ShapeMismatchError(
                    f"block {j} must have shape ({len(params)}, d_j), got {b.shape}"
                )
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "blocks", frozen)

    def __setattr__(self, name, value):
        raise AttributeError("DirectSumSoftVector is immutable")

    @property
    def block_dims(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.blocks)

    def block(self, j: int) -> SoftVector:
        return SoftVector(self.params, self.blocks[j])

    @classmethod
    def from_soft_vectors(cls, vectors: Sequence[SoftVector]) -> "DirectSumSoftVector":
        params = check_same_params(*vectors)
        return cls(params, [v.values for v in vectors])

    @classmethod
    def null(cls, params: ParameterSet, block_dims: Sequence[int]):
        return cls(params, [np.zeros((len(params), d)) for d in block_dims])

    def __repr__(self):
        return f"DirectSumSoftVector(block_dims={self.block_dims}, params={self.params.labels})"


def soft_inner_product(x: SoftVector, y: SoftVector) -> SoftComplex:
    """Pointwise ``<x(λ), y(λ)>``, linear in ``x`` and conjugate-linear in ``y``."""
    check_same_params(x, y)
    if x.dim != y.dim:
        raise ShapeMismatchError(f"dimension mismatch: {x.dim} vs {y.dim}")
    return SoftComplex(x.params, np.einsum("ai,ai->a", x.values, y.values.conj()))


def soft_norm(x: SoftVector) -> SoftReal:
    return SoftReal(x.params, np.linalg.norm(x.values, axis=1))


def direct_sum_inner_product(f: DirectSumSoftVector, g: DirectSumSoftVector) -> SoftComplex:
    """Sum over blocks of the blockwise inner products, in block order."""
    check_same_params(f, g)
    if f.block_dims != g.block_dims:
        raise ShapeMismatchError(
            f"block structures differ: {f.block_dims} vs {g.block_dims}"
        )
    total = np.zeros(len(f.params), dtype=complex)
    for fb, gb in zip(f.blocks, g.blocks):
        total = total + np.einsum("ai,ai->a", fb, gb.conj())
    return SoftComplex(f.params, total)
