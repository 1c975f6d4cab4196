"""Ordinary soft frames assembled from a g-frame and local frames of its block spaces.

Given ``{Λ_j}`` and, for each block space ``V_j``, a frame ``{f_jk}``, the
family ``{Λ_j* f_jk}`` ordered by ``(j, k)`` is a frame for the ambient space
whose bounds are sandwiched by the products of the local envelope and the
g-frame bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .dual import canonical_dual, dual_pair_check
from .errors import PreconditionError, ShapeMismatchError, VerificationError
from .gframe import (
    DEFAULT_TOL,
    SoftGFrame,
    frame_bounds,
    frame_operator,
    frame_vectors,
    induced_from_vectors,
)
from .operators import adjoint, apply
from .soft_core import SoftReal, SoftVector, check_same_params

__all__ = [
    "LocalFrameFamily",
    "compose_frame",
    "composed_frame",
    "composed_index",
    "composed_dual_pair",
    "local_canonical_duals",
    "tight_local_defects",
    "tight_local_canonical_dual",
]


@dataclass(frozen=True)
class LocalFrameFamily:
    """One soft frame per block space, plus their bounds and a common envelope.

    ``lower[j]``/``upper[j]`` are the optimal local bounds and
    ``envelope_lower <= lower[j] <= upper[j] <= envelope_upper`` holds
    pointwise.  Without an explicit envelope the tightest one is used.
    """

    families: tuple[tuple[SoftVector, ...], ...]
    lower: tuple[SoftReal, ...]
    upper: tuple[SoftReal, ...]
    envelope_lower: SoftReal
    envelope_upper: SoftReal
    tight: tuple[bool, ...]

    def __init__(
        self,
        families: Sequence[Sequence[SoftVector]],
        envelope: tuple[SoftReal, SoftReal] | None = None,
        tight: Sequence[bool] | None = None,
        tol: float = DEFAULT_TOL,
    ):
        families = tuple(tuple(fam) for fam in families)
        if not families or any(not fam for fam in families):
            raise ShapeMismatchError("every local family needs at least one vector")
        check_same_params(*(v for fam in families for v in fam))
        lowers, uppers, is_tight = [], [], []
        for j, fam in enumerate(families):
            cert = frame_bounds(induced_from_vectors(fam), tol)
            if not cert.is_frame:
                raise PreconditionError(
                    f"local family {j} is not a frame at parameters {cert.failing_labels(tol)}"
                )
            lowers.append(cert.lower)
            uppers.append(cert.upper)
            is_tight.append(cert.is_tight)
        if tight is not None:
            tight = tuple(bool(t) for t in tight)
            if len(tight) != len(families):
                raise ShapeMismatchError("one tightness flag per local family")
            for j, (declared, actual) in enumerate(zip(tight, is_tight)):
                if declared and not actual:
                    raise PreconditionError(f"local family {j} is declared tight but is not")
        else:
            tight = tuple(is_tight)

        lo = np.min([a.values for a in lowers], axis=0)
        hi = np.max([b.values for b in uppers], axis=0)
        params = lowers[0].params
        if envelope is None:
            env_lo, env_hi = SoftReal(params, lo), SoftReal(params, hi)
        else:
            env_lo, env_hi = envelope
            check_same_params(env_lo, env_hi, lowers[0])
            slack = tol * hi
            if np.any(env_lo.values > lo + slack) or np.any(env_hi.values < hi - slack):
                raise PreconditionError(
                    "local bounds escape the envelope "
                    f"(need envelope_lower <= {lo.tolist()} and envelope_upper >= {hi.tolist()})"
                )
            if np.any(env_lo.values <= 0):
                raise PreconditionError("envelope lower bound must be positive")

        object.__setattr__(self, "families", families)
        object.__setattr__(self, "lower", tuple(lowers))
        object.__setattr__(self, "upper", tuple(uppers))
        object.__setattr__(self, "envelope_lower", env_lo)
        object.__setattr__(self, "envelope_upper", env_hi)
        object.__setattr__(self, "tight", tight)

    @property
    def params(self):
        return self.envelope_lower.params

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(fam[0].dim for fam in self.families)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(fam) for fam in self.families)

    def local_frame(self, j: int) -> SoftGFrame:
        return induced_from_vectors(self.families[j])


def _check_compatible(F: SoftGFrame, L: LocalFrameFamily):
    check_same_params(F, L)
    if len(L.families) != len(F):
        raise ShapeMismatchError(f"{len(L.families)} local families for {len(F)} blocks")
    for j, (fam, d) in enumerate(zip(L.families, F.block_dims)):
        for k, v in enumerate(fam):
            if v.dim != d:
                raise ShapeMismatchError(
                    f"local vector ({j}, {k}) has dim {v.dim}, block space has dim {d}"
                )


def compose_frame(F: SoftGFrame, L: LocalFrameFamily) -> list[SoftVector]:
    """``[Λ_j* f_jk]`` flattened in lexicographic ``(j, k)`` order."""
    _check_compatible(F, L)
    out = []
    for block, fam in zip(F.blocks, L.families):
        block_adj = adjoint(block)
        out.extend(apply(block_adj, v) for v in fam)
    return out


def composed_index(L: LocalFrameFamily) -> list[tuple[int, int]]:
    return [(j, k) for j, size in enumerate(L.sizes) for k in range(size)]


def composed_frame(F: SoftGFrame, L: LocalFrameFamily) -> SoftGFrame:
    return induced_from_vectors(compose_frame(F, L))


def local_canonical_duals(L: LocalFrameFamily, tol: float = DEFAULT_TOL) -> LocalFrameFamily:
    """The family of canonical duals of every local frame."""
    duals = [frame_vectors(canonical_dual(L.local_frame(j), tol).dual) for j in range(len(L.families))]
    return LocalFrameFamily(duals, tol=tol)


def composed_dual_pair(
    F: SoftGFrame,
    G: SoftGFrame,
    L: LocalFrameFamily,
    Lg: LocalFrameFamily,
    trials: int = 200,
    tol: float = 1e-8,
    seed: int = 0,
) -> bool:
    """Check that ``{Λ_j* f_jk}`` and ``{Γ_j* g_jk}`` reconstruct random vectors.

    Both ``Σ <f, Λ_j* f_jk> Γ_j* g_jk = f`` and the mirrored identity are tested.
    """
    if L.sizes != Lg.sizes:
        raise ShapeMismatchError(f"local family sizes differ: {L.sizes} vs {Lg.sizes}")
    left = composed_frame(F, L)
    right = composed_frame(G, Lg)
    return dual_pair_check(left, right, trials=trials, tol=tol, seed=seed)


class TightCompositionDefects(NamedTuple):
    common_bound: SoftReal
    operator_defect: float
    dual_defect: float
    composed_dual: list
    predicted_dual: list


def _common_tight_bound(L: LocalFrameFamily, tol: float) -> SoftReal:
    for j, (lo, hi) in enumerate(zip(L.lower, L.upper)):
        if np.any(np.abs(hi.values - lo.values) > tol * hi.values):
            raise PreconditionError(f"local family {j} is not tight")
    ref = L.upper[0].values
    for j, hi in enumerate(L.upper[1:], start=1):
        if np.any(np.abs(hi.values - ref) > tol * ref):
            raise PreconditionError(
                f"local family {j} has tight bound {hi.values.tolist()}, "
                f"family 0 has {ref.tolist()}"
            )
    mean = np.mean([hi.values for hi in L.upper] + [lo.values for lo in L.lower], axis=0)
    return SoftReal(L.params, mean)


def tight_local_defects(
    F: SoftGFrame, L: LocalFrameFamily, tol: float = DEFAULT_TOL
) -> TightCompositionDefects:
    """Compare the composed canonical dual against ``Λ~_j* (f_jk / A)``.

    ``operator_defect`` is the largest relative Frobenius gap between the
    composed frame operator and ``A · S_F``; ``dual_defect`` the largest gap
    between matching dual vectors relative to the largest predicted vector.
    """
    _check_compatible(F, L)
    bound = _common_tight_bound(L, tol)

    composed = composed_frame(F, L)
    s_comp = frame_operator(composed).values
    s_pred = bound.values[:, None, None] * frame_operator(F).values
    operator_defect = float(np.max(
        np.linalg.norm(s_comp - s_pred, axis=(1, 2)) / np.linalg.norm(s_pred, axis=(1, 2))
    ))

    composed_dual = frame_vectors(canonical_dual(composed, tol).dual)
    g_dual = canonical_dual(F, tol).dual
    inv_bound = 1.0 / bound
    predicted = []
    for block, fam in zip(g_dual.blocks, L.families):
        block_adj = adjoint(block)
        predicted.extend(apply(block_adj, inv_bound * v) for v in fam)

    got = np.stack([v.values for v in composed_dual], axis=1)
    want = np.stack([v.values for v in predicted], axis=1)
    scale = np.linalg.norm(want, axis=2).max(axis=1)
    dual_defect = float(np.max(np.linalg.norm(got - want, axis=2).max(axis=1) / scale))
    return TightCompositionDefects(bound, operator_defect, dual_defect, composed_dual, predicted)


def tight_local_canonical_dual(
    F: SoftGFrame,
    L: LocalFrameFamily,
    tol: float = DEFAULT_TOL,
    operator_tol: float = 1e-10,
    dual_tol: float = 1e-8,
) -> list[SoftVector]:
    """Canonical dual of the composed family when every local frame is tight.

    Raises ``PreconditionError`` if the local frames are not tight with one
    common bound and ``VerificationError`` if the composed dual does not match
    ``Λ~_j* (f_jk / A)``.
    """
    d = tight_local_defects(F, L, tol)
    if d.operator_defect > operator_tol:
        raise VerificationError(
            f"composed frame operator deviates from A*S by {d.operator_defect:.3g}"
        )
    if d.dual_defect > dual_tol:
        raise VerificationError(f"composed dual deviates by {d.dual_defect:.3g}")
    return d.composed_dual
