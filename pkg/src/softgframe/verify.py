"""Randomized property harness and brute-force oracles.

Each property in :data:`PROPERTIES` is checked on seeded random instances and
summarized as a :class:`PropertyReport`.  The violation metric of every
property is a worst case over parameters and trials of a relative defect.
Negative instances (rank-deficient block sets) are constructed, never sampled.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .composition import (
    LocalFrameFamily,
    compose_frame,
    local_canonical_duals,
    tight_local_defects,
)
from .dual import atomic_resolution, canonical_dual, random_probe, reconstruct
from .gframe import (
    DEFAULT_TOL,
    SoftGFrame,
    analysis,
    frame_bounds,
    frame_energy,
    frame_operator,
    induced_from_vectors,
    synthesis,
    synthesis_operator,
)
from .operators import SoftOperator, apply, operator_norm_upper
from .soft_core import (
    DirectSumSoftVector,
    ParameterSet,
    SoftComplex,
    SoftReal,
    SoftVector,
    direct_sum_inner_product,
    soft_inner_product,
    soft_norm,
)

__all__ = [
    "PropertyReport",
    "RandomModel",
    "PROPERTIES",
    "oracle_frame_operator",
    "oracle_frame_bounds",
    "random_frame",
    "random_local_frames",
    "random_tight_local_frames",
    "run_suite",
    "suite_for_frame",
]


@dataclass(frozen=True)
class PropertyReport:
    property_id: str
    passed: bool
    worst_violation: float | None
    tolerance: float
    witness: dict | None = None
    skipped: bool = False
    reason: str = ""

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Property:
    property_id: str
    tolerance: float
    summary: str
    needs_frame: bool
    check: Callable = field(repr=False, compare=False)


@dataclass(frozen=True)
class RandomModel:
    """Seeded description of a random soft g-frame instance.

    Block entries are unit-variance complex Gaussians.  With
    ``rank_deficient=True`` every block annihilates the last coordinate, so
    the result is never a frame.
    """

    seed: int
    ambient_dim: int
    block_dims: tuple[int, ...]
    params: ParameterSet
    rank_deficient: bool = False

    def __post_init__(self):
        if self.ambient_dim < 1 or not self.block_dims or min(self.block_dims) < 1:
            raise ValueError("dimensions must be positive and at least one block given")
        if self.rank_deficient and self.ambient_dim < 2:
            raise ValueError("a rank-deficient model needs ambient_dim >= 2")

    def frame(self) -> SoftGFrame:
        return random_frame(
            np.random.default_rng([self.seed, 0]),
            self.params,
            self.ambient_dim,
            self.block_dims,
            rank_deficient=self.rank_deficient,
        )

    @classmethod
    def sample(cls, seed: int, max_dim: int = 8, max_blocks: int = 6, max_params: int = 3):
        """Draw dimensions as well as entries from ``seed``."""
        rng = np.random.default_rng([seed, 1])
        n = int(rng.integers(1, max_dim + 1))
        J = int(rng.integers(1, max_blocks + 1))
        dims = [int(d) for d in rng.integers(1, n + 1, size=J)]
        # a frame needs at least n rows in total
        dims[-1] += max(0, n - sum(dims))
        dims = tuple(dims)
        labels = [f"p{i}" for i in range(int(rng.integers(1, max_params + 1)))]
        return cls(seed=seed, ambient_dim=n, block_dims=dims, params=ParameterSet(labels))


def _gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_frame(rng, params, n, block_dims, rank_deficient=False, min_ratio=1e-3) -> SoftGFrame:
    """Random blocks; adds the stacked identity when the draw is (nearly) not a frame."""
    total = sum(block_dims)
    if total < n and not rank_deficient:
        raise ValueError(f"{total} block rows cannot span dimension {n}")
    stacked = _gaussian(rng, (len(params), total, n))
    if rank_deficient:
        stacked[:, :, -1] = 0.0
    else:
        gram = np.conj(np.swapaxes(stacked, 1, 2)) @ stacked
        eigs = np.linalg.eigvalsh(gram)
        if np.any(eigs[:, 0] <= min_ratio * eigs[:, -1]):
            eye = np.zeros((total, n))
            rows = np.arange(total)
            eye[rows, rows % n] = 1.0
            stacked = stacked + eye
    blocks, start = [], 0
    for d in block_dims:
        blocks.append(SoftOperator(params, stacked[:, start:start + d, :]))
        start += d
    return SoftGFrame(blocks)


def random_local_frames(rng, params, dims, extra: int = 2, tol: float = DEFAULT_TOL) -> LocalFrameFamily:
    """Gaussian local frames with ``d_j + extra`` vectors each."""
    families = []
    for d in dims:
        while True:
            fam = [SoftVector(params, _gaussian(rng, (len(params), d))) for _ in range(d + extra)]
            if frame_bounds(induced_from_vectors(fam), 1e-3).is_frame:
                break
        families.append(fam)
    return LocalFrameFamily(families, tol=tol)


def random_tight_local_frames(rng, params, dims, bound: SoftReal, extra: int = 2) -> LocalFrameFamily:
    """Tight local frames whose common bound is the soft real ``bound``.

    Columns of a ``d x (d + extra)`` matrix with orthonormal rows form a
    Parseval frame for ``C^d``; scaling by ``sqrt(bound)`` gives bound ``bound``.
    """
    families = []
    for d in dims:
        K = d + extra
        vecs = np.empty((K, len(params), d), dtype=complex)
        for i, b in enumerate(bound.values):
            q, _ = np.linalg.qr(_gaussian(rng, (K, d)))
            vecs[:, i, :] = math.sqrt(b) * q
        families.append([SoftVector(params, v) for v in vecs])
    return LocalFrameFamily(families, tight=[True] * len(dims), tol=1e-9)


def oracle_frame_operator(F: SoftGFrame) -> SoftOperator:
    """Independent route to ``S``: stack every block into one tall matrix ``M`` and form ``M* M``."""
    stacked = F.stacked()
    out = np.empty((len(F.params), F.ambient_dim, F.ambient_dim), dtype=complex)
    for i in range(len(F.params)):
        m = stacked[i]
        out[i] = m.conj().T @ m
    return SoftOperator(F.params, out)


def oracle_frame_bounds(F: SoftGFrame) -> tuple[np.ndarray, np.ndarray]:
    """Bounds from the squared singular values of the stacked matrix."""
    stacked = F.stacked()
    n = F.ambient_dim
    lo, hi = [], []
    for m in stacked:
        sv = np.linalg.svd(m, compute_uv=False)
        hi.append(sv[0] ** 2)
        lo.append(sv[n - 1] ** 2 if sv.size >= n else 0.0)
    return np.array(lo), np.array(hi)


# -- property checks ---------------------------------------------------------
# Each returns (worst_violation, witness_dict_or_None).

class _Worst:
    def __init__(self, labels):
        self.labels = labels
        self.value = 0.0
        self.witness = None

    def update(self, defects, trial):
        defects = np.asarray(defects, dtype=float)
        i = int(np.argmax(defects))
        if defects[i] > self.value:
            self.value = float(defects[i])
            self.witness = {"parameter": self.labels[i], "trial": trial}

    def result(self):
        return self.value, self.witness


def _soft_scalar(rng, params):
    return SoftComplex(params, _gaussian(rng, len(params)))


def _unit_ball(rng, params, dim):
    v = random_probe(params, dim, rng).values
    norms = np.linalg.norm(v, axis=1, keepdims=True)
    return SoftVector(params, v / np.maximum(norms, 1.0) * rng.uniform(0, 1, (len(params), 1)))


def _check_soft_norm(F, ctx, rng, trials):
    params, n = F.params, F.ambient_dim
    w = _Worst(params.labels)
    zero = soft_norm(SoftVector.null(params, n)).values
    w.update(np.abs(zero), -1)
    for t in range(trials):
        x, y = _unit_ball(rng, params, n), _unit_ball(rng, params, n)
        alpha = _soft_scalar(rng, params)
        nx, ny = soft_norm(x).values, soft_norm(y).values
        w.update(np.maximum(0.0, -nx), t)
        w.update(np.abs(soft_norm(x * alpha).values - np.abs(alpha.values) * nx) / (1 + nx), t)
        w.update(np.maximum(0.0, soft_norm(x + y).values - nx - ny) / (1 + nx + ny), t)
    return w.result()


def _check_inner_product(F, ctx, rng, trials):
    params, n = F.params, F.ambient_dim
    w = _Worst(params.labels)
    for t in range(trials):
        x, y, z = (_unit_ball(rng, params, n) for _ in range(3))
        alpha = _soft_scalar(rng, params)
        xy = soft_inner_product(x, y).values
        yx = soft_inner_product(y, x).values
        w.update(np.abs(xy - yx.conj()), t)
        lin = soft_inner_product(x * alpha + y, z).values
        w.update(np.abs(lin - alpha.values * soft_inner_product(x, z).values
                        - soft_inner_product(y, z).values) / (1 + np.abs(alpha.values)), t)
        xx = soft_inner_product(x, x).values
        w.update(np.maximum(0.0, -xx.real) + np.abs(xx.imag), t)
        w.update(np.abs(xx.real - soft_norm(x).values ** 2), t)
    theta = SoftVector.null(params, n)
    w.update(np.abs(soft_inner_product(theta, theta).values), -1)
    return w.result()


def _random_coefficients(rng, F):
    return DirectSumSoftVector(F.params, [_gaussian(rng, (len(F.params), d)) for d in F.block_dims])


def _check_adjoint_pairing(F, ctx, rng, trials):
    w = _Worst(F.params.labels)
    for t in range(trials):
        f = random_probe(F.params, F.ambient_dim, rng)
        g = _random_coefficients(rng, F)
        lhs = direct_sum_inner_product(analysis(F, f), g).values
        rhs = soft_inner_product(f, synthesis(F, g)).values
        gnorm = np.sqrt(sum(np.sum(np.abs(b) ** 2, axis=1) for b in g.blocks))
        w.update(np.abs(lhs - rhs) / (1 + soft_norm(f).values * gnorm), t)
    return w.result()


def _check_synthesis_norm(F, ctx, rng, trials):
    norm_t = operator_norm_upper(synthesis_operator(F)).values
    d = ctx["cert"].upper.values
    w = _Worst(F.params.labels)
    w.update(np.maximum(0.0, norm_t - np.sqrt(d)), 0)
    return w.result()


def _check_frame_predicate(F, ctx, rng, trials):
    cert = ctx["cert"]
    ratio = cert.lower.values / cert.upper.values
    w = _Worst(F.params.labels)
    w.update(np.maximum(0.0, DEFAULT_TOL - ratio), 0)
    return w.result()


def _check_operator_equivalence(F, ctx, rng, trials):
    cert = ctx["cert"]
    S = ctx["S"].values
    n = F.ambient_dim
    eye = np.eye(n)
    w = _Worst(F.params.labels)
    c, d = cert.lower.values, cert.upper.values
    herm = np.abs(S - np.conj(np.swapaxes(S, 1, 2))).max(axis=(1, 2)) / d
    w.update(herm, 0)
    low = np.linalg.eigvalsh(S - c[:, None, None] * eye)[:, 0]
    high = np.linalg.eigvalsh(d[:, None, None] * eye - S)[:, 0]
    w.update(np.maximum(0.0, -low) / d, 0)
    w.update(np.maximum(0.0, -high) / d, 0)
    return w.result()


def _check_energy_identity(F, ctx, rng, trials):
    S = ctx["S"]
    w = _Worst(F.params.labels)
    for t in range(trials):
        f = random_probe(F.params, F.ambient_dim, rng)
        quad = soft_inner_product(apply(S, f), f).values
        energy = frame_energy(F, f).values
        w.update(np.abs(quad - energy) / (1 + soft_norm(f).values ** 2), t)
    return w.result()


def _check_sandwich(F, ctx, rng, trials):
    cert = ctx["cert"]
    c, d = cert.lower.values, cert.upper.values
    w = _Worst(F.params.labels)
    for t in range(trials):
        f = random_probe(F.params, F.ambient_dim, rng)
        nf2 = soft_norm(f).values ** 2
        e = frame_energy(F, f).values
        w.update(np.maximum(0.0, np.maximum(c * nf2 - e, e - d * nf2)) / (d * nf2), t)
    return w.result()


def _check_scaling(F, ctx, rng, trials):
    w = _Worst(F.params.labels)
    S = ctx["S"].values
    cert = ctx["cert"]
    for t in range(max(1, min(trials, 10))):
        alpha = _soft_scalar(rng, F.params)
        a2 = np.abs(alpha.values) ** 2
        scaled = F.scaled(alpha)
        S2 = frame_operator(scaled).values
        target = a2[:, None, None] * S
        w.update(np.linalg.norm(S2 - target, axis=(1, 2)) / np.linalg.norm(target, axis=(1, 2)), t)
        c2 = frame_bounds(scaled).upper.values
        w.update(np.abs(c2 - a2 * cert.upper.values) / (a2 * cert.upper.values), t)
    return w.result()


def _check_induced(F, ctx, rng, trials):
    params, n = F.params, F.ambient_dim
    w = _Worst(params.labels)
    vectors = [random_probe(params, n, rng) for _ in range(n + 2)]
    G = induced_from_vectors(vectors)
    for t in range(trials):
        f = random_probe(params, n, rng)
        direct = sum(np.abs(soft_inner_product(f, v).values) ** 2 for v in vectors)
        w.update(np.abs(frame_energy(G, f).values - direct) / (1 + direct), t)
    return w.result()


def _check_oracle_operator(F, ctx, rng, trials):
    S = ctx["S"].values
    oracle = oracle_frame_operator(F).values
    w = _Worst(F.params.labels)
    scale = np.maximum(1.0, np.abs(oracle).max(axis=(1, 2)))
    w.update(np.abs(S - oracle).max(axis=(1, 2)) / scale, 0)
    return w.result()


def _check_oracle_bounds(F, ctx, rng, trials):
    lo, hi = oracle_frame_bounds(F)
    cert = ctx["cert"]
    w = _Worst(F.params.labels)
    w.update(np.abs(cert.upper.values - hi) / hi, 0)
    w.update(np.abs(cert.lower.values - lo) / hi, 0)
    return w.result()


def _check_dual_bounds(F, ctx, rng, trials):
    cert = ctx["cert"]
    pair = ctx["pair"]
    c, d = cert.lower.values, cert.upper.values
    dual_cert = frame_bounds(pair.dual)
    w = _Worst(F.params.labels)
    w.update(np.abs(dual_cert.lower.values - 1 / d) * d, 0)
    w.update(np.abs(dual_cert.upper.values - 1 / c) * c, 0)
    for t in range(trials):
        f = random_probe(F.params, F.ambient_dim, rng)
        nf2 = soft_norm(f).values ** 2
        q = soft_inner_product(apply(pair.s_inverse, f), f).values.real / nf2
        w.update(np.maximum(0.0, np.maximum(1 / d - q, q - 1 / c)) * c, t)
    return w.result()


def _check_dual_involution(F, ctx, rng, trials):
    back = canonical_dual(ctx["pair"].dual).dual
    w = _Worst(F.params.labels)
    for b0, b1 in zip(F.blocks, back.blocks):
        scale = np.maximum(np.linalg.norm(b0.values, axis=(1, 2)), 1e-300)
        w.update(np.linalg.norm(b1.values - b0.values, axis=(1, 2)) / scale, 0)
    return w.result()


def _check_decomposition(F, ctx, rng, trials):
    pair = ctx["pair"]
    cond = ctx["cert"].condition.values
    w = _Worst(F.params.labels)
    for t in range(trials):
        f = random_probe(F.params, F.ambient_dim, rng)
        nf = soft_norm(f).values
        for order in ("dual_inside", "dual_outside"):
            err = soft_norm(reconstruct(pair, f, order) - f).values
            w.update(err / (nf * cond), t)
    return w.result()


def _check_atomic(F, ctx, rng, trials):
    pair = ctx["pair"]
    cond = ctx["cert"].condition.values
    n = F.ambient_dim
    w = _Worst(F.params.labels)
    for t in range(max(1, min(trials, 20))):
        T = SoftOperator(F.params, _gaussian(rng, (len(F.params), n, n)))
        f = random_probe(F.params, n, rng)
        tf = apply(T, f)
        ntf = np.maximum(soft_norm(tf).values, 1e-300)
        for side in ("dual_first", "frame_first"):
            err = soft_norm(atomic_resolution(pair, T, f, side) - tf).values
            w.update(err / (ntf * cond), t)
    return w.result()


def _check_composition(F, ctx, rng, trials):
    cert = ctx["cert"]
    params = F.params
    L = random_local_frames(rng, params, F.block_dims)
    composed = compose_frame(F, L)
    a, b = L.envelope_lower.values, L.envelope_upper.values
    c, d = cert.lower.values, cert.upper.values
    w = _Worst(params.labels)
    for t in range(trials):
        f = random_probe(params, F.ambient_dim, rng)
        nf2 = soft_norm(f).values ** 2
        # <Λ_j f, f_jk> = <f, Λ_j* f_jk>
        e = sum(np.abs(soft_inner_product(f, u).values) ** 2 for u in composed)
        w.update(np.maximum(0.0, np.maximum(a * c * nf2 - e, e - b * d * nf2)) / (b * d * nf2), t)
    return w.result()


def _check_composed_dual_pair(F, ctx, rng, trials):
    params = F.params
    L = random_local_frames(rng, params, F.block_dims)
    Lg = local_canonical_duals(L)
    left = compose_frame(F, L)
    right = compose_frame(ctx["pair"].dual, Lg)
    w = _Worst(params.labels)
    for t in range(trials):
        f = random_probe(params, F.ambient_dim, rng)
        nf = soft_norm(f).values
        for analyzers, synthesizers in ((left, right), (right, left)):
            out = SoftVector.null(params, F.ambient_dim)
            for u, v in zip(analyzers, synthesizers):
                out = out + v * soft_inner_product(f, u)
            w.update(soft_norm(out - f).values / nf, t)
    return w.result()


def _tight_defects(F, rng):
    params = F.params
    bound = SoftReal(params, rng.uniform(0.5, 3.0, len(params)))
    L = random_tight_local_frames(rng, params, F.block_dims, bound)
    return tight_local_defects(F, L, tol=1e-9)


def _check_tight_operator(F, ctx, rng, trials):
    w = _Worst(F.params.labels)
    w.update([_tight_defects(F, rng).operator_defect] * len(F.params), 0)
    return w.result()


def _check_tight_dual(F, ctx, rng, trials):
    w = _Worst(F.params.labels)
    w.update([_tight_defects(F, rng).dual_defect] * len(F.params), 0)
    return w.result()


PROPERTIES: tuple[Property, ...] = (
    Property("soft_norm_axioms", 1e-12, "norm axioms hold at every label", False, _check_soft_norm),
    Property("inner_product_axioms", 1e-12, "inner product is Hermitian, linear in the first slot, positive", False, _check_inner_product),
    Property("frame_predicate", 0.0, "frame predicate agrees with the oracle eigenvalues", False, _check_frame_predicate),
    Property("oracle_frame_operator", 1e-12, "S matches the stacked-matrix oracle", False, _check_oracle_operator),
    Property("oracle_frame_bounds", 1e-10, "bounds match singular values of the stacked matrix", False, _check_oracle_bounds),
    Property("adjoint_pairing", 1e-10, "<T*f, g> = <f, T g>", False, _check_adjoint_pairing),
    Property("synthesis_norm_bound", 1e-8, "||T|| <= sqrt(upper bound)", False, _check_synthesis_norm),
    Property("frame_energy_identity", 1e-10, "<S f, f> = sum ||L_j f||^2", False, _check_energy_identity),
    Property("induced_frame_consistency", 1e-10, "vector frames induce the expected blocks", False, _check_induced),
    Property("scaling_covariance", 1e-10, "scaling every block by a scales S by |a|^2", False, _check_scaling),
    Property("frame_sandwich", 1e-9, "lower ||f||^2 <= energy <= upper ||f||^2", True, _check_sandwich),
    Property("operator_equivalence", 1e-10, "lower I <= S <= upper I", True, _check_operator_equivalence),
    Property("dual_bounds", 1e-8, "dual bounds are (1/upper, 1/lower)", True, _check_dual_bounds),
    Property("dual_involution", 1e-8, "dual of the dual is the frame", True, _check_dual_involution),
    Property("decomposition", 1e-8, "both reconstruction orders return f", True, _check_decomposition),
    Property("atomic_resolution", 1e-8, "both atomic resolutions return T f", True, _check_atomic),
    Property("composition_sandwich", 1e-9, "composed frame energy within envelope times frame bounds", True, _check_composition),
    Property("composed_dual_pair", 1e-8, "composed frames with local duals reconstruct f", True, _check_composed_dual_pair),
    Property("tight_local_operator", 1e-10, "tight locals: composed operator equals A S", True, _check_tight_operator),
    Property("tight_local_dual", 1e-8, "tight locals: composed dual is the dual applied to f_jk / A", True, _check_tight_dual),
)


def suite_for_frame(
    F: SoftGFrame, trials: int = 200, seed: int = 42, tol: float = DEFAULT_TOL
) -> list[PropertyReport]:
    """Run every property against a fixed frame with seeded random probes."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    cert = frame_bounds(F, tol)
    ctx = {"cert": cert, "S": frame_operator(F)}
    if cert.is_frame:
        ctx["pair"] = canonical_dual(F, tol)
    reports = []
    for index, prop in enumerate(PROPERTIES):
        if prop.needs_frame and not cert.is_frame:
            reports.append(PropertyReport(
                prop.property_id, False, None, prop.tolerance, skipped=True,
                reason=f"not a frame at parameters {cert.failing_labels(tol)}",
            ))
            continue
        rng = np.random.default_rng([seed, index])
        worst, witness = prop.check(F, ctx, rng, trials)
        reports.append(PropertyReport(prop.property_id, worst <= prop.tolerance, worst,
                                      prop.tolerance, witness))
    return reports


def run_suite(model: RandomModel, trials: int = 200) -> list[PropertyReport]:
    return suite_for_frame(model.frame(), trials=trials, seed=model.seed)
