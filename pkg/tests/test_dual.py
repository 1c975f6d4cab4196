import numpy as np
import pytest

from softgframe import (
    NotAFrameError,
    ShapeMismatchError,
    SoftComplex,
    SoftGFrame,
    SoftOperator,
    SoftVector,
    apply,
    atomic_resolution,
    canonical_dual,
    dual_pair_check,
    frame_bounds,
    frame_operator,
    induced_from_vectors,
    reconstruct,
    soft_inner_product,
    soft_norm,
)
from softgframe.gframe import frame_vectors
from softgframe.verify import RandomModel

from conftest import random_soft_operator, random_soft_vector, unit


def test_parseval_dual_is_itself(identity_frame):
    pair = canonical_dual(identity_frame)
    for b0, b1 in zip(identity_frame.blocks, pair.dual.blocks):
        assert np.allclose(b0.values, b1.values, rtol=0, atol=1e-15)


def test_worked_example_dual_vectors(params, worked_frame):
    # S^-1 = diag(1/2, 1) applied to each frame vector
    pair = canonical_dual(worked_frame)
    got = [v["p"] for v in frame_vectors(pair.dual)]
    for g, want in zip(got, ([0.5, 0], [0.5, 0], [0, 1])):
        assert np.allclose(g, want, rtol=0, atol=1e-15)
    assert np.allclose(pair.s_inverse["q"], np.diag([0.5, 1.0]), rtol=0, atol=1e-15)


def test_scaling_case_dual(ab):
    alpha = SoftComplex.from_mapping(ab, {"a": 1, "b": 2})
    F = SoftGFrame([SoftOperator.identity(ab, 2)]).scaled(alpha)
    pair = canonical_dual(F)
    assert np.allclose(pair.dual.blocks[0]["b"], F.blocks[0]["b"] / 4, rtol=0, atol=1e-15)
    assert np.allclose(pair.dual.blocks[0]["a"], F.blocks[0]["a"], rtol=0, atol=1e-15)


def test_non_frame_has_no_dual(params):
    with pytest.raises(NotAFrameError):
        canonical_dual(induced_from_vectors([unit(params, 2, 0)]))


def test_worked_example_reconstruction(params, worked_frame):
    pair = canonical_dual(worked_frame)
    f = SoftVector.constant(params, [1, 1])
    coeffs = [soft_inner_product(f, v)["p"] for v in frame_vectors(pair.dual)]
    assert np.allclose(coeffs, [0.5, 0.5, 1.0], rtol=0, atol=1e-15)
    for order in ("dual_inside", "dual_outside"):
        assert np.all(soft_norm(reconstruct(pair, f, order) - f).values <= 1e-10)
    theta = SoftVector.null(params, 2)
    assert reconstruct(pair, theta) == theta
    with pytest.raises(ValueError):
        reconstruct(pair, f, "sideways")


def test_atomic_resolution_examples(params, worked_frame):
    pair = canonical_dual(worked_frame)
    f = SoftVector.constant(params, [1, 1])
    T = SoftOperator.constant(params, np.diag([2.0, 3.0]))
    for side in ("dual_first", "frame_first"):
        out = atomic_resolution(pair, T, f, side)
        assert np.allclose(out.values, [[2, 3], [2, 3]], rtol=0, atol=1e-14)
    ident = SoftOperator.identity(params, 2)
    assert np.allclose(atomic_resolution(pair, ident, f).values, reconstruct(pair, f).values, atol=0)
    zero = SoftOperator.zeros(params, 2, 2)
    assert atomic_resolution(pair, zero, f, "frame_first") == SoftVector.null(params, 2)
    with pytest.raises(ShapeMismatchError):
        atomic_resolution(pair, SoftOperator.identity(params, 3), f)


def test_dual_pair_check_examples(params, worked_frame, identity_frame):
    assert dual_pair_check(worked_frame, canonical_dual(worked_frame).dual)
    assert dual_pair_check(identity_frame, identity_frame)
    tight2 = induced_from_vectors([unit(params, 2, 0), unit(params, 2, 0), unit(params, 2, 1), unit(params, 2, 1)])
    assert frame_bounds(tight2).is_tight and frame_bounds(tight2).lower["p"] == 2
    assert not dual_pair_check(tight2, tight2)
    with pytest.raises(ShapeMismatchError):
        dual_pair_check(tight2, worked_frame)


# -- random invariants ------------------------------------------------------

@pytest.fixture(scope="module")
def pairs():
    return [canonical_dual(RandomModel.sample(seed).frame()) for seed in range(100, 125)]


def test_dual_frame_operator_is_inverse(pairs):
    for pair in pairs:
        S_dual = frame_operator(pair.dual).values
        ref = pair.s_inverse.values
        assert np.all(np.linalg.norm(S_dual - ref, axis=(1, 2)) <= 1e-9 * np.linalg.norm(ref, axis=(1, 2)))


def test_dual_bounds_are_reciprocal(pairs):
    for pair in pairs:
        c = frame_bounds(pair.frame)
        d = frame_bounds(pair.dual)
        assert np.allclose(d.lower.values, 1 / c.upper.values, rtol=1e-8, atol=0)
        assert np.allclose(d.upper.values, 1 / c.lower.values, rtol=1e-8, atol=0)


def test_inverse_sandwich(pairs):
    rng = np.random.default_rng(20)
    for pair in pairs:
        c = frame_bounds(pair.frame)
        for _ in range(50):
            f = random_soft_vector(rng, pair.frame.params, pair.frame.ambient_dim)
            nf2 = soft_norm(f).values ** 2
            q = soft_inner_product(apply(pair.s_inverse, f), f).values.real
            assert np.all(q >= nf2 / c.upper.values * (1 - 1e-9))
            assert np.all(q <= nf2 / c.lower.values * (1 + 1e-9))


def test_dual_involution(pairs):
    for pair in pairs:
        back = canonical_dual(pair.dual).dual
        for b0, b1 in zip(pair.frame.blocks, back.blocks):
            assert np.allclose(b1.values, b0.values, rtol=1e-8, atol=1e-8 * np.abs(b0.values).max())


def test_reconstruction_orders_agree(pairs):
    rng = np.random.default_rng(21)
    for pair in pairs:
        cond = frame_bounds(pair.frame).condition.values
        f = random_soft_vector(rng, pair.frame.params, pair.frame.ambient_dim)
        a = reconstruct(pair, f, "dual_inside")
        b = reconstruct(pair, f, "dual_outside")
        nf = soft_norm(f).values
        assert np.all(soft_norm(a - b).values <= 1e-9 * nf)
        assert np.all(soft_norm(a - f).values <= 1e-8 * cond * nf)


def test_tight_dual_is_rescaled_frame(ab):
    rng = np.random.default_rng(22)
    n = 3
    # rows of a matrix with orthonormal columns form a Parseval frame
    q, _ = np.linalg.qr(rng.standard_normal((n + 3, n)) + 1j * rng.standard_normal((n + 3, n)))
    vecs = [SoftVector.constant(ab, row.conj()) for row in q]
    bound = SoftComplex.from_mapping(ab, {"a": 1.0, "b": 3.0})
    T = induced_from_vectors(vecs).scaled(bound)
    cert = frame_bounds(T)
    assert cert.is_tight
    assert np.allclose(cert.upper.values, [1.0, 9.0], rtol=1e-12)
    pair = canonical_dual(T)
    for b, d in zip(T.blocks, pair.dual.blocks):
        expected = b.values / cert.upper.values[:, None, None]
        assert np.allclose(d.values, expected, rtol=0, atol=1e-10)
