import numpy as np
import pytest

from softgframe import (
    NotHermitianError,
    NotPositiveDefiniteError,
    ParameterSet,
    ShapeMismatchError,
    SoftComplex,
    SoftOperator,
    SoftReal,
    SoftVector,
    adjoint,
    apply,
    compose,
    hermitian_eig_extremes,
    invert_hpd,
    operator_norm_upper,
    soft_inner_product,
    soft_norm,
    solve_hpd,
)
from softgframe.operators import add, scale

from conftest import random_soft_operator, random_soft_vector


def test_apply_identity_zero_and_swap(params):
    x = SoftVector.constant(params, [1, 2])
    assert apply(SoftOperator.identity(params, 2), x) == x
    assert apply(SoftOperator.zeros(params, 3, 2), x) == SoftVector.null(params, 3)
    swap = SoftOperator.constant(params, [[0, 1], [1, 0]])
    assert apply(swap, x) == SoftVector.constant(params, [2, 1])


def test_apply_shape_mismatch(params):
    with pytest.raises(ShapeMismatchError):
        apply(SoftOperator.identity(params, 3), SoftVector.null(params, 2))


def test_adjoint_examples(params):
    rng = np.random.default_rng(0)
    op = random_soft_operator(rng, params, 3, 2)
    assert adjoint(adjoint(op)) == op
    diag = SoftOperator.constant(params, np.diag([2.0, -1.0]))
    assert adjoint(diag) == diag
    row = SoftOperator.constant(params, [[0, 1j]])
    assert adjoint(row) == SoftOperator.constant(params, [[0], [-1j]])


def test_adjoint_pairing_random():
    A = ParameterSet(["a", "b", "c"])
    rng = np.random.default_rng(1)
    for _ in range(50):
        op = random_soft_operator(rng, A, 4, 3)
        x, y = random_soft_vector(rng, A, 3), random_soft_vector(rng, A, 4)
        lhs = soft_inner_product(apply(op, x), y).values
        rhs = soft_inner_product(x, apply(adjoint(op), y)).values
        bound = 1e-10 * (1 + soft_norm(x).values * soft_norm(y).values * operator_norm_upper(op).values)
        assert np.all(np.abs(lhs - rhs) <= bound)


def test_compose_identity_and_scale(params):
    rng = np.random.default_rng(2)
    op = random_soft_operator(rng, params, 2, 3)
    assert compose(op, SoftOperator.identity(params, 3)) == op
    alpha = SoftComplex.from_mapping(params, {"p": 2, "q": 1j})
    x = random_soft_vector(rng, params, 3)
    assert np.allclose(apply(scale(op, alpha), x).values, (apply(op, x) * alpha).values, atol=1e-14)
    assert add(op, scale(op, -1)) == SoftOperator.zeros(params, 2, 3)
    with pytest.raises(ShapeMismatchError):
        compose(op, op)


def test_gram_is_hermitian_psd(params):
    rng = np.random.default_rng(3)
    a = random_soft_operator(rng, params, 2, 4)
    gram = compose(adjoint(a), a)
    assert np.allclose(gram.values, adjoint(gram).values, atol=1e-14)
    assert np.all(np.linalg.eigvalsh(gram.values) >= -1e-12)


def test_eig_extremes(params):
    rep = hermitian_eig_extremes(SoftOperator.identity(params, 3))
    assert rep.min_eig.as_dict() == rep.max_eig.as_dict() == {"p": 1.0, "q": 1.0}
    rep = hermitian_eig_extremes(SoftOperator.constant(params, np.diag([2.0, 1.0])))
    assert rep.min_eig.as_dict() == {"p": 1.0, "q": 1.0}
    assert rep.max_eig.as_dict() == {"p": 2.0, "q": 2.0}
    assert rep.condition.as_dict() == {"p": 2.0, "q": 2.0}


def test_eig_extremes_scaled_identity_is_exact(ab):
    op = SoftOperator(ab, np.stack([np.eye(3), 4 * np.eye(3)]))
    rep = hermitian_eig_extremes(op)
    assert rep.min_eig.as_dict() == rep.max_eig.as_dict() == {"a": 1.0, "b": 4.0}
    for alpha in (0.0, 0.3, 7.25, 1e5):
        rep = hermitian_eig_extremes(SoftOperator.constant(ab, alpha * np.eye(4)))
        assert np.all(rep.min_eig.values == alpha) and np.all(rep.max_eig.values == alpha)


def test_eig_extremes_rejects_non_hermitian(params):
    with pytest.raises(NotHermitianError, match="'p'"):
        hermitian_eig_extremes(SoftOperator.constant(params, [[1, 1], [0, 1]]))
    with pytest.raises(NotHermitianError):
        hermitian_eig_extremes(SoftOperator.constant(params, [[1, 1, 0]]))


def test_solve_and_invert(params):
    d = SoftOperator.constant(params, np.diag([2.0, 1.0]))
    x = solve_hpd(d, SoftVector.constant(params, [2, 3]))
    assert np.allclose(x.values, [[1, 3], [1, 3]], rtol=0, atol=1e-15)
    assert np.allclose(invert_hpd(d).values, np.diag([0.5, 1.0]), rtol=0, atol=1e-15)
    rhs = SoftVector.constant(params, [1j, -2])
    assert solve_hpd(SoftOperator.identity(params, 2), rhs) == rhs


def test_solve_residual_and_inverse_random():
    A = ParameterSet(["a", "b", "c"])
    rng = np.random.default_rng(4)
    for _ in range(20):
        a = random_soft_operator(rng, A, 7, 5)
        hpd = compose(adjoint(a), a)
        rhs = random_soft_vector(rng, A, 5)
        x = solve_hpd(hpd, rhs)
        resid = soft_norm(apply(hpd, x) - rhs).values / soft_norm(rhs).values
        assert np.all(resid <= 1e-10)
        eye = compose(invert_hpd(hpd), hpd).values
        assert np.allclose(eye, np.eye(5), rtol=0, atol=1e-9)


def test_not_positive_definite_names_parameter(ab):
    op = SoftOperator(ab, np.stack([np.eye(2), np.diag([1.0, 0.0])]))
    with pytest.raises(NotPositiveDefiniteError) as info:
        invert_hpd(op)
    assert info.value.label == "b"
    with pytest.raises(NotPositiveDefiniteError):
        solve_hpd(SoftOperator.constant(ab, -np.eye(2)), SoftVector.constant(ab, [1, 1]))


def test_operator_norm(params):
    assert operator_norm_upper(SoftOperator.identity(params, 3)).as_dict() == {"p": 1.0, "q": 1.0}
    assert np.allclose(operator_norm_upper(SoftOperator.constant(params, np.diag([3.0, 4.0]))).values, 4.0)
    assert np.all(operator_norm_upper(SoftOperator.zeros(params, 2, 2)).values == 0)


def test_operator_norm_submultiplicative():
    A = ParameterSet(["a", "b"])
    rng = np.random.default_rng(5)
    for _ in range(50):
        a, b = random_soft_operator(rng, A, 3, 4), random_soft_operator(rng, A, 4, 2)
        lhs = operator_norm_upper(compose(a, b)).values
        rhs = operator_norm_upper(a).values * operator_norm_upper(b).values
        assert np.all(lhs <= rhs + 1e-10)


def test_scale_by_soft_real(ab):
    alpha = SoftReal.from_mapping(ab, {"a": 1.0, "b": 2.0})
    op = scale(SoftOperator.identity(ab, 2), alpha)
    assert np.array_equal(op["b"], 2 * np.eye(2))
