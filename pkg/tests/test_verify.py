import numpy as np
import pytest

from softgframe import ParameterSet, SoftGFrame, SoftOperator, frame_bounds, frame_operator
from softgframe.io import dumps
from softgframe.verify import (
    PROPERTIES,
    RandomModel,
    oracle_frame_bounds,
    oracle_frame_operator,
    run_suite,
    suite_for_frame,
)


def test_oracle_identity(params):
    F = SoftGFrame([SoftOperator.identity(params, 3)])
    assert np.array_equal(oracle_frame_operator(F).values, np.broadcast_to(np.eye(3), (2, 3, 3)))


def test_oracle_worked_example(worked_frame):
    assert np.array_equal(oracle_frame_operator(worked_frame)["p"], np.diag([2.0, 1.0]))


def test_oracle_seed_42_instance():
    model = RandomModel(seed=42, ambient_dim=3, block_dims=(1, 2, 1, 2), params=ParameterSet(["a", "b"]))
    F = model.frame()
    assert len(F) == 4
    assert np.allclose(frame_operator(F).values, oracle_frame_operator(F).values, rtol=0, atol=1e-12)


def test_model_is_deterministic():
    a = RandomModel.sample(7)
    assert a == RandomModel.sample(7)
    assert a.frame() == a.frame()


def test_sampled_models_respect_limits():
    for seed in range(50):
        m = RandomModel.sample(seed, max_dim=4, max_blocks=5, max_params=3)
        assert 1 <= m.ambient_dim <= 4 and 1 <= len(m.block_dims) <= 5 and 1 <= len(m.params) <= 3
        assert sum(m.block_dims) >= m.ambient_dim


def test_property_ids_are_unique_and_described():
    ids = [p.property_id for p in PROPERTIES]
    assert len(ids) == len(set(ids))
    assert all(p.summary for p in PROPERTIES)
    assert all(p.tolerance >= 0 for p in PROPERTIES)


def test_full_rank_model_passes_everything():
    model = RandomModel(seed=1, ambient_dim=4, block_dims=(2, 1, 3), params=ParameterSet(["x", "y", "z"]))
    reports = run_suite(model, trials=50)
    assert [r.property_id for r in reports] == [p.property_id for p in PROPERTIES]
    failed = [r for r in reports if not r.passed]
    assert not failed, failed


def test_rank_deficient_model_reports_and_skips():
    model = RandomModel(seed=2, ambient_dim=3, block_dims=(2, 2), params=ParameterSet(["x", "y"]),
                        rank_deficient=True)
    assert not frame_bounds(model.frame()).is_frame
    by_id = {r.property_id: r for r in run_suite(model, trials=10)}
    pred = by_id["frame_predicate"]
    assert not pred.passed and not pred.skipped and pred.worst_violation > 0
    sandwich = by_id["frame_sandwich"]
    assert sandwich.skipped and not sandwich.passed and "not a frame" in sandwich.reason
    assert by_id["frame_energy_identity"].passed and by_id["adjoint_pairing"].passed


def test_reports_are_byte_identical_for_same_seed():
    model = RandomModel.sample(11)
    first = dumps([r.to_json() for r in run_suite(model, trials=20)])
    second = dumps([r.to_json() for r in run_suite(model, trials=20)])
    assert first == second


def test_suite_rejects_zero_trials(worked_frame):
    with pytest.raises(ValueError):
        suite_for_frame(worked_frame, trials=0)


def test_violation_matches_tolerance_semantics():
    for r in run_suite(RandomModel.sample(12), trials=5):
        if not r.skipped:
            assert r.passed == (r.worst_violation <= r.tolerance)


def test_oracle_equivalence_small_instances():
    for seed in range(200):
        F = RandomModel.sample(seed, max_dim=4, max_blocks=5, max_params=3).frame()
        assert np.max(np.abs(frame_operator(F).values - oracle_frame_operator(F).values)) <= 1e-12
        cert = frame_bounds(F)
        lo, hi = oracle_frame_bounds(F)
        assert np.allclose(cert.upper.values, hi, rtol=1e-10, atol=0)
        assert np.all(np.abs(cert.lower.values - lo) <= 1e-10 * hi)
