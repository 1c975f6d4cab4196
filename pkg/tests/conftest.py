import numpy as np
import pytest

from softgframe import ParameterSet, SoftOperator, SoftVector, induced_from_vectors


@pytest.fixture
def params():
    return ParameterSet(["p", "q"])


@pytest.fixture
def ab():
    return ParameterSet(["a", "b"])


def unit(params, n, i, scale=1.0):
    v = np.zeros(n)
    v[i] = scale
    return SoftVector.constant(params, v)


@pytest.fixture
def worked_frame(params):
    """The frame induced by {e1, e1, e2} in C^2."""
    e1, e2 = unit(params, 2, 0), unit(params, 2, 1)
    return induced_from_vectors([e1, e1, e2])


@pytest.fixture
def identity_frame(params):
    return induced_from_vectors([unit(params, 2, 0), unit(params, 2, 1)])


def random_soft_vector(rng, params, n):
    shape = (len(params), n)
    return SoftVector(params, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def random_soft_operator(rng, params, m, n):
    shape = (len(params), m, n)
    return SoftOperator(params, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
