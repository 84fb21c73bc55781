import numpy as np
import pytest

from quadnum import System, parse_form

EXAMPLE_METRIC = np.array([[6.0, 3.0, 2.0], [3.0, 2.0, 2.0], [2.0, 2.0, 3.0]])


@pytest.fixture(scope="session")
def example_form():
    return parse_form(metric=EXAMPLE_METRIC)


@pytest.fixture(scope="session")
def example_system(example_form):
    return System.from_form(example_form)


@pytest.fixture(scope="session")
def sphere_system():
    return System.from_metric(np.eye(3))


@pytest.fixture(scope="session")
def lorentz_system():
    return System.from_metric(np.diag([-1.0, 1.0, 1.0]))
