import pytest

from taupoly import PrecisionConfig

import helpers


@pytest.fixture
def showcase():
    return helpers.showcase_problem()


@pytest.fixture
def bessel():
    return helpers.bessel_problem()


@pytest.fixture
def exact_poly():
    return helpers.exact_poly_problem()


@pytest.fixture(scope="session")
def fast_config():
    """Cheap analysis precision for unit tests; acceptance uses the default."""
    return PrecisionConfig(working_bits=80, grid_size=1025)
