import pytest

from csperiod.precision import PrecisionContext


@pytest.fixture(scope="session")
def ctx100():
    return PrecisionContext(100)


@pytest.fixture(scope="session")
def ctx150():
    return PrecisionContext(150)


@pytest.fixture(scope="session")
def ctx300():
    return PrecisionContext(300)
