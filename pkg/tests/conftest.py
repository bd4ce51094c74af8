# tests/conftest.py
import pytest

from hardyhermite.hardy_family import HardyParams, extremal_z, real_gaussian
from hardyhermite.numerics.quadrature import gauss_hermite_rule


@pytest.fixture(scope="session")
def hp_quarter() -> HardyParams:
    """t = 0.25: a = tanh 0.5, mu = e^{-1}."""
    return HardyParams.from_t(0.25)


@pytest.fixture(scope="session")
def chirped():
    return extremal_z(0.25)


@pytest.fixture(scope="session")
def real_gauss():
    return real_gaussian(0.25)


@pytest.fixture(scope="session")
def rule200():
    return gauss_hermite_rule(200)


@pytest.fixture
def no_env(monkeypatch):
    monkeypatch.delenv("HARDYHERMITE_PROFILE", raising=False)
    monkeypatch.delenv("HARDYHERMITE_JOBS", raising=False)
