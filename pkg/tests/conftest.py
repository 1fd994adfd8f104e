"""Pytest configuration and fixtures"""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from fusion2s.infrastructure.forms import QuadraticForm, validate_form
from fusion2s.infrastructure.groups import FiniteAbelianGroup
from fusion2s.infrastructure.settings import get_settings

settings.register_profile("fusion2s", deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("fusion2s")


@pytest.fixture(autouse=True)
def fresh_settings():
    """Re-read settings around every test so monkeypatched env vars apply."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def make_group():
    """Factory for Z_n1 x ... x Z_nk."""
    def _make(*orders: int) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(tuple(orders))
    return _make


@pytest.fixture
def make_form(make_group):
    """Factory for validated forms from orders, diagonal and off-diagonal coefficients."""
    def _make(orders, diag, offdiag=None) -> QuadraticForm:
        group = make_group(*orders)
        return validate_form(
            QuadraticForm.from_coefficients(group, [Fraction(r) for r in diag], offdiag or {})
        )
    return _make


@pytest.fixture
def semion(make_form):
    """Z_2 with q(1) = i."""
    return make_form([2], ["1/4"])


@pytest.fixture
def svec(make_form):
    """Z_2 with q(1) = -1."""
    return make_form([2], ["1/2"])


@pytest.fixture
def z4_quarter(make_form):
    """Z_4 with q(x) = exp(2 pi i x^2 / 4)."""
    return make_form([4], ["1/4"])


@pytest.fixture
def trivial_z2(make_form):
    return make_form([2], ["0"])
