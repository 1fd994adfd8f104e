"""Shared fixtures for API tests."""

import pytest
from fastapi.testclient import TestClient

from fusion2s.api.app import app
from fusion2s.api.dependencies import get_category_service
from fusion2s.infrastructure.category_service import CategoryService


@pytest.fixture(scope="function")
def client():
    """
    Create a test client with a fresh category service.
    """
    app.dependency_overrides[get_category_service] = CategoryService

    yield TestClient(app)

    # Clear overrides after tests
    app.dependency_overrides.clear()


@pytest.fixture
def semion_spec():
    return {"group": [2], "quadratic_form": {"diag": ["1/4"]}}


@pytest.fixture
def svec_spec():
    return {"group": [2], "quadratic_form": {"diag": ["1/2"]}}
