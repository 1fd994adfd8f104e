"""FastAPI dependency injection"""

from functools import lru_cache

from fastapi import HTTPException

from fusion2s.infrastructure.category_service import CategoryService
from fusion2s.infrastructure.errors import Fusion2SError

# exit code -> HTTP status
_STATUS_BY_EXIT_CODE = {2: 400, 3: 422, 1: 500}


@lru_cache()
def get_category_service() -> CategoryService:
    """Get category service instance"""
    return CategoryService()


def to_http_exception(error: Fusion2SError) -> HTTPException:
    """Map a fusion2s error to the HTTP status matching its exit code"""
    status = _STATUS_BY_EXIT_CODE.get(error.exit_code, 500)
    return HTTPException(status_code=status, detail=f"{type(error).__name__}: {error}")
