"""Category computation API endpoints"""

import logging

from fastapi import APIRouter, Depends, Query

from fusion2s.api.dependencies import get_category_service, to_http_exception
from fusion2s.infrastructure.category_service import CategoryService
from fusion2s.infrastructure.errors import Fusion2SError
from fusion2s.infrastructure.smatrix import Verdict
from fusion2s.models.documents import (
    CategorySpec,
    ClassificationDocument,
    MugerDocument,
    ReportDocument,
    STMatrixDocument,
    ValidationDocument,
)

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/categories", tags=["categories"])


@router.post("/validate", response_model=ValidationDocument, summary="Validate a category")
def validate_category(spec: CategorySpec, service: CategoryService = Depends(get_category_service)):
    """Validates the braiding data and returns the normalized document."""
    try:
        return service.validate(spec)
    except Fusion2SError as e:
        raise to_http_exception(e)


@router.post("/muger", response_model=MugerDocument, summary="Muger center")
def muger_center(spec: CategorySpec, service: CategoryService = Depends(get_category_service)):
    """Returns the Muger center and whether it is Tannakian or super-Tannakian."""
    try:
        return service.muger(spec)
    except Fusion2SError as e:
        raise to_http_exception(e)


@router.post("/classify", response_model=ClassificationDocument, summary="Classify braided module categories")
def classify(spec: CategorySpec, service: CategoryService = Depends(get_category_service)):
    """Returns the Schur classes of braided module categories."""
    try:
        return service.classify(spec)
    except Fusion2SError as e:
        raise to_http_exception(e)


@router.post("/stmatrix", response_model=STMatrixDocument, summary="2-categorical S-matrix")
def st_matrix(
    spec: CategorySpec,
    via_center: bool = Query(False, description="Compute through the Drinfeld center"),
    service: CategoryService = Depends(get_category_service),
):
    """Returns S-tilde by the direct path or through the Drinfeld center."""
    try:
        return service.st_matrix(spec, via_center=via_center)
    except Fusion2SError as e:
        raise to_http_exception(e)


@router.post("/verify", response_model=ReportDocument, summary="Certify S-tilde against the character table")
def verify(
    spec: CategorySpec,
    with_oracle: bool = Query(False, description="Also compare against the Drinfeld-center path"),
    service: CategoryService = Depends(get_category_service),
):
    """Returns the full theorem report; a FAIL verdict is still a 200 response."""
    try:
        report = service.verify(spec, with_oracle=with_oracle)
    except Fusion2SError as e:
        raise to_http_exception(e)
    if report.verdict != Verdict.PASS:
        logger.warning(f"Verification failed for {spec.model_dump_json()}")
    return report
