"""Group API endpoints"""

from fastapi import APIRouter, Depends, Query

from fusion2s.api.dependencies import get_category_service, to_http_exception
from fusion2s.infrastructure.category_service import CategoryService
from fusion2s.infrastructure.errors import Fusion2SError
from fusion2s.infrastructure.groups import parse_orders
from fusion2s.models.documents import CharacterTableDocument

router = APIRouter(prefix="/groups", tags=["groups"])


@router.get("/character-table", response_model=CharacterTableDocument, summary="Character table")
def character_table(
    orders: str = Query(..., description="Cyclic factor orders separated by commas or x, e.g. 2,2 or 2x2"),
    service: CategoryService = Depends(get_category_service),
):
    """Returns the character table of Z_n1 x ... x Z_nk."""
    try:
        return service.character_table(parse_orders(orders))
    except Fusion2SError as e:
        raise to_http_exception(e)
