"""FastAPI application for fusion2s"""

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from fusion2s import __version__
from fusion2s.api import categories, groups

app = FastAPI(title="fusion2s API", version=__version__)


@app.exception_handler(RequestValidationError)
async def request_validation_handler(request: Request, exc: RequestValidationError):
    """Malformed category documents are input errors (400), like exit code 2 on the CLI"""
    return JSONResponse(status_code=400, content={"detail": f"InputError: {exc}"})


@app.get("/health", status_code=200)
async def health_check():
    """Health check endpoint"""
    return {"status": "ok"}


# Register routers
app.include_router(categories.router)
app.include_router(groups.router)
