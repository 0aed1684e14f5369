import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request, status
from fastapi.responses import JSONResponse

from lambda_pt import __version__
from lambda_pt.api.v1 import evolve, spectrum, sweep
from lambda_pt.core.config import settings
from lambda_pt.core.exceptions import (
    ConfigError,
    DegenerateCoupling,
    ExceptionalPointError,
    InvalidParams,
    StepOverflow,
)

logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s"
)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Logs the numerical settings the service runs with, so results can be
    traced back to the tolerances in effect.
    """
    logging.info(
        f"Application startup: EP_TOL={settings.EP_TOL}, "
        f"OVERFLOW_LIMIT={settings.OVERFLOW_LIMIT}, THREADS={settings.THREADS}"
    )
    yield
    logging.info("Application shutdown.")


app = FastAPI(
    lifespan=lifespan,
    title="Lambda-PT API",
    version=__version__,
    description="Spectrum, metric and dynamics of the PT-symmetric three-level Lambda atom.",
)


@app.exception_handler(ExceptionalPointError)
async def exceptional_point_handler(request: Request, exc: ExceptionalPointError):
    logging.warning(f"Exceptional point for request {request.url}: {exc}")
    return JSONResponse(status_code=status.HTTP_409_CONFLICT, content={"detail": str(exc)})


@app.exception_handler(InvalidParams)
@app.exception_handler(DegenerateCoupling)
@app.exception_handler(StepOverflow)
@app.exception_handler(ConfigError)
async def unprocessable_handler(request: Request, exc: Exception):
    logging.warning(f"Rejected request {request.url}: {exc}")
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, content={"detail": str(exc)}
    )


@app.exception_handler(Exception)
async def generic_exception_handler(request: Request, exc: Exception):
    """
    Catches all unhandled exceptions and returns a generic 500 error.
    """
    logging.error(
        f"Unhandled exception for request {request.url}: {exc}", exc_info=True
    )
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={"detail": "An internal server error occurred."},
    )


app.include_router(spectrum.router, prefix="/api/v1/spectrum", tags=["spectrum"])
app.include_router(evolve.router, prefix="/api/v1/evolve", tags=["evolve"])
app.include_router(sweep.router, prefix="/api/v1/sweep", tags=["sweep"])


@app.get("/", tags=["Root"])
def read_root():
    """
    Root endpoint that provides a welcome message.

    Useful for simple health checks to confirm the API is running.
    """
    return {"message": "Welcome to the Lambda-PT API"}
