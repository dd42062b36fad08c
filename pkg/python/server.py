#!/usr/bin/env python3
"""
QGR verification service - FastAPI Server
Exposes the verification suites and normal forms over HTTP.
"""

import argparse
import asyncio
import logging
import os
import sys
from contextlib import asynccontextmanager
from typing import AsyncGenerator

from dotenv import load_dotenv

# Load environment variables from .env file
# Try both the current directory and the project root
load_dotenv()
load_dotenv(os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), ".env"))

from fastapi import FastAPI, HTTPException

from engine import VerificationEngine
from models import (
    SUITES,
    VERSION,
    HealthResponse,
    NormalFormRequest,
    NormalFormResponse,
    RunConfig,
    SuiteReport,
)

logging.basicConfig(
    level=os.environ.get("QGR_LOG_LEVEL", "INFO").upper(),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler(sys.stderr)],
)
logger = logging.getLogger("qgr.server")

# Global engine instance
engine: VerificationEngine | None = None
startup_error: str | None = None


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncGenerator:
    """Manage application lifecycle."""
    global engine, startup_error
    logger.info("Starting QGR service...")
    try:
        engine = VerificationEngine()
        startup_error = None
        logger.info("VerificationEngine initialized successfully")
    except Exception as e:
        startup_error = str(e)
        logger.error(f"Failed to initialize VerificationEngine: {e}")
    yield
    logger.info("Shutting down QGR service...")


app = FastAPI(
    title="QGR",
    description="Verification suites for quantum Grassmannians",
    version=VERSION,
    lifespan=lifespan,
)


@app.get("/health", response_model=HealthResponse)
async def health_check() -> HealthResponse:
    """Health check endpoint."""
    if startup_error:
        return HealthResponse(status="error", error=startup_error)
    if not engine:
        return HealthResponse(status="initializing")
    return HealthResponse(status="healthy")


@app.get("/suites")
async def list_suites() -> dict:
    return {"suites": list(SUITES) + ["all"]}


@app.post("/run", response_model=SuiteReport)
async def run_suites(config: RunConfig) -> SuiteReport:
    """Run the requested suite; failures are reported in the body."""
    if not engine:
        raise HTTPException(status_code=503, detail=startup_error or "Engine not initialized")
    logger.info(f"[SUITE] request {config.suite} for Gr({config.m},{config.n})")
    return await asyncio.to_thread(engine.run, config)


@app.post("/nf", response_model=NormalFormResponse)
async def normal_forms(request: NormalFormRequest) -> NormalFormResponse:
    if not engine:
        raise HTTPException(status_code=503, detail=startup_error or "Engine not initialized")
    try:
        results = await asyncio.to_thread(engine.normal_forms, request.m, request.n, request.expressions)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))
    return NormalFormResponse(results=results)


def main():
    parser = argparse.ArgumentParser(description="QGR verification service")
    parser.add_argument("--port", type=int, default=8080, help="Port to run on")
    parser.add_argument("--host", type=str, default="127.0.0.1", help="Host to bind to")
    args = parser.parse_args()

    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")


if __name__ == "__main__":
    main()
