"""HTTP facade: load a dataset at startup, answer skyline queries, list malls."""

from __future__ import annotations

import os
import time
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, field_validator

from .engine import run_query
from .geo import DistanceProvider, GreatCircleProvider, RoutingApiProvider, build_distance_matrix
from .ingest import Dataset, parse_mall_csv
from .model import FACILITY_COUNT, GeoPoint, QuerySpec

DATA_ENV = "PARETO_MALL_DATA"
PORT_ENV = "PARETO_MALL_PORT"
DEFAULT_PORT = 8080


class OriginBody(BaseModel):
    lat: float = Field(ge=-90.0, le=90.0)
    lng: float = Field(ge=-180.0, le=180.0)


class QueryRequestBody(BaseModel):
    origin: OriginBody
    selected_facilities: list[int] = []
    include_food_court: bool = False
    algorithm: Literal["oracle", "bnl", "sfs", "dnc"] = "sfs"
    limit: int = Field(default=10, ge=1, le=100)

    @field_validator("selected_facilities")
    @classmethod
    def _check_indices(cls, value: list[int]) -> list[int]:
        for index in value:
            if not 0 <= index < FACILITY_COUNT:
                raise ValueError(f"facility index {index} outside [0, {FACILITY_COUNT - 1}]")
        return value


class ResultEntryBody(BaseModel):
    rank: int
    code: str
    name: str
    lat: float
    lng: float
    distance_km: float
    store_number: int
    parking_space: int
    food_court: bool
    income: int
    population: int
    facility_counts: dict[int, int]
    probability: float


class QueryResponseBody(BaseModel):
    entries: list[ResultEntryBody]
    algorithm: str
    divergence: bool
    elapsed_ms: float


class MallSummaryBody(BaseModel):
    code: str
    name: str
    lat: float
    lng: float


def _load_dataset_from_env() -> Dataset | None:
    path = os.environ.get(DATA_ENV)
    if not path:
        return None
    text = Path(path).read_text(encoding="utf-8")
    return parse_mall_csv(text, source_path=path)


def create_app(
    dataset: Dataset | None = None,
    provider: DistanceProvider | None = None,
) -> FastAPI:
    """Build the service; without an explicit dataset, PARETO_MALL_DATA is
    consulted at construction time."""
    app = FastAPI(title="pareto-mall", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    if dataset is None:
        dataset = _load_dataset_from_env()
    if provider is None:
        provider = RoutingApiProvider.from_env() or GreatCircleProvider()
    app.state.dataset = dataset
    app.state.provider = provider

    @app.exception_handler(RequestValidationError)
    async def _validation_to_400(request: Request, exc: RequestValidationError) -> JSONResponse:
        # The API contract promises 400 with field diagnostics, not 422.
        details = [
            {"field": ".".join(str(part) for part in err.get("loc", ())), "message": err.get("msg", "")}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": details})

    def _require_dataset() -> Dataset | JSONResponse:
        if app.state.dataset is None:
            return JSONResponse(status_code=503, content={"detail": "dataset not loaded"})
        return app.state.dataset

    @app.get("/healthz")
    async def healthz() -> JSONResponse:
        if app.state.dataset is None:
            return JSONResponse(status_code=503, content={"status": "no dataset"})
        return JSONResponse(content={"status": "ok", "records": len(app.state.dataset)})

    @app.get("/api/malls", response_model=list[MallSummaryBody])
    async def list_malls():
        data = _require_dataset()
        if isinstance(data, JSONResponse):
            return data
        return [
            MallSummaryBody(
                code=r.code, name=r.name, lat=r.location.lat, lng=r.location.lng
            )
            for r in sorted(data.records, key=lambda r: r.code)
        ]

    @app.post("/api/skyline", response_model=QueryResponseBody)
    async def skyline(body: QueryRequestBody):
        data = _require_dataset()
        if isinstance(data, JSONResponse):
            return data
        started = time.perf_counter()
        origin = GeoPoint(body.origin.lat, body.origin.lng)
        # Distance ranks the results; dominance runs on the preference
        # dimensions, so a nearby-but-worse mall cannot crowd out better ones.
        spec = QuerySpec.with_defaults(
            origin=origin,
            selected_facilities=body.selected_facilities,
            include_food_court=body.include_food_court,
            limit=body.limit,
            include_distance=False,
        )
        matrix = build_distance_matrix(origin, data, provider=app.state.provider)
        result, divergence = run_query(data, spec, matrix, algorithm=body.algorithm)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        entries = [
            ResultEntryBody(
                rank=entry.rank,
                code=entry.code,
                name=entry.record.name,
                lat=entry.record.location.lat,
                lng=entry.record.location.lng,
                distance_km=entry.distance_km,
                store_number=entry.record.store_number,
                parking_space=entry.record.parking_space,
                food_court=entry.record.food_court,
                income=entry.record.avg_household_income,
                population=entry.record.population,
                facility_counts={
                    index: entry.record.facilities[index] for index in spec.selected_facilities
                },
                probability=entry.probability,
            )
            for entry in result.entries
        ]
        return QueryResponseBody(
            entries=entries,
            algorithm=body.algorithm,
            divergence=divergence,
            elapsed_ms=elapsed_ms,
        )

    return app


def serve(
    dataset: Dataset | None = None,
    host: str = "127.0.0.1",
    port: int | None = None,
) -> None:
    """Run the service under uvicorn (blocking)."""
    import uvicorn

    if port is None:
        port = int(os.environ.get(PORT_ENV, DEFAULT_PORT))
    uvicorn.run(create_app(dataset=dataset), host=host, port=port)
