"""FastAPI service exposing the library's operations as JSON endpoints.

Domain errors map to HTTP 422 with a structured payload whose ``kind`` is
the exception class name; clients (the CLI included) key their behavior on
it rather than parsing messages.
"""
from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse

from .. import serialization as ser
from ..covering import PathSamples, evenly_covered_radius
from ..demo import make_demo_loop
from ..errors import (
    AmbiguousLift,
    ConfspaceError,
    NoConvergence,
    NotNullHomotopic,
)
from ..metric import quotient_distance, quotient_distance_assignment, separation_radius
from ..plotting import PlotSpec, render_loop_svg
from ..vieta import (
    coeffs_to_roots,
    evaluation_residuals,
    root_bound,
    roots_to_coeffs,
    vieta_roundtrip_error,
)
from ..workflows import contract_quotient_loop, lift_with_resampling, monodromy_with_resampling
from . import models as m

app = FastAPI(
    title="confspace service",
    description="Quotient metrics, path lifting, monodromy, loop contraction "
    "and root/coefficient duality for configuration spaces of labeled points.",
)


@app.exception_handler(ConfspaceError)
async def _domain_error(_, exc: ConfspaceError) -> JSONResponse:
    payload = {"kind": type(exc).__name__, "detail": str(exc)}
    if isinstance(exc, NotNullHomotopic) and exc.deck is not None:
        payload["deck"] = list(exc.deck)
    if isinstance(exc, AmbiguousLift) and exc.step_index is not None:
        payload["step_index"] = exc.step_index
    if isinstance(exc, NoConvergence):
        payload["residuals"] = exc.residuals
    return JSONResponse(status_code=422, content={"error": payload})


@app.exception_handler(ValueError)
async def _value_error(_, exc: ValueError) -> JSONResponse:
    return JSONResponse(
        status_code=422, content={"error": {"kind": "ParseError", "detail": str(exc)}}
    )


def _group(model: m.GroupModel):
    return ser.group_from_json(model.model_dump())


def _config(model: m.ConfigurationModel):
    return ser.configuration_from_json(model.model_dump())


def _loop(model: m.LoopModel) -> PathSamples:
    return ser.path_from_json(model.model_dump())


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/distance", response_model=m.DistanceResponse)
def distance(req: m.DistanceRequest) -> m.DistanceResponse:
    result = quotient_distance(_group(req.group), _config(req.a), _config(req.b))
    return m.DistanceResponse(value=result.value, witness=list(result.witness.map))


@app.post("/distance/assignment", response_model=m.DistanceResponse)
def distance_assignment(req: m.AssignmentDistanceRequest) -> m.DistanceResponse:
    result = quotient_distance_assignment(_config(req.a), _config(req.b))
    return m.DistanceResponse(value=result.value, witness=list(result.witness.map))


@app.post("/separation", response_model=m.SeparationResponse)
def separation(req: m.SeparationRequest) -> m.SeparationResponse:
    group, config = _group(req.group), _config(req.config)
    eps = separation_radius(group, config, tol=req.tol)
    return m.SeparationResponse(
        separation_radius=eps,
        evenly_covered_radius=evenly_covered_radius(group, config, tol=req.tol),
    )


@app.post("/lift", response_model=m.LiftResponse)
def lift(req: m.LiftRequest) -> m.LiftResponse:
    group, loop = _group(req.group), _loop(req.loop)
    base = _config(req.basepoint) if req.basepoint is not None else None
    result, rounds = lift_with_resampling(
        group,
        loop,
        base,
        auto_resample=req.auto_resample,
        max_subdiv=req.max_subdiv,
        tol=req.tol,
    )
    payload = ser.lift_result_to_json(result)
    payload["subdivisions"] = rounds
    return m.LiftResponse(**payload)


@app.post("/monodromy", response_model=m.MonodromyResponse)
def monodromy_endpoint(req: m.MonodromyRequest) -> m.MonodromyResponse:
    group, loop = _group(req.group), _loop(req.loop)
    base = _config(req.basepoint) if req.basepoint is not None else None
    deck, rounds = monodromy_with_resampling(
        group,
        loop,
        base,
        auto_resample=req.auto_resample,
        max_subdiv=req.max_subdiv,
        tol=req.tol,
    )
    return m.MonodromyResponse(deck=list(deck.map), subdivisions=rounds)


@app.post("/contract", response_model=m.ContractResponse)
def contract(req: m.ContractRequest) -> m.ContractResponse:
    group, loop = _group(req.group), _loop(req.loop)
    base = _config(req.basepoint) if req.basepoint is not None else None
    deck, trace = contract_quotient_loop(
        group,
        loop,
        base,
        auto_resample=req.auto_resample,
        max_subdiv=req.max_subdiv,
        tol=req.tol,
    )
    return m.ContractResponse(
        monodromy=list(deck.map),
        collapse_count=trace.collapse_count,
        trace=m.TraceModel(**ser.trace_to_json(trace)),
    )


@app.post("/demo", response_model=m.LoopModel)
def demo(req: m.DemoRequest) -> m.LoopModel:
    loop = make_demo_loop(req.kind, n=req.n, steps=req.steps, seed=req.seed)
    return m.LoopModel(**ser.path_to_json(loop))


@app.post("/plot")
def plot(req: m.PlotRequest) -> Response:
    loop = _loop(req.loop)
    projection = req.projection if req.projection == "pca" else tuple(req.projection)
    spec = PlotSpec(
        projection=projection, stride=req.stride, width=req.width, height=req.height
    )
    svg = render_loop_svg(loop, spec)
    return Response(content=svg, media_type="image/svg+xml")


def _pairs_to_complex(pairs: list[list[float]], field: str) -> np.ndarray:
    for k, p in enumerate(pairs):
        if len(p) != 2:
            raise ValueError(f"vieta: field '{field}[{k}]' must be an [re, im] pair")
    arr = np.asarray(pairs, dtype=float)
    if arr.size == 0:
        return np.array([], dtype=complex)
    return arr[:, 0] + 1j * arr[:, 1]


def _complex_to_pairs(values: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in values]


@app.post("/vieta/coeffs", response_model=m.VietaCoeffsResponse)
def vieta_coeffs(req: m.VietaRootsRequest) -> m.VietaCoeffsResponse:
    coeffs = roots_to_coeffs(_pairs_to_complex(req.roots, "roots"))
    return m.VietaCoeffsResponse(coeffs=_complex_to_pairs(coeffs))


@app.post("/vieta/roots", response_model=m.VietaRootsResponse)
def vieta_roots(req: m.VietaCoeffsRequest) -> m.VietaRootsResponse:
    coeffs = _pairs_to_complex(req.coeffs, "coeffs")
    roots = coeffs_to_roots(coeffs, tol=req.tol, max_iter=req.max_iter)
    return m.VietaRootsResponse(
        roots=_complex_to_pairs(roots),
        root_bound=root_bound(coeffs),
        residuals=[float(r) for r in evaluation_residuals(coeffs, roots)],
    )


@app.post("/vieta/roundtrip", response_model=m.VietaRoundtripResponse)
def vieta_roundtrip(req: m.VietaRootsRequest) -> m.VietaRoundtripResponse:
    return m.VietaRoundtripResponse(
        error=vieta_roundtrip_error(_pairs_to_complex(req.roots, "roots"))
    )
