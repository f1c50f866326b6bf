"""Pydantic request/response models mirroring the JSON wire formats."""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class GroupModel(BaseModel):
    n: int
    generators: list[list[int]]


class ConfigurationModel(BaseModel):
    n: int
    d: int
    points: list[list[float]]


class LoopModel(BaseModel):
    closed: bool
    samples: list[ConfigurationModel]


class DistanceRequest(BaseModel):
    group: GroupModel
    a: ConfigurationModel
    b: ConfigurationModel


class AssignmentDistanceRequest(BaseModel):
    a: ConfigurationModel
    b: ConfigurationModel


class DistanceResponse(BaseModel):
    value: float
    witness: list[int]


class SeparationRequest(BaseModel):
    group: GroupModel
    config: ConfigurationModel
    tol: float = 1e-9


class SeparationResponse(BaseModel):
    separation_radius: float
    evenly_covered_radius: float


class LiftRequest(BaseModel):
    group: GroupModel
    loop: LoopModel
    basepoint: ConfigurationModel | None = None
    auto_resample: bool = False
    max_subdiv: int = 8
    tol: float = 1e-9


class LiftResponse(BaseModel):
    closed: bool
    samples: list[ConfigurationModel]
    deck: list[int] | None
    subdivisions: int


class MonodromyRequest(BaseModel):
    group: GroupModel
    loop: LoopModel
    basepoint: ConfigurationModel | None = None
    auto_resample: bool = False
    max_subdiv: int = 8
    tol: float = 1e-9


class MonodromyResponse(BaseModel):
    deck: list[int]
    subdivisions: int


class ContractRequest(BaseModel):
    group: GroupModel
    loop: LoopModel
    basepoint: ConfigurationModel | None = None
    auto_resample: bool = False
    max_subdiv: int = 8
    tol: float = 1e-9


class PolylineModel(BaseModel):
    closed: bool
    vertices: list[list[float]]


class TraceEventModel(BaseModel):
    kind: Literal["perturb", "collapse", "merge"]
    removed: list[float] | None = None
    triangle: list[list[float]] | None = None
    before: list[list[float]] | None = None
    after: list[list[float]] | None = None
    vertex_count_after: int
    clearance_after: float
    polyline_after: list[list[float]]


class TraceModel(BaseModel):
    collapse_count: int
    events: list[TraceEventModel]
    final: PolylineModel


class ContractResponse(BaseModel):
    monodromy: list[int]
    collapse_count: int
    trace: TraceModel


class DemoRequest(BaseModel):
    kind: Literal["swap-loop", "rotation", "random-braid"]
    n: int = 2
    steps: int = 64
    seed: int = 0


class PlotRequest(BaseModel):
    loop: LoopModel
    projection: list[int] | Literal["pca"] = Field(default=[0, 1])
    stride: int = 1
    width: int = 640
    height: int = 480


class VietaRootsRequest(BaseModel):
    roots: list[list[float]]  # [re, im] pairs


class VietaCoeffsRequest(BaseModel):
    coeffs: list[list[float]]  # [re, im] pairs
    tol: float = 1e-12
    max_iter: int = 1000


class VietaCoeffsResponse(BaseModel):
    coeffs: list[list[float]]


class VietaRootsResponse(BaseModel):
    roots: list[list[float]]
    root_bound: float
    residuals: list[float]


class VietaRoundtripResponse(BaseModel):
    error: float


class ErrorPayload(BaseModel):
    kind: str
    detail: str
    deck: list[int] | None = None
    step_index: int | None = None
    residuals: list[float] | None = None
