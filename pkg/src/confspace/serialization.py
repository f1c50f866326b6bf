"""JSON wire formats shared by the CLI, the service and files on disk.

Errors raised here are ParseError and always name the offending field.
Floats round-trip exactly: Python's json emits the shortest representation
that parses back to the same double.
"""
from __future__ import annotations

import json
from typing import Any

import numpy as np

from .covering import LiftResult, PathSamples
from .errors import ParseError
from .homotopy import Polyline, ReductionTrace, TraceEvent
from .permgroup import Configuration, PermGroup, Permutation, generate_group


def _require(obj: dict, field: str, kind: type, context: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(f"{context}: expected a JSON object")
    if field not in obj:
        raise ParseError(f"{context}: missing field '{field}'")
    value = obj[field]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ParseError(f"{context}: field '{field}' must be a number")
        return float(value)
    if not isinstance(value, kind):
        raise ParseError(f"{context}: field '{field}' must be {kind.__name__}")
    return value


def group_from_json(obj: dict, cap: int | None = None) -> PermGroup:
    n = _require(obj, "n", int, "group")
    gens_raw = _require(obj, "generators", list, "group")
    gens = []
    for k, g in enumerate(gens_raw):
        if not isinstance(g, list) or not all(isinstance(i, int) for i in g):
            raise ParseError(f"group: field 'generators[{k}]' must be a list of integers")
        try:
            gens.append(Permutation(tuple(g)))
        except Exception as exc:
            raise ParseError(f"group: field 'generators[{k}]' is not a permutation: {exc}")
    kwargs = {"cap": cap} if cap is not None else {}
    return generate_group(n, gens, **kwargs)


def group_to_json(group: PermGroup) -> dict:
    return {"n": group.n, "generators": [list(g.map) for g in group.generators]}


def configuration_from_json(obj: dict, context: str = "configuration") -> Configuration:
    n = _require(obj, "n", int, context)
    d = _require(obj, "d", int, context)
    points = _require(obj, "points", list, context)
    if len(points) != n:
        raise ParseError(f"{context}: field 'points' has {len(points)} rows, field 'n' says {n}")
    for k, p in enumerate(points):
        if not isinstance(p, list) or len(p) != d:
            raise ParseError(f"{context}: field 'points[{k}]' must be a list of {d} numbers")
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p):
            raise ParseError(f"{context}: field 'points[{k}]' must contain numbers")
    return Configuration(np.array(points, dtype=float))


def configuration_to_json(config: Configuration) -> dict:
    return {"n": config.n, "d": config.d, "points": [list(row) for row in config.points.tolist()]}


def path_from_json(obj: dict) -> PathSamples:
    closed = _require(obj, "closed", bool, "loop")
    samples_raw = _require(obj, "samples", list, "loop")
    samples = tuple(
        configuration_from_json(s, context=f"loop: samples[{k}]") for k, s in enumerate(samples_raw)
    )
    if len(samples) < 2:
        raise ParseError("loop: field 'samples' needs at least 2 entries")
    return PathSamples(samples=samples, closed=closed)


def path_to_json(path: PathSamples) -> dict:
    return {
        "closed": path.closed,
        "samples": [configuration_to_json(s) for s in path.samples],
    }


def lift_result_to_json(result: LiftResult) -> dict:
    out = path_to_json(result.lift)
    out["deck"] = list(result.deck.map) if result.deck is not None else None
    return out


def polyline_to_json(poly: Polyline) -> dict:
    return {"closed": poly.closed, "vertices": [list(v) for v in poly.vertices.tolist()]}


def _event_to_json(event: TraceEvent) -> dict:
    def pts(arr: np.ndarray | None):
        return None if arr is None else [list(r) for r in np.atleast_2d(arr).tolist()]

    return {
        "kind": event.kind,
        "removed": None if event.removed is None else list(np.asarray(event.removed).tolist()),
        "triangle": pts(event.triangle),
        "before": pts(event.before),
        "after": pts(event.after),
        "vertex_count_after": event.vertex_count_after,
        "clearance_after": event.clearance_after,
        "polyline_after": pts(event.polyline_after),
    }


def trace_to_json(trace: ReductionTrace) -> dict:
    return {
        "collapse_count": trace.collapse_count,
        "events": [_event_to_json(e) for e in trace.events],
        "final": polyline_to_json(trace.final),
    }


def dumps_canonical(obj: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def loads(text: str, context: str = "input") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{context}: invalid JSON ({exc})")
