"""Command-line front end: a thin client over the HTTP service.

Commands build the same JSON payloads a remote caller would send and post
them to the service; without ``--server`` the ASGI app runs in-process, so
the CLI works standalone with identical behavior.  Error payload kinds map
onto the stable exit codes:

    0 success, 2 input error, 3 ambiguous lift, 4 open loop,
    5 nontrivial monodromy, 6 perturbation failure.

The environment variable CONFSPACE_TOL overrides the geometric tolerance
(default 1e-9) used for closure, fiber and freeness checks.
"""
from __future__ import annotations

import asyncio
import json
import os
import sys
from pathlib import Path

import click
import httpx

DEFAULT_TOL = 1e-9

EXIT_INPUT = 2
EXIT_AMBIGUOUS = 3
EXIT_OPEN_LOOP = 4
EXIT_MONODROMY = 5
EXIT_PERTURBATION = 6

_EXIT_BY_KIND = {
    "ParseError": EXIT_INPUT,
    "ShapeMismatch": EXIT_INPUT,
    "BadIndices": EXIT_INPUT,
    "DimensionTooLow": EXIT_INPUT,
    "ClosureExceedsCap": EXIT_INPUT,
    "TrivialGroup": EXIT_INPUT,
    "NonFreePoint": EXIT_INPUT,
    "NonFreeSample": EXIT_INPUT,
    "BasepointNotInFiber": EXIT_INPUT,
    "SampleOnCollisionSet": EXIT_INPUT,
    "AmbiguousLift": EXIT_AMBIGUOUS,
    "NotAClosedLoop": EXIT_OPEN_LOOP,
    "EndpointMismatch": EXIT_OPEN_LOOP,
    "NotNullHomotopic": EXIT_MONODROMY,
    "PerturbationFailed": EXIT_PERTURBATION,
    "DegenerateTriangle": EXIT_PERTURBATION,
}


class ServiceClient:
    """Posts payloads either to a remote server or to the in-process app."""

    def __init__(self, server: str | None = None):
        self.server = server

    def post(self, path: str, payload: dict) -> httpx.Response:
        if self.server:
            with httpx.Client(base_url=self.server, timeout=600.0) as client:
                return client.post(path, json=payload)
        return asyncio.run(self._post_inprocess(path, payload))

    async def _post_inprocess(self, path: str, payload: dict) -> httpx.Response:
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://confspace.local", timeout=None
        ) as client:
            return await client.post(path, json=payload)


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _handle_error(resp: httpx.Response) -> dict:
    """Return the parsed body on success; exit with the mapped code otherwise."""
    if resp.status_code < 400:
        if resp.headers.get("content-type", "").startswith("application/json"):
            return resp.json()
        return {}
    try:
        body = resp.json()
    except json.JSONDecodeError:
        _fail(f"service returned HTTP {resp.status_code}", 1)
    err = body.get("error")
    if err is None:
        # FastAPI request validation: name the offending fields
        details = body.get("detail", [])
        locs = ", ".join(
            ".".join(str(p) for p in item.get("loc", [])) for item in details
        ) if isinstance(details, list) else str(details)
        _fail(f"invalid request field(s): {locs}", EXIT_INPUT)
    kind = err.get("kind", "")
    code = _EXIT_BY_KIND.get(kind, 1)
    if kind == "NotNullHomotopic" and err.get("deck") is not None:
        click.echo(json.dumps(err["deck"]))
    if kind == "AmbiguousLift":
        err["detail"] += " (hint: rerun with --auto-resample)"
    _fail(f"[{kind}] {err.get('detail', '')}", code)
    raise AssertionError("unreachable")


def _read_json_file(path: str, what: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        _fail(f"cannot read {what} file '{path}': {exc}", EXIT_INPUT)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"{what} file '{path}' is not valid JSON: {exc}", EXIT_INPUT)
    raise AssertionError("unreachable")


def _dump_canonical(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_output(text: str, output: str) -> None:
    if output == "-":
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text)
        click.echo(f"wrote {output}")


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; default runs in-process.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Quotient distances, monodromy, loop contraction, demos and plots."""
    tol_env = os.environ.get("CONFSPACE_TOL")
    try:
        tol = float(tol_env) if tol_env else DEFAULT_TOL
    except ValueError:
        _fail(f"CONFSPACE_TOL is not a number: {tol_env!r}", EXIT_INPUT)
    ctx.obj = {"client": ServiceClient(server), "tol": tol}


@main.command()
@click.argument("group_file")
@click.argument("config_a")
@click.argument("config_b")
@click.pass_obj
def dist(obj: dict, group_file: str, config_a: str, config_b: str) -> None:
    """Quotient distance between two configurations under a group."""
    payload = {
        "group": _read_json_file(group_file, "group"),
        "a": _read_json_file(config_a, "configuration"),
        "b": _read_json_file(config_b, "configuration"),
    }
    body = _handle_error(obj["client"].post("/distance", payload))
    click.echo(f"{body['value']:.15g}")
    click.echo(f"witness: {body['witness']}")


@main.command()
@click.argument("group_file")
@click.argument("loop_file")
@click.option("--basepoint", default=None, help="Configuration file for the lift basepoint.")
@click.option("--auto-resample", is_flag=True, help="Subdivide on ambiguous lifting steps.")
@click.option("--max-subdiv", default=8, show_default=True, help="Max subdivision rounds.")
@click.pass_obj
def monodromy(
    obj: dict,
    group_file: str,
    loop_file: str,
    basepoint: str | None,
    auto_resample: bool,
    max_subdiv: int,
) -> None:
    """Deck permutation of a closed quotient loop."""
    payload = {
        "group": _read_json_file(group_file, "group"),
        "loop": _read_json_file(loop_file, "loop"),
        "auto_resample": auto_resample,
        "max_subdiv": max_subdiv,
        "tol": obj["tol"],
    }
    if basepoint:
        payload["basepoint"] = _read_json_file(basepoint, "basepoint")
    body = _handle_error(obj["client"].post("/monodromy", payload))
    click.echo(json.dumps(body["deck"]))


@main.command()
@click.argument("group_file")
@click.argument("loop_file")
@click.option("--trace", "trace_out", default=None, help="Write the reduction trace JSON here.")
@click.option("--basepoint", default=None, help="Configuration file for the lift basepoint.")
@click.option("--auto-resample", is_flag=True, help="Subdivide on ambiguous lifting steps.")
@click.option("--max-subdiv", default=8, show_default=True, help="Max subdivision rounds.")
@click.pass_obj
def contract(
    obj: dict,
    group_file: str,
    loop_file: str,
    trace_out: str | None,
    basepoint: str | None,
    auto_resample: bool,
    max_subdiv: int,
) -> None:
    """Certify a loop null-homotopic: lift, polygonalize, collapse triangles."""
    payload = {
        "group": _read_json_file(group_file, "group"),
        "loop": _read_json_file(loop_file, "loop"),
        "auto_resample": auto_resample,
        "max_subdiv": max_subdiv,
        "tol": obj["tol"],
    }
    if basepoint:
        payload["basepoint"] = _read_json_file(basepoint, "basepoint")
    body = _handle_error(obj["client"].post("/contract", payload))
    if trace_out:
        Path(trace_out).write_text(_dump_canonical(body["trace"]))
        click.echo(f"wrote {trace_out}")
    click.echo(f"collapses: {body['collapse_count']}")


@main.command()
@click.argument("kind", type=click.Choice(["swap-loop", "rotation", "random-braid"]))
@click.option("-n", "--points", "n", default=2, show_default=True, help="Number of points.")
@click.option("--steps", default=64, show_default=True, help="Samples along the loop.")
@click.option("--seed", default=0, show_default=True, help="RNG seed (random-braid).")
@click.option("-o", "--output", default="-", help="Output file; '-' prints to stdout.")
@click.pass_obj
def demo(obj: dict, kind: str, n: int, steps: int, seed: int, output: str) -> None:
    """Emit a closed demo loop as a loop JSON file."""
    payload = {"kind": kind, "n": n, "steps": steps, "seed": seed}
    body = _handle_error(obj["client"].post("/demo", payload))
    _write_output(_dump_canonical(body), output)


@main.command()
@click.argument("loop_file")
@click.option("--projection", default="0,1", show_default=True,
              help="Two comma-separated coordinate indices, or 'pca'.")
@click.option("--stride", default=1, show_default=True, help="Sample stride.")
@click.option("--width", default=640, show_default=True)
@click.option("--height", default=480, show_default=True)
@click.option("-o", "--output", required=True, help="Output SVG file.")
@click.pass_obj
def plot(
    obj: dict,
    loop_file: str,
    projection: str,
    stride: int,
    width: int,
    height: int,
    output: str,
) -> None:
    """Render per-point trajectories of a loop as a 2D SVG plot."""
    if projection == "pca":
        proj: object = "pca"
    else:
        try:
            proj = [int(v) for v in projection.split(",")]
        except ValueError:
            _fail(f"--projection must be 'pca' or two integers, got {projection!r}", EXIT_INPUT)
    payload = {
        "loop": _read_json_file(loop_file, "loop"),
        "projection": proj,
        "stride": stride,
        "width": width,
        "height": height,
    }
    resp = obj["client"].post("/plot", payload)
    _handle_error(resp)
    Path(output).write_text(resp.text)
    click.echo(f"wrote {output}")


@main.command()
@click.option("--roots", default=None, help="JSON array of [re, im] pairs.")
@click.option("--coeffs", default=None, help="JSON array of [re, im] pairs, highest power first.")
@click.option("--roundtrip-error", is_flag=True, help="With --roots: print the roundtrip error.")
@click.pass_obj
def vieta(obj: dict, roots: str | None, coeffs: str | None, roundtrip_error: bool) -> None:
    """Convert roots to monic coefficients and back."""
    if (roots is None) == (coeffs is None):
        _fail("pass exactly one of --roots or --coeffs", EXIT_INPUT)
    if coeffs is not None and roundtrip_error:
        _fail("--roundtrip-error needs --roots", EXIT_INPUT)

    def parse_pairs(text: str, name: str) -> list:
        try:
            value = json.loads(text)
        except json.JSONDecodeError as exc:
            _fail(f"--{name} is not valid JSON: {exc}", EXIT_INPUT)
        if not isinstance(value, list):
            _fail(f"--{name} must be a JSON array of [re, im] pairs", EXIT_INPUT)
        return value

    client = obj["client"]
    if roots is not None:
        pairs = parse_pairs(roots, "roots")
        if roundtrip_error:
            body = _handle_error(client.post("/vieta/roundtrip", {"roots": pairs}))
            click.echo(f"{body['error']:.15g}")
        else:
            body = _handle_error(client.post("/vieta/coeffs", {"roots": pairs}))
            click.echo(json.dumps(body["coeffs"]))
    else:
        pairs = parse_pairs(coeffs, "coeffs")
        body = _handle_error(client.post("/vieta/roots", {"coeffs": pairs}))
        click.echo(json.dumps(body["roots"]))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("confspace.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
