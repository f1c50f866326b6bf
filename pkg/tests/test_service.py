import math

import pytest
from fastapi.testclient import TestClient

from confspace import serialization as ser
from confspace.demo import random_braid_loop, rotation_loop, swap_loop
from confspace.service.app import app

client = TestClient(app, raise_server_exceptions=True)

GROUP2 = {"n": 2, "generators": [[1, 0]]}
CONF_A = {"n": 2, "d": 3, "points": [[0, 0, 0], [1, 0, 0]]}
CONF_B = {"n": 2, "d": 3, "points": [[1, 0, 0], [3, 0, 0]]}


def test_health():
    assert client.get("/health").json() == {"status": "ok"}


def test_distance_endpoint():
    resp = client.post("/distance", json={"group": GROUP2, "a": CONF_A, "b": CONF_B})
    assert resp.status_code == 200
    body = resp.json()
    assert body["value"] == pytest.approx(math.sqrt(5), abs=1e-14)
    assert body["witness"] == [0, 1]


def test_assignment_endpoint_matches_group_minimum():
    resp = client.post("/distance/assignment", json={"a": CONF_A, "b": CONF_B})
    assert resp.json()["value"] == pytest.approx(math.sqrt(5), abs=1e-14)


def test_separation_endpoint():
    resp = client.post("/separation", json={"group": GROUP2, "config": CONF_A})
    body = resp.json()
    assert body["separation_radius"] == pytest.approx(math.sqrt(2), abs=1e-14)
    assert body["evenly_covered_radius"] == pytest.approx(math.sqrt(2) / 5, abs=1e-14)


def test_shape_mismatch_maps_to_error_payload():
    bad = {"n": 2, "d": 3, "points": [[0, 0, 0], [1, 0]]}
    resp = client.post("/distance", json={"group": GROUP2, "a": CONF_A, "b": bad})
    assert resp.status_code == 422
    err = resp.json()["error"]
    assert err["kind"] == "ParseError"
    assert "points[1]" in err["detail"]


def test_lift_endpoint_returns_deck_and_samples():
    loop = ser.path_to_json(swap_loop(n=2, steps=32))
    resp = client.post("/lift", json={"group": GROUP2, "loop": loop})
    body = resp.json()
    assert body["deck"] == [1, 0]
    assert body["closed"] is True
    assert len(body["samples"]) == 33
    assert body["subdivisions"] == 0


def test_monodromy_endpoint_with_resampling():
    loop = swap_loop(n=2, steps=64)
    coarse = ser.path_to_json(
        type(loop)(samples=loop.samples[::16], closed=True)
    )
    denied = client.post("/monodromy", json={"group": GROUP2, "loop": coarse})
    assert denied.status_code == 422
    assert denied.json()["error"]["kind"] == "AmbiguousLift"
    assert "step_index" in denied.json()["error"]

    granted = client.post(
        "/monodromy", json={"group": GROUP2, "loop": coarse, "auto_resample": True}
    )
    body = granted.json()
    assert body["deck"] == [1, 0]
    assert body["subdivisions"] >= 1


def test_contract_endpoint_success():
    loop = ser.path_to_json(rotation_loop(n=2, steps=64))
    resp = client.post("/contract", json={"group": GROUP2, "loop": loop})
    assert resp.status_code == 200
    body = resp.json()
    assert body["monodromy"] == [0, 1]
    assert body["collapse_count"] == body["trace"]["collapse_count"]
    assert body["trace"]["final"]["closed"] is True
    assert all(e["clearance_after"] > 0 for e in body["trace"]["events"])


def test_contract_endpoint_rejects_nontrivial_monodromy():
    loop = ser.path_to_json(swap_loop(n=2, steps=64))
    resp = client.post("/contract", json={"group": GROUP2, "loop": loop})
    assert resp.status_code == 422
    err = resp.json()["error"]
    assert err["kind"] == "NotNullHomotopic"
    assert err["deck"] == [1, 0]


def test_demo_endpoint_is_deterministic():
    payload = {"kind": "random-braid", "n": 3, "steps": 48, "seed": 7}
    first = client.post("/demo", json=payload)
    second = client.post("/demo", json=payload)
    assert first.content == second.content
    loop = ser.path_from_json(first.json())
    assert loop.closed and loop.n == 3


def test_demo_endpoint_validates_kind():
    resp = client.post("/demo", json={"kind": "spiral", "n": 2, "steps": 16})
    assert resp.status_code == 422


def test_plot_endpoint_returns_svg():
    loop = ser.path_to_json(swap_loop(n=2, steps=32))
    resp = client.post("/plot", json={"loop": loop})
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("image/svg+xml")
    assert resp.text.startswith('<?xml version="1.0"')
    again = client.post("/plot", json={"loop": loop})
    assert again.content == resp.content


def test_plot_endpoint_rejects_bad_projection():
    loop = ser.path_to_json(swap_loop(n=2, steps=16))
    resp = client.post("/plot", json={"loop": loop, "projection": [0, 9]})
    assert resp.status_code == 422
    assert resp.json()["error"]["kind"] == "ParseError"


def test_vieta_endpoints():
    coeffs = client.post("/vieta/coeffs", json={"roots": [[1, 0], [-1, 0]]}).json()
    assert coeffs["coeffs"] == [[0.0, 0.0], [-1.0, 0.0]]
    roots = client.post("/vieta/roots", json={"coeffs": [[0, 0], [-1, 0]]}).json()
    assert roots["root_bound"] == 2.0
    assert max(roots["residuals"]) < 1e-10
    roundtrip = client.post("/vieta/roundtrip", json={"roots": [[1, 0], [-1, 0]]}).json()
    assert roundtrip["error"] < 1e-10


def test_vieta_no_convergence_reports_residuals():
    resp = client.post(
        "/vieta/roots", json={"coeffs": [[-6, 0], [11, 0], [-6, 0]], "max_iter": 1}
    )
    assert resp.status_code == 422
    err = resp.json()["error"]
    assert err["kind"] == "NoConvergence"
    assert len(err["residuals"]) == 3


def test_monodromy_of_braid_concatenation():
    alpha = random_braid_loop(n=3, steps=96, seed=21)
    beta = random_braid_loop(n=3, steps=96, seed=22)
    group3 = {"n": 3, "generators": [[1, 0, 2], [0, 2, 1]]}

    def deck_of(loop):
        return client.post(
            "/monodromy", json={"group": group3, "loop": ser.path_to_json(loop)}
        ).json()["deck"]

    from confspace.covering import concatenate
    from confspace.permgroup import Permutation, compose, symmetric_group

    joined = concatenate(alpha, beta, symmetric_group(3))
    expected = compose(Permutation(tuple(deck_of(alpha))), Permutation(tuple(deck_of(beta))))
    assert deck_of(joined) == list(expected.map)
