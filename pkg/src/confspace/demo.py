"""Demo loop generators: swap rotations and seeded collision-free braids.

All generators emit closed quotient loops as total-space sample paths, so
plots show continuous point trajectories and the loop's monodromy can be
read off by lifting from the first sample.
"""
from __future__ import annotations

import numpy as np

from .covering import PathSamples
from .permgroup import Configuration, Permutation, inverse

BRAID_HEIGHT_STEP = 0.6
BRAID_WAYPOINT_RADIUS = 1.5
MIN_CLEARANCE_FACTOR = 0.05


def _swap_base_points(n: int) -> np.ndarray:
    """Unit-separated pair at the origin, extra points parked along +x."""
    pts = np.zeros((n, 3))
    pts[1] = (1.0, 0.0, 0.0)
    for i in range(2, n):
        pts[i] = (2.5 + 1.5 * (i - 2), 0.0, 0.0)
    return pts


def swap_loop(n: int = 2, steps: int = 64, turns: float = 0.5) -> PathSamples:
    """Rigid rotation of the first two points about their midpoint.

    A half turn (turns=0.5) exchanges the pair, a full turn (turns=1.0)
    returns it; either way the loop closes in the quotient.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if steps < 8:
        raise ValueError("need steps >= 8")
    base = _swap_base_points(n)
    mid = (base[0] + base[1]) / 2.0
    arm = base[0] - mid
    samples = []
    for k in range(steps + 1):
        theta = 2.0 * np.pi * turns * k / steps
        c, s = np.cos(theta), np.sin(theta)
        rot = np.array([arm[0] * c - arm[1] * s, arm[0] * s + arm[1] * c, arm[2]])
        pts = base.copy()
        pts[0] = mid + rot
        pts[1] = mid - rot
        samples.append(Configuration(pts))
    return PathSamples(samples=tuple(samples), closed=True)


def rotation_loop(n: int = 2, steps: int = 64) -> PathSamples:
    """Full-turn variant of the swap rotation; monodromy is the identity."""
    return swap_loop(n=n, steps=steps, turns=1.0)


def _braid_keyframes(
    base: np.ndarray, target: Permutation, waypoints: np.ndarray, heights: np.ndarray
) -> list[np.ndarray]:
    """Five keyframe configurations: rise, detour at distinct heights, descend.

    Point i ends at the start location of point target^{-1}(i), so the final
    configuration is exactly the target permutation acting on the base.
    """
    n = base.shape[0]
    inv = inverse(target)
    dest = base[list(inv.map)]
    lifted = base + np.column_stack([np.zeros(n), np.zeros(n), heights])
    detour = np.column_stack([waypoints, heights])
    lifted_dest = dest + np.column_stack([np.zeros(n), np.zeros(n), heights])
    return [base, lifted, detour, lifted_dest, dest]


def _resample_polyline(keyframes: list[np.ndarray], steps: int) -> list[np.ndarray]:
    """Evenly spaced (by configuration-space arc length) samples through keyframes."""
    flats = [k.ravel() for k in keyframes]
    seg_lens = [float(np.linalg.norm(b - a)) for a, b in zip(flats, flats[1:])]
    total = sum(seg_lens)
    cum = np.concatenate([[0.0], np.cumsum(seg_lens)])
    out = []
    for k in range(steps + 1):
        s = total * k / steps
        j = int(np.searchsorted(cum, s, side="right") - 1)
        j = min(j, len(seg_lens) - 1)
        t = 0.0 if seg_lens[j] == 0.0 else (s - cum[j]) / seg_lens[j]
        out.append(((1.0 - t) * flats[j] + t * flats[j + 1]).reshape(keyframes[0].shape))
    return out


def random_braid_loop(
    n: int = 3,
    steps: int = 96,
    seed: int = 0,
    target: Permutation | None = None,
) -> PathSamples:
    """Seeded piecewise-linear collision-free motion ending in a permutation.

    Points start on a unit circle, rise to pairwise distinct heights, detour
    through seeded waypoints, and descend onto a permutation of the start
    positions.  Distinct heights make the detour legs collision-free whatever
    the waypoints, so every sample keeps a pairwise separation of at least
    min(2 sin(pi/n), height step), well above 5% of the start diameter for
    n up to 8.  The monodromy of the resulting quotient loop is the target
    permutation (a seeded-random one when not supplied).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if steps < 8:
        raise ValueError("need steps >= 8")
    rng = np.random.default_rng(seed)
    sigma = target if target is not None else Permutation(tuple(int(i) for i in rng.permutation(n)))
    if sigma.n != n:
        raise ValueError(f"target permutation arity {sigma.n} != {n}")
    angles = 2.0 * np.pi * np.arange(n) / n
    base = np.column_stack([np.cos(angles), np.sin(angles), np.zeros(n)])
    heights = BRAID_HEIGHT_STEP * (np.arange(n) + 1.0)
    radii = BRAID_WAYPOINT_RADIUS * np.sqrt(rng.random(n))
    phis = 2.0 * np.pi * rng.random(n)
    waypoints = np.column_stack([radii * np.cos(phis), radii * np.sin(phis)])

    keyframes = _braid_keyframes(base, sigma, waypoints, heights)
    samples = tuple(Configuration(p) for p in _resample_polyline(keyframes, steps))

    scale = float(
        np.linalg.norm(base[:, None, :] - base[None, :, :], axis=-1).max()
    )
    worst = min(s.min_separation() for s in samples)
    if worst < MIN_CLEARANCE_FACTOR * scale:
        raise RuntimeError(
            f"braid generator produced separation {worst:.3g} < "
            f"{MIN_CLEARANCE_FACTOR} * scale {scale:.3g}"
        )
    return PathSamples(samples=samples, closed=True)


def make_demo_loop(kind: str, n: int, steps: int, seed: int = 0) -> PathSamples:
    """Dispatch for the CLI/service demo generators."""
    if kind == "swap-loop":
        return swap_loop(n=n, steps=steps, turns=0.5)
    if kind == "rotation":
        return rotation_loop(n=n, steps=steps)
    if kind == "random-braid":
        return random_braid_loop(n=n, steps=steps, seed=seed)
    raise ValueError(f"unknown demo kind: {kind!r}")
