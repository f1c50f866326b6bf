"""Discrete path lifting through the orbit projection, and monodromy.

Where the action is free, the projection onto the orbit space is a covering
map: around a configuration x with orbit separation eps, the ball of radius
delta = eps/5 is evenly covered and projection restricted to it is an
isometry.  A sampled quotient path whose lifted steps stay below the local
delta therefore lifts uniquely; the group element carrying the lift's start
to its end (the deck element) is a complete homotopy invariant of a closed
loop, and realizes the isomorphism between the quotient's fundamental group
and the acting group.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AmbiguousLift,
    BasepointNotInFiber,
    EndpointMismatch,
    NonFreeSample,
    NotAClosedLoop,
    ShapeMismatch,
)
from .metric import quotient_distance, separation_radius, tuple_distance
from .permgroup import (
    DEFAULT_DISTINCT_TOL,
    Configuration,
    PermGroup,
    Permutation,
    act,
    is_free_point,
)

DECK_TOL_FACTOR = 1e-6  # deck identified within 1e-6 * eps, far below the eps separation


@dataclass(frozen=True)
class PathSamples:
    """A sampled path of configurations; ``closed`` flags a loop.

    For quotient paths the samples are orbit representatives: consecutive
    samples may be re-permuted arbitrarily without changing the path.
    """

    samples: tuple[Configuration, ...]
    closed: bool = False

    def __post_init__(self):
        if len(self.samples) < 2:
            raise ShapeMismatch("a path needs at least 2 samples")
        n, d = self.samples[0].n, self.samples[0].d
        for k, s in enumerate(self.samples):
            if s.n != n or s.d != d:
                raise ShapeMismatch(f"sample {k} has shape {s.n}x{s.d}, expected {n}x{d}")

    @property
    def n(self) -> int:
        return self.samples[0].n

    @property
    def d(self) -> int:
        return self.samples[0].d

    def reversed(self) -> "PathSamples":
        return PathSamples(samples=tuple(reversed(self.samples)), closed=self.closed)

    def subdivided(self) -> "PathSamples":
        """Insert the midpoint of each consecutive pair of representatives."""
        out: list[Configuration] = [self.samples[0]]
        for a, b in zip(self.samples, self.samples[1:]):
            out.append(Configuration((a.points + b.points) / 2.0))
            out.append(b)
        return PathSamples(samples=tuple(out), closed=self.closed)


@dataclass(frozen=True)
class LiftResult:
    """A lifted path plus the deck element g with lift end = act(g, lift start).

    ``deck`` is None for open paths.
    """

    lift: PathSamples
    deck: Permutation | None


def evenly_covered_radius(
    group: PermGroup,
    x: Configuration,
    tol: float = DEFAULT_DISTINCT_TOL,
) -> float:
    """One fifth of the orbit separation at x: the evenly-covered ball radius."""
    return separation_radius(group, x, tol=tol) / 5.0


def _local_delta(group: PermGroup, x: Configuration, tol: float) -> float:
    if group.order < 2:
        return float("inf")  # quotient is the total space; lifting is trivial
    return evenly_covered_radius(group, x, tol=tol)


def lift_path(
    group: PermGroup,
    path: PathSamples,
    basepoint: Configuration,
    tol: float = DEFAULT_DISTINCT_TOL,
    global_delta: float | None = None,
) -> LiftResult:
    """Lift a sampled quotient path to the total space, starting at basepoint.

    Each step applies the quotient-distance witness to the next sample, which
    is the unique choice whenever the lifted step stays below the local
    evenly-covered radius; longer steps raise AmbiguousLift and the caller
    must resample.  ``global_delta`` skips the per-sample radius in favor of
    a caller-supplied conservative bound.

    For a path flagged closed, the deck element is identified among the
    group elements moving the basepoint within 1e-6 of its separation.
    """
    if basepoint.n != path.n or basepoint.d != path.d:
        raise ShapeMismatch(
            f"basepoint shape {basepoint.n}x{basepoint.d} does not match path {path.n}x{path.d}"
        )
    for k, s in enumerate(path.samples):
        if not is_free_point(s, tol):
            raise NonFreeSample(f"sample {k} has coincident points (tol {tol:.1e})")
    if not is_free_point(basepoint, tol):
        raise NonFreeSample("basepoint has coincident points")
    base_gap = quotient_distance(group, basepoint, path.samples[0]).value
    if base_gap > tol:
        raise BasepointNotInFiber(
            f"basepoint is {base_gap:.3e} from the fiber of the first sample (tol {tol:.1e})"
        )

    lifted: list[Configuration] = [basepoint]
    for k in range(len(path.samples) - 1):
        current = lifted[-1]
        res = quotient_distance(group, current, path.samples[k + 1])
        delta = global_delta if global_delta is not None else _local_delta(group, current, tol)
        if res.value >= delta:
            raise AmbiguousLift(
                f"step {k} -> {k + 1} has lifted length {res.value:.6g} >= local radius "
                f"{delta:.6g}; subdivide the path",
                step_index=k,
            )
        lifted.append(act(res.witness, path.samples[k + 1]))

    deck: Permutation | None = None
    if path.closed:
        eps = separation_radius(group, basepoint, tol=tol) if group.order >= 2 else None
        deck_tol = DECK_TOL_FACTOR * eps if eps is not None else tol
        end = lifted[-1]
        best: tuple[float, Permutation] | None = None
        for g in group.elements:
            dist = tuple_distance(end, act(g, basepoint))
            if best is None or dist < best[0]:
                best = (dist, g)
        assert best is not None
        if best[0] > deck_tol:
            raise NotAClosedLoop(
                f"lift endpoint is {best[0]:.3e} from every fiber point of the basepoint "
                f"(tol {deck_tol:.3e}); the loop does not close in the quotient"
            )
        deck = best[1]

    return LiftResult(lift=PathSamples(samples=tuple(lifted), closed=path.closed), deck=deck)


def monodromy(
    group: PermGroup,
    loop: PathSamples,
    basepoint: Configuration,
    tol: float = DEFAULT_DISTINCT_TOL,
    global_delta: float | None = None,
) -> Permutation:
    """Deck element of the lifted loop: the homotopy invariant of its class."""
    closure = quotient_distance(group, loop.samples[0], loop.samples[-1]).value
    if not loop.closed or closure > tol:
        raise NotAClosedLoop(
            f"loop endpoints are {closure:.3e} apart in the quotient (tol {tol:.1e})"
            if loop.closed
            else "path is not flagged closed"
        )
    result = lift_path(group, loop, basepoint, tol=tol, global_delta=global_delta)
    assert result.deck is not None
    return result.deck


def concatenate(a: PathSamples, b: PathSamples, group: PermGroup, tol: float = DEFAULT_DISTINCT_TOL) -> PathSamples:
    """Join two quotient paths; a's end must equal b's start as orbits.

    The duplicate joint sample is dropped.  The result is flagged closed when
    its own endpoints agree in the quotient.
    """
    if a.n != b.n or a.d != b.d:
        raise ShapeMismatch(f"path shapes differ: {a.n}x{a.d} vs {b.n}x{b.d}")
    joint = quotient_distance(group, a.samples[-1], b.samples[0]).value
    if joint > tol:
        raise EndpointMismatch(
            f"paths meet {joint:.3e} apart in the quotient (tol {tol:.1e})"
        )
    samples = a.samples + b.samples[1:]
    ends = quotient_distance(group, samples[0], samples[-1]).value
    return PathSamples(samples=samples, closed=ends <= tol)


@dataclass(frozen=True)
class LocalIsometryReport:
    """Outcome of sampling the projection's metric distortion near a point."""

    trials: int
    radius: float
    epsilon: float
    max_deviation: float


def verify_local_isometry(
    group: PermGroup,
    x: Configuration,
    trials: int,
    rng_seed: int,
    radius: float | None = None,
    tol: float = DEFAULT_DISTINCT_TOL,
) -> LocalIsometryReport:
    """Sample pairs z, w in a ball around x and measure d(z, w) - dbar(z, w).

    With the default radius (one fifth of the orbit separation) the
    deviation vanishes: projection is an isometry on the ball.  Larger radii
    serve as a negative control, where sheets of distinct orbit translates
    enter the ball and the quotient distance undercuts the ambient one.
    """
    eps = separation_radius(group, x, tol=tol)
    r = radius if radius is not None else eps / 5.0
    rng = np.random.default_rng(rng_seed)
    nd = x.n * x.d
    center = x.flat()
    max_dev = 0.0
    for _ in range(trials):
        pair = []
        for _ in range(2):
            direction = rng.standard_normal(nd)
            direction /= np.linalg.norm(direction)
            rho = r * rng.random() ** (1.0 / nd)
            pair.append(Configuration.from_flat(center + rho * direction, x.n, x.d))
        z, w = pair
        dev = tuple_distance(z, w) - quotient_distance(group, z, w).value
        if dev > max_dev:
            max_dev = dev
    return LocalIsometryReport(trials=trials, radius=r, epsilon=eps, max_deviation=max_dev)
