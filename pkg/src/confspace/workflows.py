"""End-to-end pipelines composing lifting, polygonalization and contraction.

These are the orchestration layers behind the service endpoints and the
CLI subcommands; the building blocks stay independently usable.
"""
from __future__ import annotations

import numpy as np

from .covering import LiftResult, PathSamples, lift_path, monodromy
from .errors import AmbiguousLift, NotNullHomotopic
from .homotopy import ReductionTrace, configuration_collision_set, contract_loop, polygonalize
from .permgroup import DEFAULT_DISTINCT_TOL, Configuration, PermGroup, Permutation


def monodromy_with_resampling(
    group: PermGroup,
    loop: PathSamples,
    basepoint: Configuration | None = None,
    auto_resample: bool = False,
    max_subdiv: int = 8,
    tol: float = DEFAULT_DISTINCT_TOL,
) -> tuple[Permutation, int]:
    """Monodromy of a quotient loop, optionally subdividing on ambiguous steps.

    Subdivision inserts midpoints of the representatives as given; returns
    the deck permutation and how many subdivision rounds were used.
    """
    base = basepoint if basepoint is not None else loop.samples[0]
    rounds = 0
    while True:
        try:
            return monodromy(group, loop, base, tol=tol), rounds
        except AmbiguousLift:
            if not auto_resample or rounds >= max_subdiv:
                raise
            loop = loop.subdivided()
            rounds += 1


def lift_with_resampling(
    group: PermGroup,
    loop: PathSamples,
    basepoint: Configuration | None = None,
    auto_resample: bool = False,
    max_subdiv: int = 8,
    tol: float = DEFAULT_DISTINCT_TOL,
) -> tuple[LiftResult, int]:
    base = basepoint if basepoint is not None else loop.samples[0]
    rounds = 0
    while True:
        try:
            return lift_path(group, loop, base, tol=tol), rounds
        except AmbiguousLift:
            if not auto_resample or rounds >= max_subdiv:
                raise
            loop = loop.subdivided()
            rounds += 1


def contract_quotient_loop(
    group: PermGroup,
    loop: PathSamples,
    basepoint: Configuration | None = None,
    auto_resample: bool = False,
    max_subdiv: int = 8,
    tol: float = DEFAULT_DISTINCT_TOL,
) -> tuple[Permutation, ReductionTrace]:
    """Certify a quotient loop null-homotopic by contracting its closed lift.

    Lifts the loop (identity monodromy required: otherwise the lift is open
    and NotNullHomotopic reports the deck permutation), snaps the lift
    closed, polygonalizes it against the pairwise-collision subspaces and
    collapses it to a degenerate chain.
    """
    base = basepoint if basepoint is not None else loop.samples[0]
    result, _ = lift_with_resampling(
        group, loop, base, auto_resample=auto_resample, max_subdiv=max_subdiv, tol=tol
    )
    deck = result.deck
    assert deck is not None  # lift_path already enforced quotient closure
    if not deck.is_identity():
        raise NotNullHomotopic(
            f"loop has monodromy {list(deck.map)}; only identity-monodromy loops lift "
            "to closed loops",
            deck=deck.map,
        )
    flat = np.vstack([s.flat() for s in result.lift.samples])
    flat[-1] = flat[0]  # deck tolerance gap, well inside the clearance tube
    collision = configuration_collision_set(loop.n, loop.d)
    poly = polygonalize(flat, collision, closed=True)
    trace = contract_loop(poly, collision)
    return deck, trace
