"""The quotient metric on orbit spaces of configurations.

For a finite permutation group G acting on configurations, the orbit space
carries the metric

    dbar(xbar, ybar) = min over g in G of |flat(x) - flat(act(g, y))|

with the Euclidean norm on the flattened coordinates.  For the full
symmetric group the minimum is a minimum-cost assignment and is solved in
O(n^3) instead of enumerating n! permutations.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import NonFreePoint, ShapeMismatch, TrivialGroup
from .permgroup import (
    DEFAULT_DISTINCT_TOL,
    Configuration,
    PermGroup,
    Permutation,
    _check_same_shape,
    act,
    compose,
    inverse,
)


@dataclass(frozen=True)
class QuotientDistanceResult:
    """A quotient distance together with the group element achieving it."""

    value: float
    witness: Permutation


@dataclass(frozen=True, eq=False)
class QuotientPoint:
    """An orbit, stored as its canonical representative."""

    rep: Configuration
    group_arity: int


def tuple_distance(x: Configuration, y: Configuration) -> float:
    """Euclidean distance between the flattened configurations."""
    _check_same_shape(x, y)
    return float(np.linalg.norm(x.flat() - y.flat()))


def quotient_distance(group: PermGroup, x: Configuration, y: Configuration) -> QuotientDistanceResult:
    """min over g of tuple_distance(x, act(g, y)); ties go to the first element.

    The witness g satisfies value == tuple_distance(x, act(g, y)).
    """
    _check_same_shape(x, y)
    orbit_pts = group.orbit_array(y)  # (|G|, n, d)
    diffs = orbit_pts - x.points[None, :, :]
    sq = np.einsum("gnd,gnd->g", diffs, diffs)
    k = int(np.argmin(sq))
    witness = group.elements[k]
    return QuotientDistanceResult(value=tuple_distance(x, act(witness, y)), witness=witness)


def quotient_distance_assignment(x: Configuration, y: Configuration) -> QuotientDistanceResult:
    """Quotient distance for the full symmetric group, via optimal assignment.

    Minimizes sum_i |x_i - y_{sigma(i)}|^2 over matchings; the returned
    witness g satisfies act(g, y)_i = y paired with x_i, so the value equals
    quotient_distance with G the full symmetric group.
    """
    _check_same_shape(x, y)
    diffs = x.points[:, None, :] - y.points[None, :, :]
    cost = np.einsum("ijd,ijd->ij", diffs, diffs)
    row, col = linear_sum_assignment(cost)
    # x_i is matched with y_{col[i]}, i.e. act(g, y)_i = y_{col[i]} = y_{g^{-1}(i)}.
    witness = inverse(Permutation(tuple(int(c) for c in col[np.argsort(row)])))
    return QuotientDistanceResult(value=tuple_distance(x, act(witness, y)), witness=witness)


def separation_radius(
    group: PermGroup,
    x: Configuration,
    tol: float = DEFAULT_DISTINCT_TOL,
) -> float:
    """Distance from x to the rest of its orbit: min over g != 1 of d(x, act(g, x)).

    Strictly positive exactly when the action is free at x; raises
    NonFreePoint if the minimum falls at or below ``tol``.
    """
    if group.order < 2:
        raise TrivialGroup("separation radius needs a non-identity element")
    if x.n != group.n:
        raise ShapeMismatch(f"arity mismatch: group {group.n} vs configuration {x.n}")
    orbit_pts = group.orbit_array(x)[1:]  # identity is element 0
    diffs = orbit_pts - x.points[None, :, :]
    sq = np.einsum("gnd,gnd->g", diffs, diffs)
    radius = float(np.sqrt(sq.min()))
    if radius <= tol:
        raise NonFreePoint(
            f"orbit separation {radius:.3e} is within tolerance {tol:.3e}; "
            "the action is not free here"
        )
    return radius


def canonical_representative(group: PermGroup, x: Configuration) -> Configuration:
    """The lexicographically smallest flattened vector in the orbit of x.

    Comparison is exact on the float coordinates, so equal inputs from the
    same orbit give bitwise-equal output.
    """
    if x.n != group.n:
        raise ShapeMismatch(f"arity mismatch: group {group.n} vs configuration {x.n}")
    flats = group.orbit_array(x).reshape(group.order, -1)
    best = min(range(group.order), key=lambda k: tuple(flats[k]))
    return Configuration(flats[best].reshape(x.n, x.d))


def quotient_point(group: PermGroup, x: Configuration) -> QuotientPoint:
    return QuotientPoint(rep=canonical_representative(group, x), group_arity=group.n)


def rectify_cauchy_sequence(
    group: PermGroup,
    xs: list[Configuration],
) -> list[Configuration]:
    """Align a sequence of representatives so consecutive steps realize dbar.

    Returns ys with y_1 = x_1 and y_k = act(g_1 ... g_{k-1}, x_k), where g_k
    is the quotient-distance witness between x_k and x_{k+1}.  The action
    being isometric gives tuple_distance(y_k, y_{k+1}) = dbar(x_k, x_{k+1}),
    so a quotient-Cauchy sequence of orbits rectifies to a Cauchy sequence
    of configurations projecting to the same orbits.
    """
    if not xs:
        return []
    ys = [xs[0]]
    prefix = group.identity
    for k in range(len(xs) - 1):
        g = quotient_distance(group, xs[k], xs[k + 1]).witness
        prefix = compose(prefix, g)
        ys.append(act(prefix, xs[k + 1]))
    return ys
