import itertools
import math

import numpy as np
import pytest

from confspace.errors import NonFreePoint, ShapeMismatch, TrivialGroup
from confspace.metric import (
    canonical_representative,
    quotient_distance,
    quotient_distance_assignment,
    rectify_cauchy_sequence,
    separation_radius,
    tuple_distance,
)
from confspace.permgroup import (
    Configuration,
    Permutation,
    act,
    cyclic_group,
    generate_group,
    symmetric_group,
)

from conftest import random_configuration, random_free_configuration

X_UNIT = Configuration([[0, 0, 0], [1, 0, 0]])
Y_SHIFTED = Configuration([[1, 0, 0], [3, 0, 0]])


def brute_force_min(x, y):
    """Independent oracle: enumerate raw point permutations of y."""
    best = math.inf
    for order in itertools.permutations(range(y.n)):
        dist = float(np.linalg.norm(x.points - y.points[list(order)]))
        best = min(best, dist)
    return best


def test_tuple_distance_zero_on_equal():
    assert tuple_distance(X_UNIT, X_UNIT) == 0.0


def test_tuple_distance_sqrt_five():
    assert tuple_distance(X_UNIT, Y_SHIFTED) == pytest.approx(math.sqrt(5), abs=1e-15)


def test_tuple_distance_of_swap_is_sqrt_two():
    swapped = act(Permutation((1, 0)), X_UNIT)
    assert tuple_distance(X_UNIT, swapped) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_tuple_distance_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        tuple_distance(X_UNIT, Configuration([[0, 0], [1, 0]]))


def test_quotient_distance_zero_on_orbit(rng):
    g = symmetric_group(3)
    x = random_free_configuration(rng, 3)
    for e in g:
        assert quotient_distance(g, x, act(e, x)).value == 0.0


def test_quotient_distance_sqrt_five_witness_identity():
    g = symmetric_group(2)
    result = quotient_distance(g, X_UNIT, Y_SHIFTED)
    assert result.value == pytest.approx(math.sqrt(5), abs=1e-15)
    assert result.witness.is_identity()  # the swap costs 3 > sqrt(5)


def test_quotient_distance_trivial_group_is_tuple_distance(rng):
    g = generate_group(2, [])
    x = random_configuration(rng, 2)
    y = random_configuration(rng, 2)
    assert quotient_distance(g, x, y).value == tuple_distance(x, y)


def test_quotient_distance_witness_achieves_value(rng):
    g = symmetric_group(4)
    for _ in range(10):
        x = random_configuration(rng, 4)
        y = random_configuration(rng, 4)
        res = quotient_distance(g, x, y)
        assert res.value == tuple_distance(x, act(res.witness, y))


def test_assignment_equals_brute_force_small():
    res = quotient_distance_assignment(X_UNIT, Y_SHIFTED)
    assert res.value == pytest.approx(math.sqrt(5), abs=1e-15)


def test_assignment_identity_on_equal(rng):
    x = random_configuration(rng, 5)
    res = quotient_distance_assignment(x, x)
    assert res.value == 0.0
    assert res.witness.is_identity()


def test_assignment_matches_exhaustive_oracle(rng):
    for n in (2, 3, 4, 5, 6):
        for _ in range(8):
            x = random_configuration(rng, n)
            y = random_configuration(rng, n)
            fast = quotient_distance_assignment(x, y)
            assert fast.value == pytest.approx(brute_force_min(x, y), abs=1e-9)
            assert fast.value == pytest.approx(
                tuple_distance(x, act(fast.witness, y)), abs=1e-12
            )


def test_assignment_agrees_with_group_minimum(rng):
    g = symmetric_group(4)
    for _ in range(10):
        x = random_configuration(rng, 4)
        y = random_configuration(rng, 4)
        assert quotient_distance_assignment(x, y).value == pytest.approx(
            quotient_distance(g, x, y).value, abs=1e-12
        )


def test_separation_radius_swap_pair():
    g = symmetric_group(2)
    assert separation_radius(g, X_UNIT) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_separation_radius_three_points_exhaustive():
    g = symmetric_group(3)
    x = Configuration([[0, 0, 0], [1, 0, 0], [0, 2, 0]])
    expected = min(
        float(np.linalg.norm(x.points - x.points[list(order)]))
        for order in itertools.permutations(range(3))
        if order != (0, 1, 2)
    )
    assert separation_radius(g, x) == pytest.approx(expected, abs=1e-15)
    assert expected == pytest.approx(math.sqrt(2), abs=1e-15)


def test_separation_radius_coincident_points():
    g = symmetric_group(2)
    with pytest.raises(NonFreePoint):
        separation_radius(g, Configuration([[0, 0, 0], [0, 0, 0]]))


def test_separation_radius_trivial_group():
    g = generate_group(2, [])
    with pytest.raises(TrivialGroup):
        separation_radius(g, X_UNIT)


def test_canonical_representative_sorts_pair():
    g = symmetric_group(2)
    rep = canonical_representative(g, Configuration([[1, 0, 0], [0, 0, 0]]))
    assert np.array_equal(rep.points, X_UNIT.points)


def test_canonical_representative_trivial_group():
    g = generate_group(2, [])
    x = Configuration([[1, 0, 0], [0, 0, 0]])
    assert np.array_equal(canonical_representative(g, x).points, x.points)


def test_canonical_representative_is_orbit_invariant(rng):
    g = symmetric_group(3)
    x = random_free_configuration(rng, 3)
    reps = [canonical_representative(g, act(e, x)) for e in g]
    for rep in reps[1:]:
        assert np.array_equal(rep.points, reps[0].points)


def test_canonical_representative_idempotent(rng):
    g = symmetric_group(3)
    x = random_configuration(rng, 3)
    rep = canonical_representative(g, x)
    again = canonical_representative(g, rep)
    assert np.array_equal(rep.points, again.points)


def test_quotient_point_is_canonical_form(rng):
    from confspace.metric import quotient_point

    g = symmetric_group(3)
    x = random_free_configuration(rng, 3)
    points = {tuple(quotient_point(g, act(e, x)).rep.flat()) for e in g}
    assert len(points) == 1
    qp = quotient_point(g, x)
    assert qp.group_arity == 3
    assert np.array_equal(
        canonical_representative(g, qp.rep).points, qp.rep.points
    )


def test_rectify_undoes_alternating_swaps():
    g = symmetric_group(2)
    swap = Permutation((1, 0))
    xs = [X_UNIT, act(swap, X_UNIT), X_UNIT, act(swap, X_UNIT)]
    ys = rectify_cauchy_sequence(g, xs)
    for y in ys:
        assert np.array_equal(y.points, X_UNIT.points)


def test_rectify_constant_sequence():
    g = symmetric_group(2)
    ys = rectify_cauchy_sequence(g, [X_UNIT] * 4)
    for y in ys:
        assert np.array_equal(y.points, X_UNIT.points)


def test_rectify_scrambled_cauchy_sequence(rng):
    g = symmetric_group(3)
    base = random_free_configuration(rng, 3, min_sep=0.5)
    drift = rng.standard_normal(9)
    drift /= np.linalg.norm(drift)
    clean = [
        Configuration.from_flat(base.flat() + 0.8 * 2.0 ** -(k + 1) * drift, 3, 3)
        for k in range(12)
    ]
    xs = [act(g.elements[rng.integers(g.order)], c) for c in clean]
    ys = rectify_cauchy_sequence(g, xs)
    for k in range(len(xs) - 1):
        dbar = quotient_distance(g, xs[k], xs[k + 1]).value
        assert abs(tuple_distance(ys[k], ys[k + 1]) - dbar) <= 1e-12
        # rectified samples still project to the same orbits
        assert np.array_equal(
            canonical_representative(g, ys[k]).points,
            canonical_representative(g, xs[k]).points,
        )


def test_metric_axioms_on_random_triples(rng):
    for trial in range(60):
        n = int(rng.integers(2, 5))
        group = symmetric_group(n) if trial % 2 == 0 else cyclic_group(n)
        x = random_configuration(rng, n)
        y = random_configuration(rng, n)
        z = random_configuration(rng, n)
        assert quotient_distance(group, x, x).value == 0.0
        dxy = quotient_distance(group, x, y).value
        dyx = quotient_distance(group, y, x).value
        assert abs(dxy - dyx) <= 1e-12
        dxz = quotient_distance(group, x, z).value
        dyz = quotient_distance(group, y, z).value
        assert dxz <= dxy + dyz + 1e-9
        # projection is 1-Lipschitz
        assert dxy <= tuple_distance(x, y) + 1e-15


def test_well_definedness_on_representatives(rng):
    g = symmetric_group(3)
    x = random_configuration(rng, 3)
    y = random_configuration(rng, 3)
    base = quotient_distance(g, x, y).value
    for a in g:
        for b in g:
            moved = quotient_distance(g, act(a, x), act(b, y)).value
            assert abs(moved - base) <= 1e-12
