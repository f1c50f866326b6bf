import math

import numpy as np
import pytest

from confspace.errors import ClosureExceedsCap, ShapeMismatch
from confspace.permgroup import (
    Configuration,
    Permutation,
    act,
    compose,
    cyclic_group,
    generate_group,
    inverse,
    is_free_point,
    orbit,
    symmetric_group,
)

from conftest import random_configuration, random_free_configuration


def perm(*word):
    return Permutation(tuple(word))


def test_compose_with_identity():
    assert compose(perm(1, 0, 2), Permutation.identity(3)).map == (1, 0, 2)


def test_compose_applies_right_then_left():
    # r(i) = p(q(i)) evaluated per index
    assert compose(perm(1, 0, 2), perm(0, 2, 1)).map == (1, 2, 0)


def test_transposition_squared_is_identity():
    p = perm(1, 0)
    assert compose(p, p).map == (0, 1)


def test_compose_arity_mismatch():
    with pytest.raises(ShapeMismatch):
        compose(perm(1, 0), perm(0, 1, 2))


def test_inverse_of_identity():
    assert inverse(Permutation.identity(4)).map == (0, 1, 2, 3)


def test_inverse_of_cycle():
    assert inverse(perm(1, 2, 0)).map == (2, 0, 1)


def test_inverse_of_transposition_is_itself():
    assert inverse(perm(1, 0, 2)).map == (1, 0, 2)


def test_invalid_permutation_rejected():
    with pytest.raises(ShapeMismatch):
        perm(0, 0, 2)


def test_generate_order_two():
    g = generate_group(2, [perm(1, 0)])
    assert g.order == 2
    assert g.elements[0].is_identity()


def test_generate_cyclic_three():
    g = generate_group(3, [perm(1, 2, 0)])
    assert g.order == 3


def test_generate_full_symmetric_three():
    g = generate_group(3, [perm(1, 0, 2), perm(0, 2, 1)])
    assert g.order == 6


def test_generate_cap_exceeded():
    with pytest.raises(ClosureExceedsCap):
        generate_group(3, [perm(1, 0, 2), perm(0, 2, 1)], cap=4)


def test_group_closed_under_compose_and_inverse():
    g = symmetric_group(3)
    for a in g:
        assert g.contains(inverse(a))
        for b in g:
            assert g.contains(compose(a, b))


def test_lagrange_bound():
    for n in (2, 3, 4):
        assert math.factorial(n) % cyclic_group(n).order == 0
        assert math.factorial(n) % symmetric_group(n).order == 0


def test_generate_is_idempotent():
    g = symmetric_group(3)
    regenerated = generate_group(3, list(g.elements))
    assert [e.map for e in regenerated.elements] == [e.map for e in g.elements]


def test_act_identity_is_exact():
    x = Configuration([[0.1, 0.2, 0.3], [1.0, -1.0, 2.0]])
    y = act(Permutation.identity(2), x)
    assert np.array_equal(y.points, x.points)


def test_act_swap():
    x = Configuration([[0, 0, 0], [1, 0, 0]])
    y = act(perm(1, 0), x)
    assert np.array_equal(y.points, np.array([[1, 0, 0], [0, 0, 0]], dtype=float))


def test_act_cycle_moves_slots_forward():
    a, b, c = [0.0, 0.0, 1.0], [1.0, 2.0, 3.0], [4.0, 5.0, 6.0]
    x = Configuration([a, b, c])
    # y[p(i)] = x[i] with p = (1, 2, 0): slot 0 gets c, slot 1 gets a, slot 2 gets b
    y = act(perm(1, 2, 0), x)
    assert np.array_equal(y.points, np.array([c, a, b]))


def test_act_is_left_action(rng):
    g = symmetric_group(4)
    x = random_configuration(rng, 4)
    for _ in range(20):
        p = g.elements[rng.integers(g.order)]
        q = g.elements[rng.integers(g.order)]
        left = act(compose(p, q), x)
        right = act(p, act(q, x))
        assert np.array_equal(left.points, right.points)


def test_act_is_isometric(rng):
    g = symmetric_group(4)
    x = random_configuration(rng, 4)
    y = random_configuration(rng, 4)
    base = np.linalg.norm(x.flat() - y.flat())
    for e in g:
        moved = np.linalg.norm(act(e, x).flat() - act(e, y).flat())
        assert abs(moved - base) <= 1e-12


def test_free_action_on_distinct_points(rng):
    g = symmetric_group(4)
    x = random_free_configuration(rng, 4)
    for e in g.elements[1:]:
        assert not np.array_equal(act(e, x).points, x.points)


def test_act_arity_mismatch():
    with pytest.raises(ShapeMismatch):
        act(perm(1, 0), Configuration([[0, 0, 0], [1, 0, 0], [2, 0, 0]]))


def test_is_free_point_distinct():
    assert is_free_point(Configuration([[0, 0, 0], [1, 0, 0]]), tol=1e-9)


def test_is_free_point_coincident():
    assert not is_free_point(Configuration([[0, 0, 0], [0, 0, 0]]), tol=1e-9)


def test_is_free_point_below_tolerance():
    assert not is_free_point(Configuration([[0, 0, 0], [1e-12, 0, 0]]), tol=1e-9)


def test_orbit_under_swap_group():
    g = symmetric_group(2)
    x = Configuration([[0, 0, 0], [1, 0, 0]])
    configs = orbit(g, x)
    assert len(configs) == 2
    assert np.array_equal(configs[0].points, x.points)
    assert np.array_equal(configs[1].points, x.points[::-1])


def test_orbit_under_trivial_group():
    g = generate_group(3, [])
    x = Configuration([[0, 0, 0], [1, 0, 0], [2, 0, 0]])
    configs = orbit(g, x)
    assert len(configs) == 1
    assert np.array_equal(configs[0].points, x.points)


def test_orbit_of_free_point_has_group_size(rng):
    g = symmetric_group(3)
    x = random_free_configuration(rng, 3)
    configs = orbit(g, x)
    assert len(configs) == 6
    flats = {tuple(c.flat()) for c in configs}
    assert len(flats) == 6


def test_configuration_shape_validation():
    with pytest.raises(ShapeMismatch):
        Configuration([1.0, 2.0, 3.0])
