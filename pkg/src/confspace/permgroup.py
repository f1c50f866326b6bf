"""Permutations, finite permutation groups, and their action on configurations.

Permutations are 0-based in one-line notation: ``p.map[i]`` is the image of
``i``.  A permutation acts on a configuration by moving the point at slot
``i`` to slot ``p(i)``, i.e. ``act(p, x)[p(i)] = x[i]``.  With ``compose``
defined as function composition this is a left action:
``act(compose(p, q), x) == act(p, act(q, x))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ClosureExceedsCap, ShapeMismatch

DEFAULT_GROUP_CAP = 40320  # 8!
DEFAULT_DISTINCT_TOL = 1e-9


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., n-1} in one-line notation."""

    map: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.map) != list(range(len(self.map))):
            raise ShapeMismatch(f"not a permutation of 0..{len(self.map) - 1}: {self.map}")

    @property
    def n(self) -> int:
        return len(self.map)

    def __call__(self, i: int) -> int:
        return self.map[i]

    def is_identity(self) -> bool:
        return all(self.map[i] == i for i in range(len(self.map)))

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @staticmethod
    def transposition(n: int, i: int, j: int) -> "Permutation":
        word = list(range(n))
        word[i], word[j] = word[j], word[i]
        return Permutation(tuple(word))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Function composition r(i) = p(q(i))."""
    if p.n != q.n:
        raise ShapeMismatch(f"arity mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p.map[q.map[i]] for i in range(p.n)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for i, pi in enumerate(p.map):
        inv[pi] = i
    return Permutation(tuple(inv))


@dataclass(frozen=True, eq=False)
class Configuration:
    """An ordered tuple of n points in R^d, stored as an (n, d) float array.

    Flattened row-major it is a vector in R^{nd}.  Membership in the
    collision-free configuration space additionally requires pairwise
    distinct points; see :func:`is_free_point`.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2:
            raise ShapeMismatch(f"points must be a 2-D array, got shape {pts.shape}")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def flat(self) -> np.ndarray:
        return self.points.ravel()

    @staticmethod
    def from_flat(vec: np.ndarray, n: int, d: int) -> "Configuration":
        vec = np.asarray(vec, dtype=float)
        if vec.size != n * d:
            raise ShapeMismatch(f"flat vector of size {vec.size} is not {n}x{d}")
        return Configuration(vec.reshape(n, d))

    def min_separation(self) -> float:
        """Smallest pairwise distance between the points (inf for n < 2)."""
        if self.n < 2:
            return float("inf")
        diffs = self.points[:, None, :] - self.points[None, :, :]
        dists = np.linalg.norm(diffs, axis=-1)
        iu = np.triu_indices(self.n, k=1)
        return float(dists[iu].min())


def _check_same_shape(x: Configuration, y: Configuration) -> None:
    if x.n != y.n or x.d != y.d:
        raise ShapeMismatch(f"configuration shapes differ: {x.n}x{x.d} vs {y.n}x{y.d}")


def act(p: Permutation, x: Configuration) -> Configuration:
    """Move the point at slot i to slot p(i): result[p(i)] = x[i]."""
    if p.n != x.n:
        raise ShapeMismatch(f"arity mismatch: permutation {p.n} vs configuration {x.n}")
    out = np.empty_like(x.points)
    out[list(p.map)] = x.points
    return Configuration(out)


def is_free_point(x: Configuration, tol: float = DEFAULT_DISTINCT_TOL) -> bool:
    """True iff all points are pairwise farther apart than tol."""
    return x.min_separation() > tol


@dataclass(frozen=True, eq=False)
class PermGroup:
    """A finite permutation group enumerated explicitly.

    ``elements`` is the closure of the generators in breadth-first discovery
    order with the identity first; this order is the tie-breaking order used
    everywhere a minimizing group element is reported.
    """

    n: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    element_index: dict[Permutation, int] = field(repr=False)
    # int arrays of shape (|G|, n): one-line maps and their inverses,
    # precomputed for vectorized orbit scans.
    maps: np.ndarray = field(repr=False)
    inv_maps: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def __iter__(self):
        return iter(self.elements)

    def contains(self, p: Permutation) -> bool:
        return p in self.element_index

    def orbit_array(self, x: Configuration) -> np.ndarray:
        """All images act(g, x) stacked as an (|G|, n, d) array, in element order."""
        if x.n != self.n:
            raise ShapeMismatch(f"arity mismatch: group {self.n} vs configuration {x.n}")
        return x.points[self.inv_maps]


def generate_group(
    n: int,
    generators: Iterable[Permutation | Sequence[int]],
    cap: int = DEFAULT_GROUP_CAP,
) -> PermGroup:
    """Breadth-first closure of the generators under composition.

    The identity is discovered first; after that, elements appear in BFS
    order over right-multiplication by the generators as listed.  Raises
    ClosureExceedsCap if the group order would exceed ``cap``.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    gens: list[Permutation] = []
    for g in generators:
        p = g if isinstance(g, Permutation) else Permutation(tuple(int(i) for i in g))
        if p.n != n:
            raise ShapeMismatch(f"generator arity {p.n} does not match group arity {n}")
        gens.append(p)

    ident = Permutation.identity(n)
    elements: list[Permutation] = [ident]
    index: dict[Permutation, int] = {ident: 0}
    frontier = [ident]
    while frontier:
        new_frontier: list[Permutation] = []
        for e in frontier:
            for g in gens:
                f = compose(e, g)
                if f not in index:
                    if len(elements) + 1 > cap:
                        raise ClosureExceedsCap(
                            f"group closure exceeds cap {cap} (arity {n})"
                        )
                    index[f] = len(elements)
                    elements.append(f)
                    new_frontier.append(f)
        frontier = new_frontier

    maps = np.array([e.map for e in elements], dtype=np.intp)
    inv_maps = np.array([inverse(e).map for e in elements], dtype=np.intp)
    maps.flags.writeable = False
    inv_maps.flags.writeable = False
    return PermGroup(
        n=n,
        generators=tuple(gens),
        elements=tuple(elements),
        element_index=index,
        maps=maps,
        inv_maps=inv_maps,
    )


def symmetric_group(n: int, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """The full symmetric group on n letters, generated by adjacent transpositions."""
    if n < 2:
        return generate_group(n, [], cap=cap)
    gens = [Permutation.transposition(n, i, i + 1) for i in range(n - 1)]
    return generate_group(n, gens, cap=cap)


def cyclic_group(n: int, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """The cyclic group generated by the n-cycle i -> i+1 (mod n)."""
    cycle = Permutation(tuple((i + 1) % n for i in range(n)))
    return generate_group(n, [cycle], cap=cap)


def orbit(group: PermGroup, x: Configuration) -> list[Configuration]:
    """Images of x under every group element, in group element order."""
    arr = group.orbit_array(x)
    return [Configuration(arr[k]) for k in range(group.order)]
