"""Root/coefficient duality for monic polynomials over the complex numbers.

The map sending an unordered n-tuple of complex roots to the n nontrivial
coefficients of its monic polynomial identifies the orbit space of n-tuples
under coordinate permutation with complex n-space.  Both directions are
realized numerically: coefficient extraction by sequential factor
multiplication, root recovery by Weierstrass (Durand-Kerner) simultaneous
iteration, plus the Cauchy bound certifying that recovered roots stay in a
coefficient-controlled disk.

Complex tuples double as planar configurations (d = 2), which connects the
roundtrip error to the assignment-based quotient distance.
"""
from __future__ import annotations

import numpy as np

from .errors import NoConvergence
from .metric import quotient_distance_assignment
from .permgroup import Configuration

DEFAULT_ROOT_TOL = 1e-12
DEFAULT_MAX_ITER = 1000
INIT_RADIUS_FACTOR = 0.8
INIT_ANGLE_OFFSET = 0.4  # radians; breaks symmetry of the starting circle


def _canonical_order(values: np.ndarray) -> np.ndarray:
    order = np.lexsort((values.imag, values.real))
    return values[order]


def roots_to_coeffs(roots: np.ndarray) -> np.ndarray:
    """Coefficients (c_{n-1}, ..., c_0) of prod (z - r) with the leading 1 implicit.

    Factors are multiplied in canonical (lexicographic) root order, so any
    permutation of the input yields bitwise-identical output.
    """
    values = _canonical_order(np.asarray(roots, dtype=complex).ravel())
    poly = np.array([1.0 + 0.0j])
    for r in values:
        poly = np.convolve(poly, np.array([1.0 + 0.0j, -r]))
    return poly[1:]


def root_bound(coeffs: np.ndarray) -> float:
    """Cauchy bound 1 + max |c_i|: every root of the monic polynomial fits in it."""
    coeffs = np.asarray(coeffs, dtype=complex).ravel()
    if coeffs.size == 0:
        return 1.0
    return float(1.0 + np.abs(coeffs).max())


def _monic(coeffs: np.ndarray) -> np.ndarray:
    return np.concatenate([[1.0 + 0.0j], np.asarray(coeffs, dtype=complex).ravel()])


def evaluation_residuals(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """|p(r)| for each candidate root of the monic polynomial."""
    return np.abs(np.polyval(_monic(coeffs), np.asarray(roots, dtype=complex)))


def coeffs_to_roots(
    coeffs: np.ndarray,
    tol: float = DEFAULT_ROOT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> np.ndarray:
    """All n roots (with multiplicity) of z^n + c_{n-1} z^{n-1} + ... + c_0.

    Weierstrass simultaneous iteration started on a circle of radius
    0.8 * root_bound with a fixed angular offset; converged when the largest
    update drops below ``tol``.  Raises NoConvergence (with the evaluation
    residuals) if ``max_iter`` passes without that happening.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    n = c.size
    if n == 0:
        return np.array([], dtype=complex)
    poly = _monic(c)
    radius = INIT_RADIUS_FACTOR * root_bound(c)
    angles = 2.0 * np.pi * np.arange(n) / n + INIT_ANGLE_OFFSET
    z = radius * np.exp(1j * angles)
    for _ in range(max_iter):
        values = np.polyval(poly, z)
        diffs = z[:, None] - z[None, :]
        np.fill_diagonal(diffs, 1.0)
        denom = diffs.prod(axis=1)
        update = values / denom
        z = z - update
        if np.abs(update).max() < tol:
            return _canonical_order(z)
    raise NoConvergence(
        f"root iteration did not converge within {max_iter} iterations",
        residuals=[float(r) for r in evaluation_residuals(c, z)],
    )


def complex_to_configuration(values: np.ndarray) -> Configuration:
    """View an n-tuple of complex numbers as n points in the plane."""
    values = np.asarray(values, dtype=complex).ravel()
    return Configuration(np.column_stack([values.real, values.imag]))


def configuration_to_complex(config: Configuration) -> np.ndarray:
    if config.d != 2:
        raise ValueError(f"need planar points (d=2), got d={config.d}")
    return config.points[:, 0] + 1j * config.points[:, 1]


def vieta_roundtrip_error(
    roots: np.ndarray,
    tol: float = DEFAULT_ROOT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> float:
    """Quotient distance between a root tuple and its coeffs-then-roots roundtrip.

    Small values certify, at this point, that coefficient extraction and
    root recovery invert each other on orbits.
    """
    roots = np.asarray(roots, dtype=complex).ravel()
    if roots.size == 0:
        return 0.0
    recovered = coeffs_to_roots(roots_to_coeffs(roots), tol=tol, max_iter=max_iter)
    return quotient_distance_assignment(
        complex_to_configuration(roots), complex_to_configuration(recovered)
    ).value
