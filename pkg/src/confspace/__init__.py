"""Quotient metrics, covering lifts, monodromy and loop contraction for
configuration spaces of labeled points, plus the root/coefficient duality
identifying the planar quotient with complex n-space."""

from .permgroup import (
    Configuration,
    PermGroup,
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
from .metric import (
    QuotientDistanceResult,
    QuotientPoint,
    canonical_representative,
    quotient_distance,
    quotient_distance_assignment,
    quotient_point,
    rectify_cauchy_sequence,
    separation_radius,
    tuple_distance,
)
from .covering import (
    LiftResult,
    PathSamples,
    concatenate,
    evenly_covered_radius,
    lift_path,
    monodromy,
    verify_local_isometry,
)
from .homotopy import (
    AffineSubspace,
    CollisionSet,
    Polyline,
    ReductionTrace,
    avoid_triangle,
    collision_subspace,
    configuration_collision_set,
    contract_loop,
    perturbation_direction,
    polygonalize,
    polyline_clearance,
    segment_distance,
    subspace_distance,
    triangle_distance,
)
from .vieta import (
    coeffs_to_roots,
    complex_to_configuration,
    configuration_to_complex,
    root_bound,
    roots_to_coeffs,
    vieta_roundtrip_error,
)

__version__ = "0.1.0"
