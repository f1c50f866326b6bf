"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class;
the CLI and service map these onto exit codes / structured error payloads
by class name.
"""


class ConfspaceError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(ConfspaceError):
    """Operands disagree in arity, point count or ambient dimension."""


class ClosureExceedsCap(ConfspaceError):
    """Group closure grew past the enumeration cap."""


class TrivialGroup(ConfspaceError):
    """Operation needs at least one non-identity group element."""


class NonFreePoint(ConfspaceError):
    """Configuration has (nearly) coincident points, so the action is not free there."""


class AmbiguousLift(ConfspaceError):
    """A lifting step was at least as long as the local evenly-covered radius."""

    def __init__(self, message: str, step_index: int | None = None):
        super().__init__(message)
        self.step_index = step_index


class BasepointNotInFiber(ConfspaceError):
    """Requested basepoint does not project to the path's initial point."""


class NonFreeSample(ConfspaceError):
    """A path sample has coincident points."""


class EndpointMismatch(ConfspaceError):
    """Paths to concatenate do not share a quotient endpoint."""


class NotAClosedLoop(ConfspaceError):
    """Path is not closed in the quotient (or not flagged closed)."""


class NotNullHomotopic(ConfspaceError):
    """Loop has nontrivial monodromy, so no null-homotopy certificate exists."""

    def __init__(self, message: str, deck: tuple[int, ...] | None = None):
        super().__init__(message)
        self.deck = deck


class BadIndices(ConfspaceError):
    """Index pair out of range or not strictly increasing."""


class DimensionTooLow(ConfspaceError):
    """Ambient point dimension below 3; collision subspaces would have codimension < 3."""


class DegenerateTriangle(ConfspaceError):
    """Triangle vertices are (numerically) collinear."""


class PerturbationFailed(ConfspaceError):
    """Could not push a triangle off the collision set within the allowed radius."""


class SampleOnCollisionSet(ConfspaceError):
    """A sample (or a single-step chord) touches the collision set; resample finer."""


class NoConvergence(ConfspaceError):
    """Iterative root finding did not converge within the iteration budget."""

    def __init__(self, message: str, residuals: list[float] | None = None):
        super().__init__(message)
        self.residuals = residuals or []


class ParseError(ConfspaceError):
    """Input JSON is malformed; the message names the offending field."""
