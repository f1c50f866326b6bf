"""Loop contraction in the complement of codimension->=3 affine subspaces.

The configuration space of n labeled points in R^d is the complement of the
collision subspaces x_i = x_j, each an affine subspace of codimension d in
R^{nd}.  Because the codimension is at least 3, a triangle (2-dimensional)
can always be translated off any such subspace: there is a direction
orthogonal both to the triangle's plane and to the subspace's directing
space, and shifting along it strictly increases the distance.  That single
move drives everything here: a sampled loop is polygonalized by greedy
chord-taking inside its clearance tube, then repeatedly shortened by
collapsing its leading triangle after pushing it clear of the collision
set, terminating in a degenerate two-vertex loop, which certifies the
null-homotopy.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadIndices,
    DegenerateTriangle,
    DimensionTooLow,
    NotAClosedLoop,
    PerturbationFailed,
    SampleOnCollisionSet,
    ShapeMismatch,
)

INTERSECT_TOL_FACTOR = 1e-10   # scaled by (1 + max vertex norm)
COLLINEAR_TOL_FACTOR = 1e-9    # scaled by chord length
LAMBDA_UNDERFLOW_FACTOR = 1e-12  # scaled by the perturbation radius
ORTHONORMAL_TOL = 1e-12
DISTINCT_VERTEX_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class AffineSubspace:
    """An affine subspace anchor + span(basis rows), of codimension >= 3.

    ``basis`` rows are orthonormal and span the directing subspace; they may
    number zero (a single point, when the ambient dimension is >= 3).
    """

    anchor: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        anchor = np.asarray(self.anchor, dtype=float).ravel()
        basis = np.asarray(self.basis, dtype=float)
        if basis.size == 0:
            basis = basis.reshape(0, anchor.size)
        if basis.ndim != 2 or basis.shape[1] != anchor.size:
            raise ShapeMismatch(
                f"basis shape {basis.shape} does not match ambient dimension {anchor.size}"
            )
        gram = basis @ basis.T
        if basis.shape[0] and np.abs(gram - np.eye(basis.shape[0])).max() > 1e-10:
            raise ShapeMismatch("basis rows are not orthonormal")
        if anchor.size - basis.shape[0] < 3:
            raise DimensionTooLow(
                f"codimension {anchor.size - basis.shape[0]} < 3 "
                f"(ambient {anchor.size}, directing dim {basis.shape[0]})"
            )
        anchor = anchor.copy()
        anchor.flags.writeable = False
        basis = basis.copy()
        basis.flags.writeable = False
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "basis", basis)

    @property
    def ambient_dim(self) -> int:
        return self.anchor.size

    @property
    def codim(self) -> int:
        return self.anchor.size - self.basis.shape[0]

    def orth_component(self, vecs: np.ndarray) -> np.ndarray:
        """Component of vecs (shape (..., N)) orthogonal to the directing subspace."""
        vecs = np.asarray(vecs, dtype=float)
        if vecs.shape[-1] != self.ambient_dim:
            raise ShapeMismatch(
                f"vector dimension {vecs.shape[-1]} != ambient {self.ambient_dim}"
            )
        if self.basis.shape[0] == 0:
            return vecs
        return vecs - (vecs @ self.basis.T) @ self.basis

    @staticmethod
    def from_spanning(anchor: np.ndarray, vectors: np.ndarray) -> "AffineSubspace":
        """Build from an arbitrary (possibly redundant) spanning set of directions."""
        anchor = np.asarray(anchor, dtype=float).ravel()
        vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
        if vectors.shape[1] != anchor.size:
            raise ShapeMismatch("spanning vectors do not match ambient dimension")
        u, s, vh = np.linalg.svd(vectors, full_matrices=False)
        rank = int(np.sum(s > 1e-12 * max(s[0] if s.size else 0.0, 1.0)))
        return AffineSubspace(anchor=anchor, basis=vh[:rank])


@dataclass(frozen=True)
class CollisionSet:
    """A finite union of affine subspaces to stay clear of."""

    subspaces: tuple[AffineSubspace, ...]

    def __post_init__(self):
        dims = {a.ambient_dim for a in self.subspaces}
        if len(dims) > 1:
            raise ShapeMismatch(f"mixed ambient dimensions in collision set: {sorted(dims)}")

    def __iter__(self):
        return iter(self.subspaces)

    def __len__(self) -> int:
        return len(self.subspaces)


def collision_subspace(i: int, j: int, n: int, d: int) -> AffineSubspace:
    """The subspace of R^{nd} where point i coincides with point j.

    Codimension d: the orthogonal complement is spanned by
    (e_{i,a} - e_{j,a})/sqrt(2) over the d coordinate axes a.
    """
    if not (0 <= i < j < n):
        raise BadIndices(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    if d < 3:
        raise DimensionTooLow(f"point dimension {d} < 3: collision codimension would be < 3")
    nd = n * d
    rows = []
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for a in range(d):
        row = np.zeros(nd)
        row[i * d + a] = inv_sqrt2
        row[j * d + a] = inv_sqrt2
        rows.append(row)
    for m in range(n):
        if m in (i, j):
            continue
        for a in range(d):
            row = np.zeros(nd)
            row[m * d + a] = 1.0
            rows.append(row)
    return AffineSubspace(anchor=np.zeros(nd), basis=np.array(rows))


def configuration_collision_set(n: int, d: int) -> CollisionSet:
    """All pairwise collision subspaces of n points in R^d."""
    subs = [collision_subspace(i, j, n, d) for i in range(n) for j in range(i + 1, n)]
    return CollisionSet(subspaces=tuple(subs))


def intersection_tolerance(*points: np.ndarray) -> float:
    """Distances at or below this count as touching the subspace."""
    scale = max((float(np.abs(p).max()) for p in points if np.asarray(p).size), default=0.0)
    return INTERSECT_TOL_FACTOR * (1.0 + scale)


def subspace_distance(p: np.ndarray, a: AffineSubspace) -> float:
    """Distance from a point to the affine subspace."""
    p = np.asarray(p, dtype=float).ravel()
    return float(np.linalg.norm(a.orth_component(p - a.anchor)))


def segment_distance(p: np.ndarray, q: np.ndarray, a: AffineSubspace) -> float:
    """Min distance from the segment [p, q] to the subspace.

    The squared distance is a convex quadratic in the segment parameter;
    the critical point is clamped to [0, 1].  Degenerate segments reduce to
    the point distance.
    """
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    w0 = a.orth_component(p - a.anchor)
    dw = a.orth_component(q - p)
    denom = float(dw @ dw)
    if denom == 0.0:
        return float(np.linalg.norm(w0))
    s = float(np.clip(-(w0 @ dw) / denom, 0.0, 1.0))
    return float(np.linalg.norm(w0 + s * dw))


def triangle_distance(p0: np.ndarray, p1: np.ndarray, p2: np.ndarray, a: AffineSubspace) -> float:
    """Min distance from the closed triangle with those vertices to the subspace.

    Convex quadratic over the 2-simplex: checked at the unconstrained
    critical point when it lies inside, and on the three edges otherwise
    (which include the vertices).
    """
    p0 = np.asarray(p0, dtype=float).ravel()
    p1 = np.asarray(p1, dtype=float).ravel()
    p2 = np.asarray(p2, dtype=float).ravel()
    w0 = a.orth_component(p0 - a.anchor)
    wu = a.orth_component(p1 - p0)
    wv = a.orth_component(p2 - p0)
    guu = float(wu @ wu)
    gvv = float(wv @ wv)
    guv = float(wu @ wv)
    best = min(
        segment_distance(p0, p1, a),
        segment_distance(p0, p2, a),
        segment_distance(p1, p2, a),
    )
    det = guu * gvv - guv * guv
    if det > 1e-14 * max(guu, gvv, 1e-300) ** 2:
        bu = -float(w0 @ wu)
        bv = -float(w0 @ wv)
        s = (bu * gvv - bv * guv) / det
        t = (bv * guu - bu * guv) / det
        if s >= 0.0 and t >= 0.0 and s + t <= 1.0:
            interior = float(np.linalg.norm(w0 + s * wu + t * wv))
            best = min(best, interior)
    return best


def perturbation_direction(
    p0: np.ndarray, p1: np.ndarray, p2: np.ndarray, a: AffineSubspace
) -> np.ndarray:
    """A unit vector orthogonal to the triangle's plane and to the subspace.

    Exists because the plane contributes dimension 2 and the directing
    subspace at most N-3, leaving at least one orthogonal direction.
    Shifting the whole triangle along it strictly increases the distance to
    the subspace whenever the triangle's plane meets it.
    """
    p0 = np.asarray(p0, dtype=float).ravel()
    p1 = np.asarray(p1, dtype=float).ravel()
    p2 = np.asarray(p2, dtype=float).ravel()
    u = p1 - p0
    v = p2 - p0
    sv = np.linalg.svd(np.vstack([u, v]), compute_uv=False)
    if sv[1] <= 1e-12 * max(sv[0], 1.0):
        raise DegenerateTriangle("triangle vertices are numerically collinear")
    stacked = np.vstack([u, v, a.basis]) if a.basis.shape[0] else np.vstack([u, v])
    _, _, vh = np.linalg.svd(stacked, full_matrices=True)
    t = vh[-1]
    # deterministic sign: first sufficiently large component positive
    for comp in t:
        if abs(comp) > 1e-8:
            if comp < 0:
                t = -t
            break
    return t / np.linalg.norm(t)


def _translate(tri: np.ndarray, shift: np.ndarray) -> np.ndarray:
    return tri + shift[None, :]


def avoid_triangle(
    p0: np.ndarray,
    p1: np.ndarray,
    p2: np.ndarray,
    collision: CollisionSet,
    radius: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Translate the triangle until it clears every subspace in the set.

    One subspace at a time: shift all three vertices along the perturbation
    direction for the offending subspace, starting at radius/2 and halving
    until the shift clears it, keeps every previously clear subspace clear,
    and keeps the total displacement under ``radius``.  The result is
    re-verified against the whole set; nothing is trusted from the
    construction alone.
    """
    tri = np.vstack([np.asarray(p, dtype=float).ravel() for p in (p0, p1, p2)])
    orig = tri.copy()
    tol = intersection_tolerance(*tri)
    for vert in tri:
        for a in collision:
            if subspace_distance(vert, a) <= tol:
                raise SampleOnCollisionSet("a triangle vertex touches the collision set")

    max_rounds = 20 * max(len(collision), 1)
    for _ in range(max_rounds):
        distances = [triangle_distance(tri[0], tri[1], tri[2], a) for a in collision]
        offending = [k for k, dist in enumerate(distances) if dist <= tol]
        if not offending:
            break
        target = collision.subspaces[offending[0]]
        clear = [collision.subspaces[k] for k, dist in enumerate(distances) if dist > tol]
        direction = perturbation_direction(tri[0], tri[1], tri[2], target)
        lam = radius / 2.0
        while True:
            cand = _translate(tri, lam * direction)
            displacement = float(np.linalg.norm(cand[0] - orig[0]))
            ok = (
                displacement < radius
                and triangle_distance(cand[0], cand[1], cand[2], target) > tol
                and all(triangle_distance(cand[0], cand[1], cand[2], b) > tol for b in clear)
            )
            if ok:
                tri = cand
                break
            lam /= 2.0
            if lam < LAMBDA_UNDERFLOW_FACTOR * radius:
                raise PerturbationFailed(
                    f"shift underflow below {LAMBDA_UNDERFLOW_FACTOR:.0e} * radius "
                    f"while clearing a subspace (radius {radius:.3e})"
                )
    else:
        raise PerturbationFailed("perturbation rounds exhausted without clearing the set")

    for a in collision:
        if triangle_distance(tri[0], tri[1], tri[2], a) <= tol:
            raise PerturbationFailed("post-check failed: triangle still touches the set")
    return tri[0], tri[1], tri[2]


@dataclass(frozen=True, eq=False)
class Polyline:
    """An ordered chain of vertices in R^N; closed chains wrap around."""

    vertices: np.ndarray
    closed: bool = False

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[0] < 1:
            raise ShapeMismatch(f"polyline needs a (m>=1, N) vertex array, got {verts.shape}")
        steps = np.linalg.norm(np.diff(verts, axis=0), axis=1)
        if steps.size and steps.min() <= DISTINCT_VERTEX_TOL:
            raise ShapeMismatch("consecutive polyline vertices coincide")
        if self.closed and verts.shape[0] > 2:
            if np.linalg.norm(verts[-1] - verts[0]) <= DISTINCT_VERTEX_TOL:
                raise ShapeMismatch("closed polyline must not repeat its first vertex")
        verts = verts.copy()
        verts.flags.writeable = False
        object.__setattr__(self, "vertices", verts)

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]

    def segments(self) -> list[tuple[np.ndarray, np.ndarray]]:
        verts = self.vertices
        segs = [(verts[k], verts[k + 1]) for k in range(len(verts) - 1)]
        if self.closed:
            segs.append((verts[-1], verts[0]))
        return segs


def polyline_clearance(poly: Polyline, collision: CollisionSet) -> float:
    """Min distance from every segment of the chain to every subspace."""
    if not len(collision):
        return float("inf")
    return min(
        segment_distance(p, q, a) for (p, q) in poly.segments() for a in collision
    )


def polygonalize(samples: np.ndarray, collision: CollisionSet, closed: bool = False) -> Polyline:
    """Greedy chord-taking through a dense clear sample sequence.

    From each kept vertex, advance to the farthest later sample whose chord
    clears every subspace by more than the bypassed arc's deviation from the
    chord (matched-parameter sagitta).  Every state of the straight-line
    homotopy from arc to chord, the arc itself included, then keeps positive
    distance to the collision set.  Single-step chords have zero sagitta:
    they are the sampled path itself and only need to be clear.  Output
    vertices are a subsequence of the input samples with endpoints kept.
    """
    pts = np.asarray(samples, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ShapeMismatch(f"need a (m>=2, N) sample array, got {pts.shape}")
    tol = intersection_tolerance(pts)
    for k, p in enumerate(pts):
        dist = min((subspace_distance(p, a) for a in collision), default=float("inf"))
        if dist <= tol:
            raise SampleOnCollisionSet(f"sample {k} touches the collision set")

    def sagitta(i: int, j: int) -> float:
        """Max displacement between arc samples and their matched chord points."""
        if j == i + 1:
            return 0.0
        fractions = (np.arange(i + 1, j) - i) / (j - i)
        matched = pts[i][None, :] + fractions[:, None] * (pts[j] - pts[i])[None, :]
        return float(np.linalg.norm(pts[i + 1 : j] - matched, axis=1).max())

    def chord_ok(i: int, j: int) -> bool:
        margin = sagitta(i, j) + tol
        return all(segment_distance(pts[i], pts[j], a) > margin for a in collision)

    kept = [0]
    i = 0
    m = pts.shape[0]
    while i < m - 1:
        j = m - 1
        while j > i + 1 and not chord_ok(i, j):
            j -= 1
        if j == i + 1 and not chord_ok(i, j):
            raise SampleOnCollisionSet(
                f"chord between consecutive samples {i}, {i + 1} crosses the collision "
                "set; the sampling is too coarse"
            )
        kept.append(j)
        i = j

    rows = [pts[kept[0]]]
    for k in kept[1:]:
        if np.linalg.norm(pts[k] - rows[-1]) > DISTINCT_VERTEX_TOL:
            rows.append(pts[k])
    verts = np.vstack(rows)
    if closed and verts.shape[0] > 1 and np.linalg.norm(verts[-1] - verts[0]) <= DISTINCT_VERTEX_TOL:
        verts = verts[:-1]
    if closed and verts.shape[0] >= 3:
        # wrap chord (only present when the input did not end on its start)
        if not all(segment_distance(verts[-1], verts[0], a) > tol for a in collision):
            raise SampleOnCollisionSet("closing chord crosses the collision set")
    return Polyline(vertices=verts, closed=closed)


@dataclass(frozen=True, eq=False)
class TraceEvent:
    """One reduction step; ``polyline_after`` snapshots the chain for audit."""

    kind: str  # "perturb" | "collapse" | "merge"
    removed: np.ndarray | None
    triangle: np.ndarray | None
    before: np.ndarray | None
    after: np.ndarray | None
    vertex_count_after: int
    clearance_after: float
    polyline_after: np.ndarray


@dataclass(frozen=True, eq=False)
class ReductionTrace:
    """The audit log of a loop contraction."""

    events: tuple[TraceEvent, ...]
    final: Polyline

    @property
    def collapse_count(self) -> int:
        return sum(1 for e in self.events if e.kind == "collapse")


def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    chord = b - a
    denom = float(chord @ chord)
    if denom == 0.0:
        return float(np.linalg.norm(p - a))
    s = float(np.clip(((p - a) @ chord) / denom, 0.0, 1.0))
    return float(np.linalg.norm(p - a - s * chord))


def _clearance_of(verts: list[np.ndarray], collision: CollisionSet) -> float:
    if not len(collision):
        return float("inf")
    best = float("inf")
    m = len(verts)
    for k in range(m):
        p, q = verts[k], verts[(k + 1) % m]
        for a in collision:
            best = min(best, segment_distance(p, q, a))
    return best


def contract_loop(loop: Polyline, collision: CollisionSet) -> ReductionTrace:
    """Contract a closed clear polygonal loop to a degenerate two-vertex chain.

    Repeats: merge collinear consecutive triples; then perturb the first
    three vertices within half the polygon clearance so their triangle
    misses the collision set, and delete the middle one (the triangle is
    the homotopy).  Every intermediate chain stays clear, which the trace
    records; vertex count strictly decreases, so this terminates.
    """
    if not loop.closed:
        raise NotAClosedLoop("contraction needs a closed polyline")
    verts: list[np.ndarray] = [v.copy() for v in loop.vertices]
    events: list[TraceEvent] = []

    def snapshot() -> np.ndarray:
        return np.vstack(verts)

    def record(kind: str, **kw) -> None:
        events.append(
            TraceEvent(
                kind=kind,
                removed=kw.get("removed"),
                triangle=kw.get("triangle"),
                before=kw.get("before"),
                after=kw.get("after"),
                vertex_count_after=len(verts),
                clearance_after=_clearance_of(verts, collision),
                polyline_after=snapshot(),
            )
        )

    def merge_collinear() -> None:
        changed = True
        while changed and len(verts) > 2:
            changed = False
            m = len(verts)
            for k in range(m):
                a = verts[(k - 1) % m]
                b = verts[k]
                c = verts[(k + 1) % m]
                chord = float(np.linalg.norm(c - a))
                drop = False
                if float(np.linalg.norm(b - a)) <= DISTINCT_VERTEX_TOL or (
                    float(np.linalg.norm(c - b)) <= DISTINCT_VERTEX_TOL
                ):
                    drop = True
                elif chord > DISTINCT_VERTEX_TOL:
                    drop = _point_segment_distance(b, a, c) < COLLINEAR_TOL_FACTOR * chord
                if drop:
                    removed = verts.pop(k)
                    record("merge", removed=removed)
                    changed = True
                    break

    merge_collinear()
    while len(verts) > 2:
        clearance = _clearance_of(verts, collision)
        if clearance <= intersection_tolerance(*verts):
            raise PerturbationFailed(
                f"polygon clearance {clearance:.3e} vanished during contraction"
            )
        before = np.vstack([verts[0], verts[1], verts[2]])
        q0, q1, q2 = avoid_triangle(verts[0], verts[1], verts[2], collision, clearance / 2.0)
        moved = float(np.linalg.norm(np.vstack([q0, q1, q2]) - before))
        if moved > 0.0:
            verts[0], verts[1], verts[2] = q0, q1, q2
            record("perturb", before=before, after=np.vstack([q0, q1, q2]))
        removed = verts.pop(1)
        record("collapse", triangle=np.vstack([q0, q1, q2]), removed=removed)
        merge_collinear()

    if len(verts) == 2 and float(np.linalg.norm(verts[0] - verts[1])) <= DISTINCT_VERTEX_TOL:
        removed = verts.pop(1)
        record("merge", removed=removed)
    final = Polyline(vertices=np.vstack(verts), closed=True)
    return ReductionTrace(events=tuple(events), final=final)
