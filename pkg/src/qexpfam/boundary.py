"""Mean value set boundaries of two-dimensional families.

The mean value set is the orthogonal projection of state space onto the
tangent plane.  A sweep walks the unit directions u(alpha) = cos(alpha) v1 +
sin(alpha) v2, records the support value (the largest eigenvalue of u) and
the exposed face it cuts out.  The face projects INTO the supporting line, so
it is a point or a segment; its endpoints are extreme states, i.e. top and
bottom eigenvectors of the orthogonal sweep direction compressed to the
maximal eigenspace, block by block.

Segments appear exactly where the two largest eigenvalue branches of u(alpha)
cross.  Crossings between grid angles are located by minimizing the spectral
gap, so tangent segments are found even when no grid direction hits their
normal exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import defaults
from .errors import PreconditionError, UnderResolvedSweepError
from .family import ExponentialFamily


@dataclass(frozen=True)
class BoundaryFace:
    """Exposed face of the mean value set in one sweep direction.

    endpoints holds the two extreme points in tangent coordinates (equal for
    a point face); dim is 0 for a point, 1 for a segment.
    """

    alpha: float
    support_value: float
    endpoints: tuple[tuple[float, float], tuple[float, float]]
    dim: int
    multiplicity: int
    refined: bool = False

    @property
    def length(self) -> float:
        (a1, a2), (b1, b2) = self.endpoints
        return float(np.hypot(b1 - a1, b2 - a2))


@dataclass(frozen=True)
class MeanValueBoundary:
    """Swept boundary of a 2D mean value set, faces ordered by angle."""

    family: ExponentialFamily
    n_angles: int
    faces: tuple[BoundaryFace, ...]

    def scale(self) -> float:
        pts = np.array([e for f in self.faces for e in f.endpoints])
        if len(pts) < 2:
            return 1.0
        span = pts.max(axis=0) - pts.min(axis=0)
        return max(float(np.hypot(*span)), 1e-12)

    def segments(self, tol: float | None = None) -> list[BoundaryFace]:
        if tol is None:
            tol = 1e-7 * (1.0 + self.scale())
        return [f for f in self.faces if f.length > tol]


@dataclass(frozen=True)
class BoundaryClassification:
    """Segment endpoints of the boundary labelled exposed / non-exposed."""

    vertices: tuple[tuple[tuple[float, float], str], ...]

    @property
    def nonexposed(self) -> list[tuple[float, float]]:
        return [v for v, label in self.vertices if label == "non-exposed"]

    @property
    def n_nonexposed(self) -> int:
        return len(self.nonexposed)


class _SweepKernel:
    """Raw-block evaluation of sweep directions; avoids per-angle object churn."""

    def __init__(self, family: ExponentialFamily):
        self.family = family
        self.v1 = [np.asarray(b) for b in family.basis[0].blocks]
        self.v2 = [np.asarray(b) for b in family.basis[1].blocks]

    def blocks(self, alpha: float) -> list[np.ndarray]:
        c, s = np.cos(alpha), np.sin(alpha)
        return [c * b1 + s * b2 for b1, b2 in zip(self.v1, self.v2)]

    def top_gap(self, alpha: float) -> float:
        """Gap between the two largest eigenvalues of u(alpha), over all blocks."""
        w = np.sort(np.concatenate([np.linalg.eigvalsh(b) for b in self.blocks(alpha)]))
        return float(w[-1] - w[-2])

    def face(self, alpha: float, refined: bool = False) -> BoundaryFace:
        c, s = np.cos(alpha), np.sin(alpha)
        perp = [-s * b1 + c * b2 for b1, b2 in zip(self.v1, self.v2)]
        spectra = [np.linalg.eigh(b) for b in self.blocks(alpha)]
        mu = max(float(w[-1]) for w, _ in spectra)
        best_hi, best_lo = None, None
        hi_val, lo_val = -np.inf, np.inf
        mult = 0
        for k, (w, V) in enumerate(spectra):
            keep = w >= mu - defaults.MAX_EIG_GAP
            r = int(keep.sum())
            if r == 0:
                continue
            mult += r
            Q = V[:, keep]
            small = Q.conj().T @ perp[k] @ Q
            vals, Y = np.linalg.eigh(small)
            if vals[-1] > hi_val:
                hi_val, best_hi = float(vals[-1]), (k, Q @ Y[:, -1])
            if vals[0] < lo_val:
                lo_val, best_lo = float(vals[0]), (k, Q @ Y[:, 0])

        def point(block, psi):
            return (
                float((psi.conj() @ self.v1[block] @ psi).real),
                float((psi.conj() @ self.v2[block] @ psi).real),
            )

        e_hi = point(*best_hi)
        e_lo = point(*best_lo)
        sep = np.hypot(e_hi[0] - e_lo[0], e_hi[1] - e_lo[1])
        dim = 1 if sep > 1e-7 * (1.0 + abs(mu)) else 0
        return BoundaryFace(
            alpha=float(alpha),
            support_value=mu,
            endpoints=(e_lo, e_hi),
            dim=dim,
            multiplicity=mult,
            refined=refined,
        )


def _refine_kink(kernel: _SweepKernel, lo: float, hi: float) -> float | None:
    """Ternary search for an eigenvalue crossing of u(alpha) in (lo, hi)."""
    for _ in range(200):
        if hi - lo < 1e-13:
            break
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if kernel.top_gap(m1) <= kernel.top_gap(m2):
            hi = m2
        else:
            lo = m1
    alpha = 0.5 * (lo + hi)
    if kernel.top_gap(alpha) <= defaults.MAX_EIG_GAP:
        return alpha
    return None


def mean_value_boundary_sweep(
    family: ExponentialFamily, n_angles: int = defaults.SWEEP_ANGLES
) -> MeanValueBoundary:
    """Sweep the boundary of the mean value set of a 2D family.

    Emits one face per grid angle plus one per located eigenvalue crossing;
    deterministic order by angle.
    """
    if family.dim != 2:
        raise PreconditionError("boundary sweeps require a 2D tangent space")
    if family.support is not None:
        raise PreconditionError("boundary sweeps require a full-algebra family")
    kernel = _SweepKernel(family)
    alphas = np.linspace(0.0, 2.0 * np.pi, int(n_angles), endpoint=False)
    faces = [kernel.face(a) for a in alphas]
    gaps = np.array([kernel.top_gap(a) for a in alphas])

    kinks: list[float] = []
    n = len(alphas)
    for j in range(n):
        if gaps[j] <= gaps[(j - 1) % n] and gaps[j] <= gaps[(j + 1) % n]:
            lo = alphas[j] - 2.0 * np.pi / n
            hi = alphas[j] + 2.0 * np.pi / n
            found = _refine_kink(kernel, lo, hi)
            if found is not None:
                found %= 2.0 * np.pi
                if not any(abs(found - k) < 1e-9 for k in kinks):
                    kinks.append(found)
    grid_set = {float(a) for a in alphas}
    for alpha in kinks:
        if not any(abs(alpha - g) < 1e-12 for g in grid_set):
            faces.append(kernel.face(alpha, refined=True))

    faces.sort(key=lambda f: f.alpha)
    return MeanValueBoundary(family=family, n_angles=int(n_angles), faces=tuple(faces))


def classify_boundary_faces(boundary: MeanValueBoundary) -> BoundaryClassification:
    """Label every segment endpoint of the boundary exposed or non-exposed.

    An endpoint is exposed when some sweep direction cuts out exactly that
    point; it is non-exposed when nearby directions only expose points
    converging to it (the tangent-point situation).  Gaps in between mean the
    sweep cannot decide and a finer grid is requested.
    """
    if boundary.n_angles < defaults.SWEEP_MIN_ANGLES:
        raise UnderResolvedSweepError(
            f"need at least {defaults.SWEEP_MIN_ANGLES} sweep angles to "
            f"classify faces, got {boundary.n_angles}"
        )
    scale = boundary.scale()
    tol_same = 1e-6 * scale
    step = 2.0 * np.pi / boundary.n_angles
    tol_near = 20.0 * step * scale

    points = np.array(
        [f.endpoints[0] for f in boundary.faces if f.dim == 0], dtype=float
    )
    segments = boundary.segments()

    # distinct endpoints over all segments
    endpoints: list[tuple[float, float]] = []
    for seg in segments:
        for e in seg.endpoints:
            if not any(np.hypot(e[0] - q[0], e[1] - q[1]) <= tol_same for q in endpoints):
                endpoints.append(e)

    vertices = []
    for t in endpoints:
        if points.size:
            dist = float(np.min(np.hypot(points[:, 0] - t[0], points[:, 1] - t[1])))
        else:
            dist = np.inf
        if dist <= tol_same:
            vertices.append((t, "exposed"))
        elif dist <= tol_near:
            vertices.append((t, "non-exposed"))
        else:
            raise UnderResolvedSweepError(
                f"no point face near segment endpoint {t} (closest {dist:.3e}); "
                "request a finer grid"
            )
    return BoundaryClassification(vertices=tuple(vertices))
