"""The Mat(2,C) + C cone model and its two named families.

State space of this algebra is a 4D cone over the Bloch ball.  Every 2D
linear family can be rotated into the 3D slice U = span{s1, s2} + R z with
z = -id2/2 + 1, whose closure is the cone C over the base disk K with apex
0_2 + 1.  The angle between the tangent plane and z decides the shape of the
mean value set: a triangle at 0, an ellipse with a corner and two non-exposed
tangent points below pi/3, an ellipse from pi/3 on.

The dividing angle pi/3 belongs to the Staffelberg family, whose entropy
distance is discontinuous at the base-circle state rho(0); the swallow family
at arccos(sqrt(2/5)) has two non-exposed faces but a continuous distance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .boundary import classify_boundary_faces, mean_value_boundary_sweep
from .closures import geodesic_closure_atlas, reduce_distance_to_face, rI_membership
from .errors import PreconditionError
from .family import (
    ExponentialFamily,
    distance_continuation,
    entropy_distance,
    exp1,
    ln0,
    make_family,
    project_to_family,
)
from .findings import Report
from .linalg import (
    Algebra,
    HermitianElement,
    embed_block,
    hs_inner,
    identity,
    traceless_part,
    zero,
)
from .states import Projector, State, relative_entropy, tracial_state

ALGEBRA = Algebra((2, 1))

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def pauli(i: int) -> HermitianElement:
    """sigma_i + 0, the Pauli matrices embedded in the first block."""
    return embed_block(ALGEBRA, 0, (SIGMA1, SIGMA2, SIGMA3)[i - 1])


def unit() -> HermitianElement:
    """0_2 + 1, the apex direction."""
    return embed_block(ALGEBRA, 1, np.array([[1.0]]))


def apex_state() -> State:
    return State(unit())


def z_element() -> HermitianElement:
    """z = -id2/2 + 1, the traceless axis direction of the cone."""
    return embed_block(ALGEBRA, 0, -0.5 * np.eye(2)) + unit()


def base_circle_state(alpha: float) -> State:
    """Pure state (id2 + sin(a) s1 + cos(a) s2)/2 + 0 on the base circle."""
    b = np.sin(alpha) * SIGMA1 + np.cos(alpha) * SIGMA2
    return State(embed_block(ALGEBRA, 0, 0.5 * (np.eye(2) + b)))


def midpoint_state() -> State:
    """c, the midpoint of the generating line [rho(0), apex]."""
    return State(0.5 * base_circle_state(0.0).element + 0.5 * unit())


@dataclass(frozen=True)
class ConeModel:
    """Fixed constants of the 3D cone picture (all in ALGEBRA)."""

    z: HermitianElement = field(default_factory=z_element)
    apex: HermitianElement = field(default_factory=unit)
    axis_base: HermitianElement = field(
        default_factory=lambda: embed_block(ALGEBRA, 0, 0.5 * np.eye(2))
    )
    base_radius: float = 1.0 / np.sqrt(2.0)

    @property
    def z_hat(self) -> HermitianElement:
        return self.z / self.z.norm()

    def height(self, a: HermitianElement) -> float:
        """Coordinate of a along the unit cone axis, centered at tracial."""
        third = identity(ALGEBRA) / 3.0
        return hs_inner(a - third, self.z_hat)

    def radius(self, a: HermitianElement) -> float:
        s1h = pauli(1) / pauli(1).norm()
        s2h = pauli(2) / pauli(2).norm()
        return float(np.hypot(hs_inner(a, s1h), hs_inner(a, s2h)))

    @property
    def apex_height(self) -> float:
        return self.height(self.apex)

    @property
    def base_height(self) -> float:
        return self.height(base_circle_state(0.0).element)

    def cone_coordinates(self, a: HermitianElement) -> tuple[float, float]:
        return self.height(a), self.radius(a)

    def contains(self, a: HermitianElement, tol: float = 1e-9) -> bool:
        """Membership of a point of the affine slice (1/3)id + U in the cone."""
        h, r = self.cone_coordinates(a)
        if h < self.base_height - tol or h > self.apex_height + tol:
            return False
        frac = (self.apex_height - h) / (self.apex_height - self.base_height)
        return r <= self.base_radius * frac + tol

    def boundary_distance(self, a: HermitianElement) -> float:
        """Distance of (h, r) cone coordinates to the boundary (2D section)."""
        h, r = self.cone_coordinates(a)
        hb, ha, rb = self.base_height, self.apex_height, self.base_radius
        # lateral line in the (r, h) half plane through (rb, hb) and (0, ha)
        t = np.hypot(ha - hb, rb)
        lateral = abs((ha - hb) * r + rb * h - rb * ha) / t
        base = abs(h - hb)
        return float(min(lateral, base))


def project_to_slice(a: HermitianElement) -> HermitianElement:
    """Orthogonal projection onto U = span{s1, s2} + R z."""
    out = zero(ALGEBRA)
    for d in (pauli(1), pauli(2), z_element()):
        d = d / d.norm()
        out = out + hs_inner(a, d) * d
    return out


def plane_for_angle(phi: float) -> ExponentialFamily:
    """Canonical 2D plane in U making angle phi with the axis direction z.

    The representative is span{s1, sin(phi) s2_hat + cos(phi) z_hat}; its
    mean value set realizes the metamorphosis shape for this angle.
    """
    if not 0.0 <= phi <= np.pi / 2.0 + 1e-12:
        raise PreconditionError(f"angle {phi} outside [0, pi/2]")
    s2h = pauli(2) / pauli(2).norm()
    zh = z_element() / z_element().norm()
    second = float(np.sin(phi)) * s2h + float(np.cos(phi)) * zh
    return make_family(ALGEBRA, [pauli(1), second])


def angle_of_plane(family: ExponentialFamily) -> float:
    """Angle between the tangent plane and z: arccos(|pi_V(z)| / |z|).

    Reproduces pi/3 for the Staffelberg plane and arccos(sqrt(2/5)) for the
    swallow plane.  The plane must lie inside the slice U.
    """
    if family.dim != 2:
        raise PreconditionError("angle is defined for 2D planes")
    z = z_element()
    for v in family.basis:
        resid = v - project_to_slice(v)
        if resid.norm() > 1e-9:
            raise PreconditionError("plane is not contained in the slice U")
    proj = np.hypot(*(hs_inner(z, v) for v in family.basis))
    return float(np.arccos(np.clip(proj / z.norm(), -1.0, 1.0)))


class MeanValueShape(enum.Enum):
    TRIANGLE = "triangle"
    ELLIPSE_WITH_CORNER = "ellipse_with_corner"
    ELLIPSE = "ellipse"

    @property
    def n_nonexposed(self) -> int:
        return 2 if self is MeanValueShape.ELLIPSE_WITH_CORNER else 0


def classify_by_angle(phi: float) -> MeanValueShape:
    """Shape of the mean value set at angle phi.

    Triangle at 0; ellipse plus corner with two non-exposed tangent points on
    (0, pi/3); ellipse from pi/3 to pi/2 (the apex projects onto the ellipse).
    """
    if not 0.0 <= phi <= np.pi / 2.0 + 1e-12:
        raise PreconditionError(f"angle {phi} outside [0, pi/2]")
    if phi == 0.0:
        return MeanValueShape.TRIANGLE
    if phi < np.pi / 3.0 - 1e-12:
        return MeanValueShape.ELLIPSE_WITH_CORNER
    return MeanValueShape.ELLIPSE


# -- named families -------------------------------------------------------------


def staffelberg_family() -> ExponentialFamily:
    """The linear family generated by s1 + 0 and s2 + 1 (angle pi/3)."""
    return make_family(ALGEBRA, [pauli(1), pauli(2) + unit()])


def swallow_family() -> ExponentialFamily:
    """The linear family generated by s1 + 1 and s2 + 1 (angle arccos sqrt(2/5))."""
    return make_family(ALGEBRA, [pauli(1) + unit(), pauli(2) + unit()])


def staffelberg_direction(alpha: float) -> HermitianElement:
    """u(alpha) = sin(a)(s1 + 0) + cos(a)(s2 + 1); maximal eigenvalue 1."""
    return float(np.sin(alpha)) * pauli(1) + float(np.cos(alpha)) * (pauli(2) + unit())


def staffelberg_sigma(alpha: float, t: float) -> State:
    """Closed-form polar parametrization of the Staffelberg family.

    sigma(alpha, t) = [id2 cosh(t) + (sin a s1 + cos a s2) sinh(t)
                       + e^{t cos a}] / T with T = 2 cosh(t) + e^{t cos a};
    equals exp1(t u(alpha)) to machine precision.
    """
    if t < 0:
        raise PreconditionError("the polar parameter t must be nonnegative")
    ca = float(np.cos(alpha))
    m = max(t, ca * t)  # common exponential scale, keeps large t finite
    ch = 0.5 * (np.exp(t - m) + np.exp(-t - m))
    sh = 0.5 * (np.exp(t - m) - np.exp(-t - m))
    e3 = np.exp(ca * t - m)
    T = 2.0 * ch + e3
    b = np.sin(alpha) * SIGMA1 + ca * SIGMA2
    block1 = (np.eye(2) * ch + b * sh) / T
    return State(
        embed_block(ALGEBRA, 0, block1) + (e3 / T) * unit()
    )


def staffelberg_v3() -> HermitianElement:
    """v3 = -rho(0) + 1, the normal completing the tangent basis inside U."""
    return -1.0 * base_circle_state(0.0).element + unit()


def staffelberg_z_certificate(alpha: float, t: float) -> tuple[float, float]:
    """The half-space certificate z(alpha,t) = T <sigma, v3> and its t-derivative.

    z = -cos(a) sinh(t) - cosh(t) + e^{t cos(a)} is nonpositive for t >= 0,
    which keeps the family on one side of the hyperplane through c.
    """
    ca = np.cos(alpha)
    value = -ca * np.sinh(t) - np.cosh(t) + np.exp(ca * t)
    deriv = -ca * np.cosh(t) - np.sinh(t) + ca * np.exp(ca * t)
    return float(value), float(deriv)


def staffelberg_tau_path(lam: float, t: float) -> tuple[State, State]:
    """The boundary-segment approximation path inside the family.

    For 0 < lam < 1 the angle a(t) = sqrt((2/t) ln((2-lam)/lam)) makes
    sigma(a(t), t) converge to tau(lam) = (1 - lam/2) rho(0) + (lam/2) apex as
    t grows.  Returns (sigma(a(t), t), tau(lam)).
    """
    if not 0.0 < lam < 1.0:
        raise PreconditionError("lam must be in (0, 1)")
    if t <= 0.0:
        raise PreconditionError("t must be positive")
    ratio = (2.0 - lam) / lam
    alpha = np.sqrt(2.0 * np.log(ratio) / t)
    tau = State(
        (1.0 - lam / 2.0) * base_circle_state(0.0).element + (lam / 2.0) * unit()
    )
    return staffelberg_sigma(alpha, t), tau


def swallow_direction(alpha: float) -> HermitianElement:
    """u(alpha) = sin(a)(s1 + 1) + cos(a)(s2 + 1) for the swallow family."""
    return float(np.sin(alpha)) * (pauli(1) + unit()) + float(np.cos(alpha)) * (
        pauli(2) + unit()
    )


def swallow_bilinear(a: HermitianElement, b: HermitianElement) -> float:
    """Affine quadric whose zero set is the projected base circle.

    beta(a,b) = eta(a)eta(b) + xi(a)xi(b) + (eta + xi)(a + b)/3 - 7/9 with
    eta = <., s1 + 1 - id/3> and xi = <., s2 + 1 - id/3>.  It vanishes on all
    circle states and pairs the apex to exactly the two tangent points.
    """
    v1 = traceless_part(pauli(1) + unit())
    v2 = traceless_part(pauli(2) + unit())
    eta_a, eta_b = hs_inner(a, v1), hs_inner(b, v1)
    xi_a, xi_b = hs_inner(a, v2), hs_inner(b, v2)
    return eta_a * eta_b + xi_a * xi_b + (eta_a + eta_b + xi_a + xi_b) / 3.0 - 7.0 / 9.0


def swallow_polar_tangents() -> tuple[np.ndarray, np.ndarray]:
    """Tangent points of the two tangent lines from the projected apex.

    Computed via the polar of the apex with respect to the projected base
    circle; they are the mean-value images of rho(0) and rho(pi/2).
    """
    fam = swallow_family()
    from .family import mean_value_projection

    t1 = mean_value_projection(base_circle_state(0.0).element, fam)
    t2 = mean_value_projection(base_circle_state(np.pi / 2.0).element, fam)
    return t1, t2


# -- cone identities --------------------------------------------------------------


def cone_identity_residuals(
    n_samples: int = 200, rng: np.random.Generator | None = None
) -> Report:
    """Check the three ways the cone describes the state space.

    (i) the projection of any state onto the slice U lands in the centered
    cone, and the cone's extreme points are hit by extreme states; (ii) the
    slice through the tracial state meets state space exactly in the cone;
    (iii) exp1 of slice directions stays in the cone and reaches every
    relative-interior point.
    """
    from .sampling import random_state

    if rng is None:
        rng = np.random.default_rng(0)
    cone = ConeModel()
    third = identity(ALGEBRA) / 3.0
    report = Report(name="cone_identities")

    # (i) projection identity
    worst = 0.0
    for _ in range(n_samples):
        rho = random_state(ALGEBRA, rng, invertible=False)
        y = project_to_slice(rho.element - third) + third
        worst = max(worst, 0.0 if cone.contains(y) else cone.boundary_distance(y))
    report.add("projection_in_cone", f"{n_samples} random states", worst, 1e-9)

    worst = 0.0
    for alpha in np.linspace(0.0, 2.0 * np.pi, 36, endpoint=False):
        y = project_to_slice(base_circle_state(alpha).element - third) + third
        worst = max(worst, cone.boundary_distance(y))
    y = project_to_slice(apex_state().element - third) + third
    worst = max(worst, cone.boundary_distance(y))
    report.add("extreme_points_on_boundary", "base circle and apex", worst, 1e-9)

    # (ii) slice-intersection identity: positivity iff cone membership
    disagreements = 0
    for _ in range(n_samples):
        u = (
            rng.normal() * pauli(1) / pauli(1).norm()
            + rng.normal() * pauli(2) / pauli(2).norm()
            + rng.normal() * z_element() / z_element().norm()
        ) * 0.45
        y = third + u
        is_state = min(np.linalg.eigvalsh(y.blocks[0]).min(), y.blocks[1][0, 0].real) >= -1e-9
        in_cone = cone.contains(y)
        margin = cone.boundary_distance(y)
        if is_state != in_cone and margin > 1e-9:
            disagreements += 1
    report.add(
        "slice_intersection", f"{n_samples} slice points", float(disagreements), 0.0
    )

    # (iii) exp1(U) inside the cone, and onto its relative interior
    worst = 0.0
    for _ in range(n_samples):
        u = (
            rng.normal() * pauli(1)
            + rng.normal() * pauli(2)
            + rng.normal() * z_element()
        )
        y = exp1(u).element
        worst = max(worst, 0.0 if cone.contains(y) else cone.boundary_distance(y))
    report.add("exp1_in_cone", f"{n_samples} slice directions", worst, 1e-9)

    worst_norm, worst_theta = 0.0, 0.0
    for _ in range(n_samples):
        s = rng.uniform(0.1, 1.0)
        alpha = rng.uniform(0.0, 2.0 * np.pi)
        h = rng.uniform(0.0, 1.0)
        extreme = (1.0 - h) * base_circle_state(alpha).element + h * apex_state().element
        target = State(s * third + (1.0 - s) * extreme)
        theta = ln0(target)
        resid = (theta - project_to_slice(theta)).norm()
        worst = max(worst, resid)
        approx = exp1(theta)
        worst_norm = max(worst_norm, (approx.element - target.element).norm())
        worst_theta = max(worst_theta, theta.norm())
    report.add("interior_chart_in_slice", "ln0 of interior points lies in U", worst, 1e-9)
    report.add(
        "interior_approximation",
        f"exp1(U) reaches interior points (max |theta| {worst_theta:.2f})",
        worst_norm,
        1e-6,
    )
    report.add("interior_parameter_cap", "parameter norm stays below 60", worst_theta, 60.0)
    return report


# -- family reports ----------------------------------------------------------------


def staffelberg_report(rng: np.random.Generator | None = None) -> Report:
    """Numerical witnesses for the Staffelberg closure structure.

    Covers the closure atlas, the distance formula S(. , c) on the boundary
    segment, the ln(2) discontinuity at rho(0), the tau-path approximations
    of [rho(0), c] and the half-space certificate excluding ]c, apex].
    """
    if rng is None:
        rng = np.random.default_rng(0)
    fam = staffelberg_family()
    report = Report(name="staffelberg")
    c = midpoint_state()
    rho0 = base_circle_state(0.0)
    p2c = Projector(rho0.element + unit())

    # (a) closure atlas: punctured base circle plus the singleton {c}
    atlas = geodesic_closure_atlas(fam)
    spikes = atlas.spike_groups()
    report.add("atlas_one_spike", "exactly one crossing direction", float(len(spikes)), 1.0,
               ok=len(spikes) == 1)
    if spikes:
        g = spikes[0]
        angle = min(g.alpha_lo % (2 * np.pi), 2 * np.pi - g.alpha_lo % (2 * np.pi))
        report.add("atlas_spike_angle", "crossing at alpha = 0", angle, 1e-8)
        report.add("atlas_spike_rank", "maximal projector 2c has rank 2", float(g.rank), 2.0,
                   ok=g.rank == 2)
        report.add(
            "atlas_spike_projector",
            "spike projector equals rho(0) + apex",
            (g.projector.element - p2c.element).norm(),
            1e-8,
        )
        report.add("atlas_spike_family_dim", "compressed family is a single state",
                   float(g.family_dim), 0.0, ok=g.family_dim == 0)
        report.add("atlas_spike_member", "the single state is c",
                   (g.representative.element - c.element).norm(), 1e-9)
    others = [g for g in atlas.groups if not g.spike]
    bad_rank = sum(1 for g in others if g.rank != 1)
    report.add("atlas_circle_ranks", "all other groups are rank one",
               float(bad_rank), 0.0)
    worst = 0.0
    for g in others[:: max(1, len(others) // 16)]:
        expected = base_circle_state(g.alpha_lo)
        worst = max(worst, (g.representative.element - expected.element).norm())
    report.add("atlas_circle_members", "rank-one groups are base circle states",
               worst, 1e-9)

    # (b) distance on the generating line equals S(. , c)
    v2 = traceless_part(pauli(2) + unit())
    worst = 0.0
    for s in np.linspace(0.05, 0.95, 7):
        rho = State((1.0 - s) * rho0.element + s * unit())
        via_face = reduce_distance_to_face(rho, fam, v2)
        direct = relative_entropy(rho, c)
        worst = max(worst, abs(via_face - direct))
    report.add("segment_distance_formula", "d(rho) = S(rho, c) on [rho(0), apex]",
               worst, 1e-9)

    # (c) the discontinuity at rho(0)
    exact = reduce_distance_to_face(rho0, fam, v2)
    report.add("distance_rho0_exact", "reduced distance at rho(0) is ln 2",
               abs(exact - np.log(2.0)), 1e-9)
    ladder = distance_continuation(rho0, fam, caps=(10.0, 20.0, 40.0, 80.0))
    monotone = all(b[1] <= a[1] + 1e-9 for a, b in zip(ladder, ladder[1:]))
    report.add("distance_rho0_monotone", "direct minimization decreases with the cap",
               0.0 if monotone else 1.0, 0.0, ok=monotone)
    report.add("distance_rho0_cap80", "direct value at cap 80 near ln 2",
               ladder[-1][1] - np.log(2.0), 5e-3)
    attained_any = any(att for _, _, att in ladder)
    report.add("distance_rho0_nonattained", "no cap attains the infimum",
               1.0 if attained_any else 0.0, 0.0, ok=not attained_any)
    d03, _ = entropy_distance(base_circle_state(0.3), fam, param_cap=200.0)
    report.add("distance_circle_near_rho0", "d(rho(0.3)) small at cap 200", d03, 1e-2)

    # (d) norm closure: tau paths reach [rho(0), c], the certificate bars the rest
    s_half, tau_half = staffelberg_tau_path(0.5, 1.0e4)
    report.add("tau_path_error_half", "tau(1/2) approximated at t = 1e4",
               (s_half.element - tau_half.element).norm(), 1e-2)
    worst = 0.0
    shrink_ok = True
    for lam in (0.25, 0.5, 0.75):
        s1, tau = staffelberg_tau_path(lam, 4.0e4)
        s2, _ = staffelberg_tau_path(lam, 8.0e4)
        e1 = (s1.element - tau.element).norm()
        e2 = (s2.element - tau.element).norm()
        worst = max(worst, e1)
        shrink_ok = shrink_ok and e2 < e1
    report.add("tau_path_error", "tau(lam) approximated at t = 4e4", worst, 1e-2)
    report.add("tau_path_shrinks", "doubling t improves the approximation",
               0.0 if shrink_ok else 1.0, 0.0, ok=shrink_ok)

    worst_z, worst_dz = -np.inf, -np.inf
    for alpha in np.linspace(0.0, 2.0 * np.pi, 72, endpoint=False):
        for t in np.linspace(0.0, 50.0, 26):
            zval, dz = staffelberg_z_certificate(alpha, t)
            scale = 2.0 * np.cosh(t) + np.exp(np.cos(alpha) * t)
            worst_z = max(worst_z, zval / scale)
            worst_dz = max(worst_dz, dz / scale)
    report.add("halfspace_certificate",
               "<sigma, v3> = z/T stays nonpositive", worst_z, 1e-12)
    report.add("halfspace_derivative", "dz/dt / T stays nonpositive", worst_dz, 1e-12)

    m = State(0.5 * (c.element + unit()))
    d_m = reduce_distance_to_face(m, fam, v2)
    s_m = relative_entropy(m, c)
    report.add("upper_segment_distance", "midpoint of ]c, apex] matches S(. , c)",
               abs(d_m - s_m), 1e-9)
    report.add("upper_segment_positive", "midpoint of ]c, apex] has positive distance",
               0.12 - d_m, 0.0, ok=d_m > 0.12)
    margin = hs_inner(m.element, staffelberg_v3())
    report.add("upper_segment_outside_closure",
               "positive v3 margin separates it from the family",
               0.0 if margin > 0.4 else 1.0, 0.0, ok=margin > 0.4)
    return report


def swallow_report(rng: np.random.Generator | None = None) -> Report:
    """Numerical witnesses for the swallow closure structure.

    The geodesic closure misses rho(0) and rho(pi/2) although both carry
    entropy distance zero (two-stage geodesics); the mean value set has the
    two tangent points as non-exposed faces; the bilinear-form identities of
    the projected base circle hold to machine precision.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    fam = swallow_family()
    report = Report(name="swallow")
    rho0 = base_circle_state(0.0)
    rho90 = base_circle_state(np.pi / 2.0)
    apex = apex_state()

    # (a) atlas structure
    atlas = geodesic_closure_atlas(fam)
    spikes = atlas.spike_groups()
    report.add("atlas_two_spikes", "two crossing directions", float(len(spikes)), 2.0,
               ok=len(spikes) == 2)
    targets = {0.0: rho0, np.pi / 2.0: rho90}
    for g in sorted(spikes, key=lambda g: g.alpha_lo):
        angle = g.alpha_lo % (2.0 * np.pi)
        best = min(targets, key=lambda t: abs(angle - t))
        report.add("atlas_spike_angle", f"crossing near alpha = {best:.6f}",
                   abs(angle - best), 1e-8)
        expected_p = Projector(targets[best].element + unit())
        report.add("atlas_spike_projector", "projector is rho + apex",
                   (g.projector.element - expected_p.element).norm(), 1e-8)
        report.add("atlas_spike_segment", "compressed family is one-dimensional",
                   float(g.family_dim), 1.0, ok=g.family_dim == 1)
        end_dist = min(
            (g.family.member([t]).element - targets[best].element).norm()
            for t in (-12.0, 12.0)
        )
        report.add("atlas_spike_segment_end", "the segment family approaches rho",
                   end_dist, 1e-4)
        mid = State(0.5 * (targets[best].element + unit()))
        report.add("atlas_spike_segment_mid", "exp1^p(0) is the segment midpoint",
                   (g.representative.element - mid.element).norm(), 1e-9)

    const = [
        g for g in atlas.groups
        if not g.spike and g.rank == 1 and g.n_samples > 10
    ]
    report.add("atlas_apex_group", "one long constant group", float(len(const)), 1.0,
               ok=len(const) == 1)
    if const:
        g = const[0]
        report.add("atlas_apex_member", "its single state is the apex",
                   (g.representative.element - apex.element).norm(), 1e-9)
        inside = 0.0 < g.alpha_lo < g.alpha_hi < np.pi / 2.0
        report.add("atlas_apex_interval", "covering the open quarter arc",
                   0.0 if inside else 1.0, 0.0, ok=inside)
    moving = [g for g in atlas.groups if not g.spike and g not in const]
    worst = 0.0
    ok_range = True
    for g in moving[:: max(1, len(moving) // 16)]:
        alpha = g.alpha_lo % (2.0 * np.pi)
        ok_range = ok_range and (np.pi / 2.0 < alpha < 2.0 * np.pi)
        worst = max(worst, (g.representative.element
                            - base_circle_state(alpha).element).norm())
    report.add("atlas_circle_range", "moving rank-one groups live on (pi/2, 2pi)",
               0.0 if ok_range else 1.0, 0.0, ok=ok_range)
    report.add("atlas_circle_members", "they are base circle states", worst, 1e-9)

    # (b) rho(0), rho(pi/2) are missed by the geodesic closure but have
    # distance zero through the two-stage reduction
    for name, rho, alpha in (("rho(0)", rho0, 0.0), ("rho(pi/2)", rho90, np.pi / 2.0)):
        u = swallow_direction(alpha)
        d = reduce_distance_to_face(rho, fam, u)
        report.add("rI_membership", f"{name} has entropy distance zero", d, 1e-9)
        member = rI_membership(rho, fam, face_direction=u)
        report.add("rI_flag", f"rI membership of {name}", 0.0 if member else 1.0, 0.0,
                   ok=member)
        spike = min(spikes, key=lambda g: abs(g.alpha_lo % (2 * np.pi) - alpha))
        res = project_to_family(rho, spike.family, param_cap=60.0)
        report.add("geo_misses", f"{name} is not attained inside the segment family",
                   1.0 if res.attained else 0.0, 0.0, ok=not res.attained)

    ladder = distance_continuation(rho0, fam, caps=(25.0, 50.0, 100.0, 200.0))
    monotone = all(b[1] <= a[1] + 1e-9 for a, b in zip(ladder, ladder[1:]))
    report.add("direct_distance_monotone", "direct minimization decreases with the cap",
               0.0 if monotone else 1.0, 0.0, ok=monotone)

    # (c) bilinear-form identities of the projected base circle
    worst = max(
        abs(swallow_bilinear(base_circle_state(a).element, base_circle_state(a).element))
        for a in np.linspace(0.0, 2.0 * np.pi, 360, endpoint=False)
    )
    report.add("bilinear_circle", "beta vanishes on the base circle", worst, 1e-12)
    report.add("bilinear_tangent_rho0", "beta pairs the apex with rho(0)",
               abs(swallow_bilinear(rho0.element, apex.element)), 1e-12)
    report.add("bilinear_tangent_rho90", "beta pairs the apex with rho(pi/2)",
               abs(swallow_bilinear(rho90.element, apex.element)), 1e-12)
    center = swallow_bilinear(tracial_state(ALGEBRA).element, tracial_state(ALGEBRA).element)
    report.add("bilinear_center", "the tracial state is interior (beta < 0)",
               center, 0.0, ok=center < 0.0)

    # (d) boundary classification marks the tangent points non-exposed
    boundary = mean_value_boundary_sweep(fam)
    classes = classify_boundary_faces(boundary)
    report.add("nonexposed_count", "two non-exposed boundary points",
               float(classes.n_nonexposed), 2.0, ok=classes.n_nonexposed == 2)
    t1, t2 = swallow_polar_tangents()
    for t in (t1, t2):
        dist = min(
            float(np.hypot(v[0] - t[0], v[1] - t[1])) for v in classes.nonexposed
        ) if classes.nonexposed else np.inf
        report.add("nonexposed_position", "marker at a polar tangent point", dist, 1e-6)
    return report
