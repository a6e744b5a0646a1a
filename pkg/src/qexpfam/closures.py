"""Limits of e-geodesics and the three closures of an exponential family.

An e-geodesic exp1(theta + lambda u) concentrates, as lambda grows, on the
maximal eigenspace of u; its limit is the compressed-family member
p e^{p theta p} / tr(p e^{p theta p}) with p the maximal projector of u.  The
geodesic closure is therefore a disjoint union of families in corner
algebras, one per maximal projector of a tangent direction.  For 2D tangent
spaces the projectors are enumerated by an angular sweep; isolated directions
where eigenvalue branches merge (higher-rank projectors, measure zero in the
sweep) are located by bisection on the projector discontinuity.

The reverse-information closure collects the states at entropy distance zero.
On an exposed face cut out by a tangent direction, the distance equals the
distance from the compressed family, which turns several boundary distances
into exactly solvable problems.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import defaults
from .errors import PreconditionError
from .family import (
    ExponentialFamily,
    entropy_distance,
    free_energy,
    make_compressed_family,
    project_to_family,
)
from .findings import Report
from .linalg import HermitianElement, hs_inner, traceless_part
from .states import (
    Projector,
    State,
    SupportBasis,
    compress,
    exposed_face_membership,
    max_eig_data,
)

compressed_family = make_compressed_family


def egeodesic_limit(
    theta: HermitianElement, u: HermitianElement
) -> tuple[State, float]:
    """Limit state and free-energy asymptote of the geodesic exp1(theta + t u).

    Returns (p e^{p theta p} / tr(p e^{p theta p}), ln tr(p e^{p theta p}))
    for the maximal projector p of u; the second value is the limit of
    F(theta + t u) - t mu_+(u).
    """
    if u.norm() == 0.0:
        raise PreconditionError("geodesic direction must be non-zero")
    _, p = max_eig_data(u)
    support = SupportBasis(p)
    ptp, _ = compress(p, theta)
    asymptote, limit = free_energy(ptp, support)
    return limit, float(asymptote)


# -- geodesic closure atlas -----------------------------------------------------


@dataclass(frozen=True)
class AtlasGroup:
    """All sweep directions sharing one maximal projector, with their family.

    Interval groups cover [alpha_lo, alpha_hi]; spike groups (isolated
    crossing angles, where the projector rank jumps) have alpha_lo=alpha_hi.
    """

    projector: Projector
    rank: int
    alpha_lo: float
    alpha_hi: float
    n_samples: int
    spike: bool
    family: ExponentialFamily
    representative: State

    @property
    def family_dim(self) -> int:
        return self.family.dim


@dataclass(frozen=True)
class ClosureAtlas:
    """Sampled geodesic closure of a 2D family, grouped by maximal projector."""

    family: ExponentialFamily
    n_directions: int
    groups: tuple[AtlasGroup, ...]
    transition_angles: tuple[float, ...]

    def spike_groups(self) -> list[AtlasGroup]:
        return [g for g in self.groups if g.spike]

    def groups_of_rank(self, rank: int) -> list[AtlasGroup]:
        return [g for g in self.groups if g.rank == rank]


def sweep_direction(family: ExponentialFamily, alpha: float) -> HermitianElement:
    """Polar direction sin(alpha) g1 + cos(alpha) g2 over the family generators.

    This is the parametrization in which the named families' projector
    transitions sit at round angles; any full sweep covers the same set of
    directions as the orthonormal-basis convention.
    """
    if len(family.generators) != 2:
        raise PreconditionError("polar sweeps need exactly two generators")
    g1, g2 = family.generators
    return float(np.sin(alpha)) * g1 + float(np.cos(alpha)) * g2


def _max_projector(family: ExponentialFamily, alpha: float) -> Projector:
    return max_eig_data(sweep_direction(family, alpha))[1]


def _proj_dist(p: Projector, q: Projector) -> float:
    return (p.element - q.element).norm()


def _angle_dist(a: float, b: float) -> float:
    d = abs(a - b) % (2.0 * np.pi)
    return min(d, 2.0 * np.pi - d)


def _top_gap(family: ExponentialFamily, alpha: float) -> float:
    from .linalg import eigh

    w = eigh(sweep_direction(family, alpha)).all_eigenvalues()
    return float(w[0] - w[1])


def _locate_crossing(family: ExponentialFamily, lo: float, hi: float) -> float | None:
    """Find the eigenvalue crossing of u(alpha) in (lo, hi) that carries the
    projector discontinuity.

    Ternary search on the gap between the two largest eigenvalues; handles
    transversal crossings (linear gap) and tangential ones (quadratic gap)
    alike.  Returns None when the gap never closes to merge tolerance.
    """
    for _ in range(300):
        if hi - lo < defaults.TRANSITION_ANGLE_TOL * 0.5:
            break
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if _top_gap(family, m1) <= _top_gap(family, m2):
            hi = m2
        else:
            lo = m1
    alpha = 0.5 * (lo + hi)
    if _top_gap(family, alpha) <= defaults.MAX_EIG_GAP:
        return alpha
    return None


def geodesic_closure_atlas(
    family: ExponentialFamily, n_directions: int = defaults.SWEEP_ANGLES
) -> ClosureAtlas:
    """Sample the geodesic closure of a 2D family over a polar direction grid.

    Directions are grouped by equality of their maximal projectors (within
    1e-9, robust to phase ambiguity inside degenerate eigenspaces);
    projector discontinuities between grid angles are refined by bisection to
    1e-10 and checked for a higher-rank crossing direction there.
    """
    if family.dim != 2:
        raise PreconditionError("closure atlases require a 2D tangent space")
    if family.support is not None:
        raise PreconditionError("closure atlases require a full-algebra family")
    n = int(n_directions)
    alphas = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    projs = [_max_projector(family, a) for a in alphas]

    # runs of consecutive equal projectors (cyclically)
    runs: list[list[int]] = [[0]]
    for j in range(1, n):
        if projs[j].same_image(projs[j - 1]):
            runs[-1].append(j)
        else:
            runs.append([j])
    if len(runs) > 1 and projs[0].same_image(projs[-1]):
        runs[0] = runs.pop() + runs[0]

    step = 2.0 * np.pi / n
    jump_tol = 5.0 * step

    groups: list[AtlasGroup] = []
    transitions: list[float] = []

    def add_group(p: Projector, a_lo: float, a_hi: float, count: int, spike: bool):
        fam_p = make_compressed_family(family, p)
        rep = fam_p.member(np.zeros(fam_p.dim))
        groups.append(
            AtlasGroup(
                projector=p,
                rank=p.rank,
                alpha_lo=float(a_lo),
                alpha_hi=float(a_hi),
                n_samples=count,
                spike=spike,
                family=fam_p,
                representative=rep,
            )
        )

    for run in runs:
        p = projs[run[0]]
        a_lo = float(alphas[run[0]])
        a_hi = float(alphas[run[-1]])
        spike = len(run) == 1 and p.rank > min(
            projs[(run[0] - 1) % n].rank, projs[(run[0] + 1) % n].rank
        )
        add_group(p, a_lo, a_hi, len(run), spike)
        if spike:
            transitions.append(a_lo)

    # hidden crossings between adjacent samples with a genuine projector jump
    known_spikes = [g.alpha_lo for g in groups if g.spike]
    for j in range(n):
        k = (j + 1) % n
        if projs[j].same_image(projs[k]):
            continue
        if _proj_dist(projs[j], projs[k]) <= jump_tol:
            continue  # smooth drift of a moving rank-one projector
        lo = float(alphas[j])
        hi = float(alphas[j] + step)
        if any(
            _angle_dist(lo, s) < 1.5 * step or _angle_dist(hi, s) < 1.5 * step
            for s in known_spikes
        ):
            continue  # the crossing is already a sampled spike
        alpha_star = _locate_crossing(family, lo, hi)
        if alpha_star is None:
            continue
        p_star = _max_projector(family, alpha_star)
        transitions.append(alpha_star % (2.0 * np.pi))
        if not (p_star.same_image(projs[j]) or p_star.same_image(projs[k])):
            add_group(p_star, alpha_star, alpha_star, 0, True)

    groups.sort(key=lambda g: (g.alpha_lo, g.alpha_hi))
    return ClosureAtlas(
        family=family,
        n_directions=n,
        groups=tuple(groups),
        transition_angles=tuple(sorted(t % (2.0 * np.pi) for t in transitions)),
    )


# -- distance reduction and rI membership ----------------------------------------


def reduce_distance_to_face(
    rho: State,
    family: ExponentialFamily,
    v: HermitianElement,
    tol: float = defaults.SOLVER_TOL,
    param_cap: float = defaults.RI_PARAM_CAP,
) -> float:
    """Entropy distance of a state on the exposed face of v, computed inside
    the compressed family of the maximal projector of v.

    Requires v (up to its trace part) in the tangent space and rho in the
    exposed face; the result agrees with the direct entropy distance.
    """
    vt = traceless_part(v)
    resid = vt
    for e in family.basis:
        resid = resid - hs_inner(resid, e) * e
    if vt.norm() == 0.0 or resid.norm() > 1e-9 * max(1.0, vt.norm()):
        raise PreconditionError("direction is not in the tangent space")
    if not exposed_face_membership(rho, v):
        raise PreconditionError("state is not in the exposed face of v")
    _, p = max_eig_data(v)
    fam_p = make_compressed_family(family, p)
    res = project_to_family(rho, fam_p, tol=tol, param_cap=param_cap)
    return res.distance


def _search_face_direction(
    rho: State, family: ExponentialFamily, n_grid: int = 720
) -> HermitianElement | None:
    """Search the 2D direction sphere for a face containing rho.

    Maximizes <rho, u(alpha)> - mu_+(u(alpha)) (always <= 0, zero exactly on
    a face) on a grid with golden-section refinement of the best candidate.
    """
    if family.dim != 2 or len(family.generators) != 2:
        return None

    def slack(alpha: float) -> float:
        u = sweep_direction(family, alpha)
        mu, _ = max_eig_data(u)
        return hs_inner(rho.element, u) - mu

    alphas = np.linspace(0.0, 2.0 * np.pi, n_grid, endpoint=False)
    values = [slack(a) for a in alphas]
    j = int(np.argmax(values))
    lo = alphas[j] - 2.0 * np.pi / n_grid
    hi = alphas[j] + 2.0 * np.pi / n_grid
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = hi - phi * (hi - lo), lo + phi * (hi - lo)
    fa, fb = slack(a), slack(b)
    for _ in range(120):
        if fa < fb:
            lo, a, fa = a, b, fb
            b = lo + phi * (hi - lo)
            fb = slack(b)
        else:
            hi, b, fb = b, a, fa
            a = hi - phi * (hi - lo)
            fa = slack(a)
    alpha = 0.5 * (lo + hi)
    if slack(alpha) < -1e-9:
        return None
    # golden section stalls at sqrt(eps) on a smooth maximum; a parabola fit
    # through slack samples super-resolves the face angle, which keeps the
    # maximal projector (and any compressed family built from it) clean
    for h in (1e-4, 1e-6):
        s0, sp, sm = slack(alpha), slack(alpha + h), slack(alpha - h)
        curv = sp - 2.0 * s0 + sm
        if curv >= -1e-300:
            break
        shift = -0.5 * h * (sp - sm) / curv
        if abs(shift) > h:
            shift = np.sign(shift) * h
        if slack(alpha + shift) >= s0:
            alpha += shift
    if slack(alpha) < -1e-9:
        return None
    return sweep_direction(family, alpha)


def rI_membership(
    rho: State,
    family: ExponentialFamily,
    eps: float = defaults.RI_EPS,
    param_cap: float = defaults.RI_PARAM_CAP,
    face_direction: HermitianElement | None = None,
) -> bool:
    """Whether rho lies in the reverse-information closure (distance < eps).

    When rho sits on an exposed face of a tangent direction the distance is
    first reduced to the compressed family, which answers exactly; otherwise
    the direct minimization at the given parameter cap decides.
    """
    if face_direction is None:
        face_direction = _search_face_direction(rho, family)
    if face_direction is not None:
        try:
            return (
                reduce_distance_to_face(
                    rho, family, face_direction, param_cap=param_cap
                )
                < eps
            )
        except PreconditionError:
            pass
    value, _ = entropy_distance(rho, family, param_cap=param_cap)
    return value < eps


# -- the inclusion chain ----------------------------------------------------------


def _lift_compressed_parameter(
    family: ExponentialFamily, group: "AtlasGroup", rho: State
) -> np.ndarray | None:
    """Parent-basis coordinates theta with c^p(theta) matching rho's parameter
    inside the group's compressed family (least squares through c^p)."""
    from .linalg import coords

    res = project_to_family(rho, group.family)
    if not res.attained:
        return None
    target = group.family.parameter_element(res.theta_star)
    cols = []
    for v in family.basis:
        _, cv = compress(group.projector, v)
        cols.append(coords(cv))
    matrix = np.column_stack(cols)
    x, *_ = np.linalg.lstsq(matrix, coords(target), rcond=None)
    return x


def _norm_approximation(
    rho: State,
    family: ExponentialFamily,
    param_cap: float,
    group: "AtlasGroup | None" = None,
) -> float:
    """Best found Hilbert-Schmidt distance from rho to the family.

    Warm starts along the face geodesic suggested by the atlas structure
    (lifting the compressed parameter to the parent tangent space) plus a
    simplex refinement; an upper bound on the true distance.
    """
    from scipy import optimize

    def objective(theta: np.ndarray) -> float:
        return (rho.element - family.member(theta).element).norm()

    candidates = [np.zeros(family.dim)]
    direction = _search_face_direction(rho, family)
    if direction is not None:
        coord = np.array([hs_inner(direction, v) for v in family.basis])
        nc = np.linalg.norm(coord)
        if nc > 0:
            coord = coord / nc
            lift = np.zeros(family.dim)
            if group is not None:
                lifted = _lift_compressed_parameter(family, group, rho)
                if lifted is not None:
                    lift = lifted
            for t in (5.0, 10.0, 20.0, 40.0):
                candidates.append(lift + t * coord)
    best = None
    best_val = np.inf
    for c in candidates:
        val = objective(c)
        if val < best_val:
            best, best_val = c, val
    if best_val > 1e-6:
        res = optimize.minimize(
            objective, best, method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000},
        )
        theta = np.clip(res.x, -param_cap, param_cap)
        best_val = float(min(best_val, objective(theta)))
    return float(best_val)


def inclusion_chain_check(
    family: ExponentialFamily,
    eps: float = defaults.RI_EPS,
    param_cap: float = defaults.RI_PARAM_CAP,
    n_directions: int = defaults.SWEEP_ANGLES,
    max_groups: int = 24,
) -> Report:
    """Verify the closure inclusion chain on sampled states.

    Geodesic-closure members must have entropy distance below eps; states at
    distance below eps must be approximable in norm, within the bound that
    the Pinsker-Csiszar inequality grants (||.||_1 <= sqrt(2 eps)).
    """
    report = Report(name="closure_inclusion_chain")
    atlas = geodesic_closure_atlas(family, n_directions=n_directions)

    groups = list(atlas.groups)
    if len(groups) > max_groups:
        stride = max(1, len(groups) // max_groups)
        groups = groups[::stride]

    norm_bound = float(np.sqrt(2.0 * eps)) * 1.5
    for g in groups:
        mid = 0.5 * (g.alpha_lo + g.alpha_hi)
        u = sweep_direction(family, mid)
        states = [("representative", g.representative)]
        if g.family_dim >= 1:
            states.append(("member", g.family.member(0.7 * np.ones(g.family_dim))))
        for tag, s in states:
            d = reduce_distance_to_face(family=family, rho=s, v=u, param_cap=param_cap)
            report.add(
                "geo_subset_rI",
                f"{tag} of group at alpha [{g.alpha_lo:.6f}, {g.alpha_hi:.6f}] "
                f"rank {g.rank}",
                d,
                eps,
            )
            gap = _norm_approximation(s, family, param_cap, group=g)
            report.add(
                "rI_subset_norm",
                f"{tag} of group at alpha [{g.alpha_lo:.6f}, {g.alpha_hi:.6f}] "
                f"rank {g.rank}",
                gap,
                norm_bound,
            )
    return report
