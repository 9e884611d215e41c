"""Boundary triplets, Weyl functions, and the semiboundedness criterion.

A boundary triplet for a symmetric relation T consists of a parameter
space and two boundary maps Gamma0, Gamma1 on T* satisfying the abstract
Green identity

    <f', h> - <f, h'> = <Gamma1 fhat, Gamma0 hhat> - <Gamma0 fhat, Gamma1 hhat>

with (Gamma0, Gamma1) jointly surjective.  Three concrete triplets are
built for the lift of a relation R:

  main   on S*,  parameter space G = (graph R)^perp,
         kernels: Gamma0 -> H, Gamma1 -> K;
  basic  on S0*, parameter space G0 = mul R* (+) ker R*,
         kernels: Gamma0 -> S_F, Gamma1 -> S_K, Weyl function lambda*I;
  tilde  on S~*, parameter space G~ = flip of the operator part of R*,
         kernels: Gamma0 -> S_F, Gamma1 -> K.

Boundary maps are stored as matrices over the orthonormal graph basis of
the ambient adjoint: an element W @ c has boundary values gamma0 @ c and
gamma1 @ c in the coordinates of the parameter-space basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import DimensionMismatch, PreconditionViolated, SpectrumError
from .extension import LiftBundle, lift
from .relation import (
    LinearRelation,
    classify,
    from_operator,
    relation_equal,
)
from .subspace import (
    Subspace,
    Verdict,
    complement,
    nullspace_columns,
    orthonormal_columns,
    span,
)

__all__ = [
    "BoundaryTriplet",
    "SemiboundResult",
    "AlternativeExperiment",
    "WEYL_ORIGIN_RADIUS",
    "triplet_main",
    "triplet_basic",
    "triplet_tilde",
    "green_identity_defect",
    "boundary_map_rank",
    "defect_coefficients",
    "weyl",
    "gamma_field",
    "closed_form_weyl",
    "closed_form_gamma",
    "extension_from_boundary",
    "semibound_criterion",
    "alternative_experiment",
]

# The Weyl functions built here all have a pole (or a defect-dimension
# jump) at lambda = 0, so a small disk around the origin is refused
# outright instead of letting the generic route return garbage.
WEYL_ORIGIN_RADIUS = 1e-6


@dataclass(eq=False)
class BoundaryTriplet:
    """Boundary maps for an adjoint relation, in graph coordinates.

    star is the relation the maps live on (an adjoint: S*, S0* or S~*).
    boundary is the parameter space, a subspace of C^n whose fixed basis
    defines the coordinates of all boundary values.  gamma0 and gamma1
    are g x d matrices acting on graph coefficients, d = star.dim.

    ker_gamma0_is_friedrichs records whether ker Gamma0 equals the
    Friedrichs extension; the semiboundedness criterion is only valid for
    such triplets, so it is computed once at construction time.
    """

    kind: str
    star: LinearRelation
    split: int
    boundary: Subspace
    gamma0: np.ndarray
    gamma1: np.ndarray
    ker_gamma0: LinearRelation
    ker_gamma1: LinearRelation
    ker_gamma0_is_friedrichs: bool
    cfg: ToleranceConfig

    @property
    def g(self) -> int:
        return self.boundary.dim

    @property
    def is_degenerate(self) -> bool:
        """True when the parameter space is trivial (S0 selfadjoint)."""
        return self.g == 0

    def boundary_values(self, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(Gamma0, Gamma1) of elements given by graph coefficients."""
        coeffs = np.asarray(coeffs, dtype=complex)
        return self.gamma0 @ coeffs, self.gamma1 @ coeffs


def _kernel_relation(star: LinearRelation, gamma: np.ndarray,
                     cfg: ToleranceConfig) -> LinearRelation:
    coeffs = nullspace_columns(gamma, cfg.rank_tol)
    basis = star.graph.basis @ coeffs
    return LinearRelation(star.n1, star.n2, Subspace(star.n1 + star.n2, basis))


def _coerce_bundle(source: LinearRelation | LiftBundle,
                   cfg: ToleranceConfig) -> LiftBundle:
    if isinstance(source, LiftBundle):
        return source
    return lift(source, cfg)


def _lift_blocks(star: LinearRelation, split: int):
    """Row blocks (h1, h2, k1, k2) of the graph basis of a lifted adjoint."""
    w = star.graph.basis
    n = star.n1
    return w[:split], w[split:n], w[n : n + split], w[n + split :]


def _flip_triplet(kind: str, star: LinearRelation, split: int, p: Subspace,
                  bundle: LiftBundle, cfg: ToleranceConfig) -> BoundaryTriplet:
    """Common construction for the main and tilde triplets.

    Gamma0 projects (-k1, h2) and Gamma1 projects (h1, k2) onto the
    parameter space; both land inside it by construction, so the
    projection loses nothing.
    """
    h1, h2, k1, k2 = _lift_blocks(star, split)
    ph = p.basis.conj().T
    gamma0 = ph @ np.vstack([-k1, h2])
    gamma1 = ph @ np.vstack([h1, k2])
    ker0 = _kernel_relation(star, gamma0, cfg)
    ker1 = _kernel_relation(star, gamma1, cfg)
    flag = relation_equal(ker0, bundle.S_F, cfg).verdict is Verdict.EQUAL
    return BoundaryTriplet(
        kind=kind,
        star=star,
        split=split,
        boundary=p,
        gamma0=gamma0,
        gamma1=gamma1,
        ker_gamma0=ker0,
        ker_gamma1=ker1,
        ker_gamma0_is_friedrichs=flag,
        cfg=cfg,
    )


def triplet_main(source: LinearRelation | LiftBundle,
                 cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> BoundaryTriplet:
    """Triplet on S* with parameter space (graph R)^perp."""
    bundle = _coerce_bundle(source, cfg)
    return _flip_triplet("main", bundle.S_star, bundle.n1, bundle.G, bundle, cfg)


def triplet_tilde(source: LinearRelation | LiftBundle,
                  cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> BoundaryTriplet:
    """Triplet on S~* whose Gamma0-kernel is the Friedrichs extension."""
    bundle = _coerce_bundle(source, cfg)
    return _flip_triplet(
        "tilde", bundle.S_tilde_star, bundle.n1, bundle.G_tilde, bundle, cfg
    )


def triplet_basic(source: LinearRelation | LiftBundle,
                  cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> BoundaryTriplet:
    """Triplet on S0* with parameter space G0 and Weyl function lambda*I.

    Gamma0 and Gamma1 are plain compressions of the two components onto
    G0.  A relation with dense domain and dense range gives G0 = {0};
    the triplet is then degenerate (S0 is already selfadjoint) and the
    is_degenerate flag reports it.
    """
    bundle = _coerce_bundle(source, cfg)
    star = bundle.S0_star
    n = star.n1
    w = star.graph.basis
    ph = bundle.G0.basis.conj().T
    gamma0 = ph @ w[:n]
    gamma1 = ph @ w[n:]
    ker0 = _kernel_relation(star, gamma0, cfg)
    ker1 = _kernel_relation(star, gamma1, cfg)
    flag = relation_equal(ker0, bundle.S_F, cfg).verdict is Verdict.EQUAL
    return BoundaryTriplet(
        kind="basic",
        star=star,
        split=bundle.n1,
        boundary=bundle.G0,
        gamma0=gamma0,
        gamma1=gamma1,
        ker_gamma0=ker0,
        ker_gamma1=ker1,
        ker_gamma0_is_friedrichs=flag,
        cfg=cfg,
    )


def green_identity_defect(trip: BoundaryTriplet) -> float:
    """Max-abs defect of the Green identity over all graph coefficients.

    Both sides of the identity are sesquilinear in the coefficients, so
    comparing the two d x d coefficient matrices checks every pair of
    elements at once.
    """
    w = trip.star.graph.basis
    n = trip.star.n1
    f_blk, g_blk = w[:n], w[n:]
    lhs = f_blk.conj().T @ g_blk - g_blk.conj().T @ f_blk
    rhs = (
        trip.gamma0.conj().T @ trip.gamma1
        - trip.gamma1.conj().T @ trip.gamma0
    )
    diff = lhs - rhs
    return float(np.max(np.abs(diff))) if diff.size else 0.0


def boundary_map_rank(trip: BoundaryTriplet) -> int:
    """Rank of the stacked map (Gamma0, Gamma1); surjectivity needs 2g."""
    stacked = np.vstack([trip.gamma0, trip.gamma1])
    if stacked.size == 0:
        return 0
    s = np.linalg.svd(stacked, compute_uv=False)
    return int(np.count_nonzero(s > trip.cfg.rank_tol * s[0]))


def defect_coefficients(trip: BoundaryTriplet, lam: complex) -> np.ndarray:
    """Graph coefficients spanning N_lambda(star) = {fhat : f' = lambda f}."""
    w = trip.star.graph.basis
    n = trip.star.n1
    pencil = w[n:] - lam * w[:n]
    return nullspace_columns(pencil, trip.cfg.rank_tol)


def _gamma0_on_defect(trip: BoundaryTriplet, lam: complex,
                      cfg: ToleranceConfig) -> tuple[np.ndarray, np.ndarray]:
    if abs(lam) <= WEYL_ORIGIN_RADIUS:
        raise SpectrumError(
            f"lambda = {lam} is inside the excluded disk around the origin"
        )
    ns = defect_coefficients(trip, lam)
    if ns.shape[1] != trip.g:
        raise SpectrumError(
            f"defect space at lambda = {lam} has dimension {ns.shape[1]}, "
            f"expected {trip.g}"
        )
    a0 = trip.gamma0 @ ns
    if trip.g:
        s = np.linalg.svd(a0, compute_uv=False)
        if s[-1] <= cfg.rank_tol * max(s[0], 1.0):
            raise SpectrumError(
                f"Gamma0 is not invertible on the defect space at lambda = {lam}"
            )
    return ns, a0


def weyl(trip: BoundaryTriplet, lam: complex,
         cfg: ToleranceConfig | None = None) -> np.ndarray:
    """Weyl function M(lambda) = Gamma1 (Gamma0 | N_lambda)^{-1}, g x g."""
    cfg = cfg or trip.cfg
    ns, a0 = _gamma0_on_defect(trip, lam, cfg)
    if trip.g == 0:
        return np.zeros((0, 0), dtype=complex)
    return (trip.gamma1 @ ns) @ np.linalg.inv(a0)


def gamma_field(trip: BoundaryTriplet, lam: complex,
                cfg: ToleranceConfig | None = None) -> np.ndarray:
    """gamma(lambda): boundary coordinates -> defect element of H, n x g."""
    cfg = cfg or trip.cfg
    ns, a0 = _gamma0_on_defect(trip, lam, cfg)
    n = trip.star.n1
    if trip.g == 0:
        return np.zeros((n, 0), dtype=complex)
    return (trip.star.graph.basis @ ns)[:n] @ np.linalg.inv(a0)


def _origin_scaling(n1: int, n2: int, lam: complex) -> np.ndarray:
    return np.concatenate(
        [np.full(n1, -1.0 / lam, dtype=complex), np.full(n2, lam, dtype=complex)]
    )


def closed_form_weyl(bundle: LiftBundle, kind: str, lam: complex) -> np.ndarray:
    """Explicit Weyl functions, bypassing the defect-space computation.

    main and tilde compress the diagonal scaling (-1/lambda on the first
    component, lambda on the second) onto their parameter spaces; basic
    is lambda times the identity.
    """
    if abs(lam) <= WEYL_ORIGIN_RADIUS:
        raise SpectrumError(
            f"lambda = {lam} is inside the excluded disk around the origin"
        )
    if kind == "basic":
        return lam * np.eye(bundle.G0.dim, dtype=complex)
    if kind == "main":
        p = bundle.G.basis
    elif kind == "tilde":
        p = bundle.G_tilde.basis
    else:
        raise ValueError(f"unknown triplet kind {kind!r}")
    d = _origin_scaling(bundle.n1, bundle.n2, lam)
    return p.conj().T @ (d[:, None] * p)


def closed_form_gamma(bundle: LiftBundle, kind: str, lam: complex) -> np.ndarray:
    """Explicit gamma fields for the main and basic triplets.

    basic has the constant inclusion of G0; main rescales the first
    component of the parameter space by -1/lambda.
    """
    if abs(lam) <= WEYL_ORIGIN_RADIUS:
        raise SpectrumError(
            f"lambda = {lam} is inside the excluded disk around the origin"
        )
    if kind == "basic":
        return bundle.G0.basis.copy()
    if kind != "main":
        raise ValueError(f"no closed gamma field for triplet kind {kind!r}")
    p = bundle.G.basis
    d = np.concatenate(
        [
            np.full(bundle.n1, -1.0 / lam, dtype=complex),
            np.ones(bundle.n2, dtype=complex),
        ]
    )
    return d[:, None] * p


def extension_from_boundary(trip: BoundaryTriplet, theta: LinearRelation,
                            cfg: ToleranceConfig | None = None) -> LinearRelation:
    """A_theta = {fhat in star : (Gamma0 fhat, Gamma1 fhat) in theta}.

    The membership constraint is expressed against a basis of the
    orthogonal complement of theta's graph, so theta may be any relation
    in the parameter space; multivalued parameters need no special case.
    """
    cfg = cfg or trip.cfg
    if theta.n1 != trip.g or theta.n2 != trip.g:
        raise DimensionMismatch(
            f"theta acts on C^{theta.n1} x C^{theta.n2}, parameter space "
            f"has dimension {trip.g}"
        )
    z = complement(theta.graph, cfg)
    stacked = np.vstack([trip.gamma0, trip.gamma1])
    coeffs = nullspace_columns(z.basis.conj().T @ stacked, cfg.rank_tol)
    basis = orthonormal_columns(trip.star.graph.basis @ coeffs, cfg.rank_tol)
    return LinearRelation(
        trip.star.n1, trip.star.n2, Subspace(trip.star.n1 + trip.star.n2, basis)
    )


@dataclass(frozen=True)
class SemiboundResult:
    """Both sides of the lower-bound criterion at a threshold x < 0.

    bound_holds: the extension's operator part is bounded below by x.
    parameter_holds: theta - M(x) is a nonnegative relation.
    For a triplet whose Gamma0-kernel is the Friedrichs extension the two
    must agree.
    """

    x: float
    lower_bound: float
    bound_holds: bool
    parameter_holds: bool

    @property
    def agree(self) -> bool:
        return self.bound_holds == self.parameter_holds


def semibound_criterion(trip: BoundaryTriplet, theta: LinearRelation,
                        x: float,
                        cfg: ToleranceConfig | None = None) -> SemiboundResult:
    """Test m(A_theta) >= x against nonnegativity of theta - M(x).

    Valid only below the lower bound of the Friedrichs extension; for the
    nonnegative lifts here that means x < 0, and only on triplets with
    ker Gamma0 = S_F.  theta - M(x) is formed as a relation (graph
    columns (t, t' - M(x) t)), never as an operator product, so
    multivalued parameters work unchanged.
    """
    cfg = cfg or trip.cfg
    if not trip.ker_gamma0_is_friedrichs:
        raise PreconditionViolated(
            "criterion needs a triplet whose Gamma0-kernel is the "
            "Friedrichs extension"
        )
    x = float(x)
    if not x < 0.0:
        raise PreconditionViolated(f"threshold must be negative, got {x}")
    if trip.is_degenerate:
        raise PreconditionViolated("parameter space is trivial")
    if not classify(theta, cfg).is_selfadjoint:
        raise PreconditionViolated("theta is not selfadjoint")

    a_theta = extension_from_boundary(trip, theta, cfg)
    bound = classify(a_theta, cfg).lower_bound
    if bound is None:
        raise PreconditionViolated("extension is not symmetric")

    m_x = weyl(trip, x, cfg)
    t_dom, t_ran = theta.domain_block, theta.range_block
    shifted = LinearRelation(
        theta.n1,
        theta.n2,
        span(np.vstack([t_dom, t_ran - m_x @ t_dom]), 2 * theta.n1, cfg),
    )
    return SemiboundResult(
        x=x,
        lower_bound=bound,
        bound_holds=bool(bound >= x),
        parameter_holds=classify(shifted, cfg).is_nonnegative,
    )


@dataclass(frozen=True)
class AlternativeExperiment:
    """Lower bounds of A_theta for R = graph(c), theta = -delta.

    computed_bound comes from the extension machinery on the tilde
    triplet; closed_form_bound is the explicit root

        ( -delta (1 + c^2) - sqrt(delta^2 (1 + c^2)^2 + 4 c^2) ) / 2;

    sufficient_bound is the a-priori threshold built from the norm of the
    operator part of R*, which must sit below the true bound.
    """

    c: float
    delta: float
    computed_bound: float
    closed_form_bound: float
    sufficient_bound: float
    sufficient_bound_holds: bool
    criterion_checked_at: tuple[float, ...]
    criterion_agrees: bool


def alternative_experiment(c: float, delta: float,
                           cfg: ToleranceConfig = DEFAULT_TOLERANCES,
                           ) -> AlternativeExperiment:
    """Worked one-dimensional example of the semiboundedness criterion."""
    c = float(c)
    delta = float(delta)
    rel = from_operator(np.array([[c]], dtype=complex))
    bundle = lift(rel, cfg)
    trip = triplet_tilde(bundle, cfg)
    theta = from_operator(np.array([[-delta]], dtype=complex))

    a_theta = extension_from_boundary(trip, theta, cfg)
    bound = classify(a_theta, cfg).lower_bound
    assert bound is not None and math.isfinite(bound)

    s = 1.0 + c * c
    closed = (-delta * s - math.sqrt((delta * s) ** 2 + 4.0 * c * c)) / 2.0

    norm_bound = abs(c)
    x0 = min(-norm_bound**2, -1.0 - delta * (1.0 + norm_bound**2)) - 1.0

    # probes next to zero say nothing and collide with the excluded disk
    probes = tuple(
        x for x in (bound - 1.0, bound - 1e-3, bound + 1e-3, bound + 1.0)
        if x < -1e-3
    )
    agrees = all(
        semibound_criterion(trip, theta, x, cfg).agree for x in probes
    )
    return AlternativeExperiment(
        c=c,
        delta=delta,
        computed_bound=float(bound),
        closed_form_bound=closed,
        sufficient_bound=x0,
        sufficient_bound_holds=bool(bound >= x0),
        criterion_checked_at=probes,
        criterion_agrees=agrees,
    )
