"""The symmetric lift of a relation and its distinguished extensions.

A relation R from H1 to H2 lifts to the symmetric relation

    S = { ((f1, 0), (0, g2)) : (f1, g2) in R }

in H1 (+) H2.  Everything of interest about R's extension theory lives in
that bigger space: the adjoint S*, the selfadjoint extensions H and K,
the Friedrichs and Krein-von Neumann extensions S_F and S_K, their
intersection S0, the intermediate symmetric extension S~, and the
boundary-parameter space G0 = mul R* (+) ker R* that parametrizes the
nonnegative selfadjoint extensions.

All members are built from their closed product/graph forms; the adjoint
cross-check and the generic Friedrichs/Krein routes are kept independent
so tests can compare them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import DimensionMismatch, PreconditionViolated
from .relation import (
    LinearRelation,
    adjoint,
    classify,
    componentwise_sum,
    from_product,
    operator_part,
    parts,
    resolvent,
)
from .subspace import (
    Subspace,
    Verdict,
    complement,
    nullspace_columns,
    oplus,
    orthonormal_columns,
    relate,
)

__all__ = [
    "LiftBundle",
    "lift",
    "friedrichs_generic",
    "krein_generic",
    "nonneg_extension",
    "is_extremal",
    "krein_order_margin",
    "krein_order_check",
    "extremal_family",
    "s0_adjoint_decomposition_check",
    "is_singular_relation",
]


@dataclass(eq=False)
class LiftBundle:
    """R together with its lift and every distinguished extension.

    Relations S .. S_tilde_star act in H1 (+) H2 = C^{n1+n2}; G, G0 and
    G_tilde are subspaces of that sum space.  G0 and G_tilde carry the
    fixed bases produced by the deterministic factorization order here, so
    boundary-parameter matrices are reproducible across runs.
    """

    R: LinearRelation
    R_star: LinearRelation
    dom_R: Subspace
    ran_R: Subspace
    mul_R_star: Subspace
    ker_R_star: Subspace
    S: LinearRelation
    S_star: LinearRelation
    H: LinearRelation
    K: LinearRelation
    S_F: LinearRelation
    S_K: LinearRelation
    S0: LinearRelation
    S0_star: LinearRelation
    S_tilde: LinearRelation
    S_tilde_star: LinearRelation
    G: Subspace
    G0: Subspace
    G_tilde: Subspace
    cfg: ToleranceConfig

    @property
    def n1(self) -> int:
        return self.R.n1

    @property
    def n2(self) -> int:
        return self.R.n2

    @property
    def n(self) -> int:
        return self.R.n1 + self.R.n2


def _lift_columns(n1: int, n2: int, h1=None, h2=None, k1=None, k2=None,
                  width: int = 0) -> np.ndarray:
    """Assemble graph columns of a lifted relation from component blocks."""
    n = n1 + n2
    out = np.zeros((2 * n, width), dtype=complex)
    if h1 is not None:
        out[:n1] = h1
    if h2 is not None:
        out[n1:n] = h2
    if k1 is not None:
        out[n : n + n1] = k1
    if k2 is not None:
        out[n + n1 :] = k2
    return out


def lift(rel: LinearRelation,
         cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LiftBundle:
    """Build the lift S of R and the full extension inventory around it."""
    n1, n2 = rel.n1, rel.n2
    n = n1 + n2
    r_star = adjoint(rel, cfg)

    p = parts(rel, cfg)
    dom_r, ran_r = p.dom, p.ran
    # mul R* = (dom R)^perp and ker R* = (ran R)^perp; taking complements
    # keeps the bases exactly orthogonal to dom R / ran R.
    mul_r_star = complement(dom_r, cfg)
    ker_r_star = complement(ran_r, cfg)

    f_blk, g_blk = rel.domain_block, rel.range_block
    a_blk, b_blk = r_star.domain_block, r_star.range_block  # (h2, k1) pairs

    s_basis = _lift_columns(n1, n2, h1=f_blk, k2=g_blk, width=rel.dim)
    s_rel = LinearRelation(n, n, Subspace(2 * n, s_basis))

    eye1 = np.eye(n1, dtype=complex)
    eye2 = np.eye(n2, dtype=complex)
    s_star_basis = np.hstack(
        [
            _lift_columns(n1, n2, h1=eye1, width=n1),
            _lift_columns(n1, n2, h2=a_blk, k1=b_blk, width=r_star.dim),
            _lift_columns(n1, n2, k2=eye2, width=n2),
        ]
    )
    s_star = LinearRelation(n, n, Subspace(2 * n, s_star_basis))

    cross = relate(s_star.graph, adjoint(s_rel, cfg).graph, cfg)
    if cross.verdict is not Verdict.EQUAL:
        raise ArithmeticError(
            f"closed-form S* disagrees with adjoint(S): angle {cross.angle:.3e}"
        )

    h_rel = from_product(
        oplus(Subspace.full(n1), Subspace.zero(n2)),
        oplus(Subspace.zero(n1), Subspace.full(n2)),
    )
    k_basis = np.hstack(
        [
            _lift_columns(n1, n2, h1=f_blk, k2=g_blk, width=rel.dim),
            _lift_columns(n1, n2, h2=a_blk, k1=b_blk, width=r_star.dim),
        ]
    )
    k_rel = LinearRelation(n, n, Subspace(2 * n, k_basis))

    s_f = from_product(
        oplus(dom_r, Subspace.zero(n2)), oplus(mul_r_star, Subspace.full(n2))
    )
    s_k = from_product(
        oplus(Subspace.full(n1), ker_r_star), oplus(Subspace.zero(n1), ran_r)
    )
    s0 = from_product(
        oplus(dom_r, Subspace.zero(n2)), oplus(Subspace.zero(n1), ran_r)
    )
    s0_star = from_product(
        oplus(Subspace.full(n1), ker_r_star), oplus(mul_r_star, Subspace.full(n2))
    )

    s_tilde_basis = np.hstack(
        [
            _lift_columns(n1, n2, h1=f_blk, k2=g_blk, width=rel.dim),
            _lift_columns(n1, n2, k1=mul_r_star.basis, width=mul_r_star.dim),
        ]
    )
    s_tilde = LinearRelation(n, n, Subspace(2 * n, s_tilde_basis))
    s_tilde_star_basis = np.hstack(
        [
            _lift_columns(n1, n2, h1=dom_r.basis, width=dom_r.dim),
            _lift_columns(n1, n2, h2=a_blk, k1=b_blk, width=r_star.dim),
            _lift_columns(n1, n2, k2=eye2, width=n2),
        ]
    )
    s_tilde_star = LinearRelation(n, n, Subspace(2 * n, s_tilde_star_basis))

    g_space = complement(rel.graph, cfg)
    g0_space = oplus(mul_r_star, ker_r_star)

    r_star_op = operator_part(r_star, cfg)
    g_tilde_basis = np.vstack([r_star_op.range_block, -r_star_op.domain_block])
    g_tilde = Subspace(n, g_tilde_basis)

    return LiftBundle(
        R=rel,
        R_star=r_star,
        dom_R=dom_r,
        ran_R=ran_r,
        mul_R_star=mul_r_star,
        ker_R_star=ker_r_star,
        S=s_rel,
        S_star=s_star,
        H=h_rel,
        K=k_rel,
        S_F=s_f,
        S_K=s_k,
        S0=s0,
        S0_star=s0_star,
        S_tilde=s_tilde,
        S_tilde_star=s_tilde_star,
        G=g_space,
        G0=g0_space,
        G_tilde=g_tilde,
        cfg=cfg,
    )


def _restrict_star(sym: LinearRelation, window: Subspace, side: str,
                   cfg: ToleranceConfig) -> LinearRelation:
    """Members of sym* whose chosen component lies in the window subspace."""
    star = adjoint(sym, cfg)
    block = star.domain_block if side == "dom" else star.range_block
    residual = block - window.basis @ (window.basis.conj().T @ block)
    coeffs = nullspace_columns(residual, cfg.rank_tol)
    basis = orthonormal_columns(star.graph.basis @ coeffs, cfg.rank_tol)
    return LinearRelation(star.n1, star.n2, Subspace(star.n1 + star.n2, basis))


def friedrichs_generic(sym: LinearRelation,
                       cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Friedrichs extension {(h, k) in S* : h in closure of dom S}.

    This definitional form is valid in the zero-form case, i.e. when the
    numerical range of S collapses to {0}; other inputs are refused.
    """
    if not classify(sym, cfg).dom_perp_ran:
        raise PreconditionViolated(
            "friedrichs_generic needs dom S perpendicular to ran S"
        )
    return _restrict_star(sym, parts(sym, cfg).dom, "dom", cfg)


def krein_generic(sym: LinearRelation,
                  cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Krein-von Neumann extension {(h, k) in S* : k in closure of ran S}.

    Same zero-form precondition as friedrichs_generic; it is also the
    inverse of the Friedrichs extension of the inverse.
    """
    if not classify(sym, cfg).dom_perp_ran:
        raise PreconditionViolated(
            "krein_generic needs dom S perpendicular to ran S"
        )
    return _restrict_star(sym, parts(sym, cfg).ran, "ran", cfg)


def _coerce_bundle(source: LinearRelation | LiftBundle,
                   cfg: ToleranceConfig) -> LiftBundle:
    if isinstance(source, LiftBundle):
        return source
    return lift(source, cfg)


def nonneg_extension(source: LinearRelation | LiftBundle,
                     theta: LinearRelation,
                     cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Selfadjoint extension attached to a boundary parameter on G0.

    theta is a selfadjoint relation in the fixed basis of
    G0 = mul R* (+) ker R*.  The extension is the orthogonal graph sum of
    the zero operator on the domain closure, theta transplanted onto G0,
    and the purely multivalued part {0} x ({0} (+) ran R).  The result is
    selfadjoint, extends S0, and is nonnegative exactly when theta is.
    """
    bundle = _coerce_bundle(source, cfg)
    g0 = bundle.G0.dim
    if theta.n1 != g0 or theta.n2 != g0:
        raise DimensionMismatch(
            f"theta acts on C^{theta.n1}, but dim G0 = {g0}"
        )
    if g0 and not classify(theta, cfg).is_selfadjoint:
        raise PreconditionViolated("theta is not selfadjoint in G0")

    n1, n2 = bundle.n1, bundle.n2
    n = bundle.n
    dom_b = bundle.dom_R.basis
    ran_b = bundle.ran_R.basis
    g0_b = bundle.G0.basis

    zero_on_dom = _lift_columns(n1, n2, h1=dom_b, width=bundle.dom_R.dim)
    theta_cols = np.vstack(
        [g0_b @ theta.domain_block, g0_b @ theta.range_block]
    )
    mul_cols = _lift_columns(n1, n2, k2=ran_b, width=bundle.ran_R.dim)
    basis = np.hstack([zero_on_dom, theta_cols, mul_cols])
    return LinearRelation(n, n, Subspace(2 * n, basis))


def _require_nonneg_selfadjoint_extension(a: LinearRelation,
                                          bundle: LiftBundle,
                                          cfg: ToleranceConfig) -> None:
    report = classify(a, cfg)
    if not report.is_selfadjoint:
        raise PreconditionViolated("extension is not selfadjoint")
    if not report.is_nonnegative:
        raise PreconditionViolated("extension is not nonnegative")
    if relate(bundle.S.graph, a.graph, cfg).verdict not in (
        Verdict.EQUAL,
        Verdict.SUBSET,
    ):
        raise PreconditionViolated("relation does not extend S")


def is_extremal(a: LinearRelation, bundle: LiftBundle,
                cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """Extremality of a nonnegative selfadjoint extension of S.

    Extremal extensions are exactly the ones whose own numerical range
    collapses to {0}; the exact cross-Gram test decides that.
    """
    _require_nonneg_selfadjoint_extension(a, bundle, cfg)
    return classify(a, cfg).dom_perp_ran


def krein_order_margin(a: LinearRelation, bundle: LiftBundle,
                       cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Worst eigenvalue of the two resolvent-difference matrices.

    The extreme extensions bound every nonnegative selfadjoint extension
    A of S in the antitone resolvent order,

        (S_F + 1)^{-1} <= (A + 1)^{-1} <= (S_K + 1)^{-1},

    so both differences must be Hermitian PSD.  Returns the smallest
    eigenvalue seen (>= psd_floor means the order holds); -inf when a
    difference fails to be Hermitian at all.
    """
    _require_nonneg_selfadjoint_extension(a, bundle, cfg)
    res_f = resolvent(bundle.S_F, -1.0, cfg)
    res_a = resolvent(a, -1.0, cfg)
    res_k = resolvent(bundle.S_K, -1.0, cfg)
    margin = math.inf
    for diff in (res_a - res_f, res_k - res_a):
        if not diff.size:
            continue
        if np.max(np.abs(diff - diff.conj().T)) > 1e-8:
            return -math.inf
        herm = (diff + diff.conj().T) / 2.0
        margin = min(margin, float(np.linalg.eigvalsh(herm)[0]))
    return margin


def krein_order_check(a: LinearRelation, bundle: LiftBundle,
                      cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """Resolvent sandwich (S_F + 1)^-1 <= (A + 1)^-1 <= (S_K + 1)^-1."""
    return krein_order_margin(a, bundle, cfg) >= cfg.psd_floor


def extremal_family(bundle: LiftBundle, l_space: Subspace,
                    cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Extension for the product parameter theta = L x (G0 (-) L)."""
    if l_space.ambient_dim != bundle.G0.dim:
        raise DimensionMismatch(
            f"L lives in C^{l_space.ambient_dim}, expected C^{bundle.G0.dim}"
        )
    theta = from_product(l_space, complement(l_space, cfg))
    a = nonneg_extension(bundle, theta, cfg)
    if not is_extremal(a, bundle, cfg):
        raise ArithmeticError("product-form parameter produced a non-extremal extension")
    return a


def s0_adjoint_decomposition_check(bundle: LiftBundle,
                                   cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """S0* = S_F +^ S_K (and the closed form), plus S* = H +^ K."""
    s0_adj = adjoint(bundle.S0, cfg)
    sum_fk = componentwise_sum(bundle.S_F, bundle.S_K, cfg)
    ok = relate(s0_adj.graph, sum_fk.graph, cfg).verdict is Verdict.EQUAL
    ok = ok and relate(s0_adj.graph, bundle.S0_star.graph, cfg).verdict is Verdict.EQUAL
    sum_hk = componentwise_sum(bundle.H, bundle.K, cfg)
    ok = ok and relate(bundle.S_star.graph, sum_hk.graph, cfg).verdict is Verdict.EQUAL
    return ok


def is_singular_relation(rel: LinearRelation,
                         cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """True when R is the product (closure of dom R) x (mul R).

    Singular relations are exactly the ones whose operator part is the
    zero operator, and exactly the ones whose Friedrichs and Krein
    extensions are disjoint (meet equal to the lift itself).
    """
    p = parts(rel, cfg)
    product = from_product(p.dom, p.mul)
    return relate(rel.graph, product.graph, cfg).verdict is Verdict.EQUAL
