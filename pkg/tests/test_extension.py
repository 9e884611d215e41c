"""The lift of a relation to a symmetric relation in the product space,
its distinguished selfadjoint extensions, and the extremal family."""

import numpy as np
import pytest

from linrel.errors import DimensionMismatch, PreconditionViolated
from linrel.extension import (
    extremal_family,
    friedrichs_generic,
    is_extremal,
    is_singular_relation,
    krein_generic,
    krein_order_check,
    krein_order_margin,
    lift,
    nonneg_extension,
    s0_adjoint_decomposition_check,
)
from linrel.oracle import (
    random_relation,
    random_selfadjoint_relation,
)
from linrel.relation import (
    adjoint,
    classify,
    from_operator,
    from_product,
    identity_relation,
    meet_relations,
    parts,
    relation_equal,
    zero_operator,
)
from linrel.subspace import Subspace, Verdict, oplus, span

from conftest import assert_relation_equal, assert_subspace_equal


@pytest.fixture
def bundle(rng):
    # graph dimension 2 in C^2 x C^3 keeps ran R proper, so the basic
    # boundary space G0 is never trivial
    return lift(random_relation(2, 3, rank=2, rng=rng))


class TestLiftStructure:
    def test_s_is_symmetric_with_orthogonal_dom_ran(self, bundle):
        rep = classify(bundle.S)
        assert rep.is_symmetric and rep.dom_perp_ran and rep.is_nonnegative

    def test_s_star_is_the_adjoint(self, bundle):
        assert_relation_equal(adjoint(bundle.S), bundle.S_star)

    def test_s_tilde_star_is_the_adjoint(self, bundle):
        assert_relation_equal(adjoint(bundle.S_tilde), bundle.S_tilde_star)

    def test_s0_star_is_the_adjoint(self, bundle):
        assert_relation_equal(adjoint(bundle.S0), bundle.S0_star)

    def test_chain_of_inclusions(self, bundle):
        for smaller, larger in [
            (bundle.S, bundle.S0),
            (bundle.S0, bundle.S0_star),
            (bundle.S, bundle.S_tilde),
            (bundle.S_tilde, bundle.S_tilde_star),
            (bundle.H, bundle.S_star),
            (bundle.K, bundle.S_star),
            (bundle.S0, bundle.S_F),
            (bundle.S_F, bundle.S0_star),
            (bundle.S_K, bundle.S0_star),
        ]:
            res = relation_equal(smaller, larger)
            assert res.verdict in (Verdict.EQUAL, Verdict.SUBSET)

    def test_decompositions(self, bundle):
        assert s0_adjoint_decomposition_check(bundle)

    def test_friedrichs_closed_form(self, bundle):
        assert_relation_equal(friedrichs_generic(bundle.S), bundle.S_F)

    def test_krein_closed_form(self, bundle):
        assert_relation_equal(krein_generic(bundle.S), bundle.S_K)

    def test_friedrichs_rejects_generic_symmetric(self):
        # the closed form needs dom S perp ran S; a plain Hermitian
        # matrix violates that
        with pytest.raises(PreconditionViolated, match="perpendicular"):
            friedrichs_generic(from_operator(np.diag([1.0, 2.0])))

    def test_s_tilde_is_friedrichs_meet_k(self, bundle):
        assert_relation_equal(
            meet_relations(bundle.S_F, bundle.K), bundle.S_tilde
        )


class TestDistinguishedExtensions:
    def test_h_and_extremes_are_nonneg_selfadjoint(self, bundle):
        for ext in (bundle.H, bundle.S_F, bundle.S_K):
            rep = classify(ext)
            assert rep.is_selfadjoint and rep.is_nonnegative

    def test_k_is_selfadjoint_but_indefinite(self):
        # scalar model: R = graph of 1 gives K = the flip (f,g)->(g,f),
        # a selfadjoint involution with eigenvalues +1 and -1
        bundle = lift(from_operator(np.array([[1.0]])))
        rep = classify(bundle.K)
        assert rep.is_selfadjoint and not rep.is_nonnegative
        flip = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert_relation_equal(bundle.K, from_operator(flip))
        assert abs(rep.lower_bound + 1.0) < 1e-12

    def test_extremality(self, bundle):
        assert is_extremal(bundle.H, bundle)
        assert is_extremal(bundle.S_F, bundle)
        assert is_extremal(bundle.S_K, bundle)

    def test_extremality_rejects_indefinite_k(self, bundle):
        with pytest.raises(PreconditionViolated, match="nonnegative"):
            is_extremal(bundle.K, bundle)

    def test_krein_order_of_extremes(self, bundle):
        assert krein_order_margin(bundle.S_F, bundle) >= -1e-10
        assert krein_order_margin(bundle.S_K, bundle) >= -1e-10
        assert krein_order_check(bundle.H, bundle)

    def test_singular_flags(self):
        assert is_singular_relation(zero_operator(2))
        assert is_singular_relation(
            from_product(Subspace.zero(2), Subspace.full(3))
        )
        assert not is_singular_relation(identity_relation(2))

    def test_h_is_singular_k_is_not(self, bundle):
        assert is_singular_relation(bundle.H)
        assert not is_singular_relation(bundle.K)


class TestNonnegExtension:
    def test_matches_boundary_route(self, rng):
        from linrel.boundary import extension_from_boundary, triplet_basic

        bundle = lift(random_relation(2, 3, rank=2, rng=rng))
        trip = triplet_basic(bundle)
        g0 = bundle.G0.dim
        theta = random_selfadjoint_relation(g0, rng=rng, nonneg=True)
        assert_relation_equal(
            nonneg_extension(bundle, theta),
            extension_from_boundary(trip, theta),
        )

    def test_rejects_non_selfadjoint_parameter(self, bundle):
        g0 = bundle.G0.dim
        theta = from_operator(1j * np.eye(g0))
        with pytest.raises(PreconditionViolated, match="selfadjoint"):
            nonneg_extension(bundle, theta)

    def test_rejects_wrong_parameter_dimension(self, bundle):
        theta = identity_relation(bundle.G0.dim + 1)
        with pytest.raises(DimensionMismatch):
            nonneg_extension(bundle, theta)

    def test_sandwiched_between_s_and_s_star(self, bundle, rng):
        g0 = bundle.G0.dim
        theta = random_selfadjoint_relation(g0, rng=rng, nonneg=True)
        ext = nonneg_extension(bundle, theta)
        assert relation_equal(bundle.S, ext).verdict in (
            Verdict.EQUAL, Verdict.SUBSET,
        )
        assert relation_equal(ext, bundle.S_star).verdict in (
            Verdict.EQUAL, Verdict.SUBSET,
        )


class TestExtremalFamily:
    def test_endpoints(self, bundle):
        # parameter subspace {0} freezes gamma0: the Friedrichs end;
        # the full parameter space frees it: the Krein end
        a_zero = extremal_family(bundle, Subspace.zero(bundle.G0.dim))
        a_full = extremal_family(bundle, Subspace.full(bundle.G0.dim))
        assert_relation_equal(a_zero, bundle.S_F)
        assert_relation_equal(a_full, bundle.S_K)

    def test_members_are_extremal_and_ordered(self, bundle, rng):
        g0 = bundle.G0.dim
        for dim in range(g0 + 1):
            raw = rng.normal(size=(g0, dim)) + 1j * rng.normal(size=(g0, dim))
            a_l = extremal_family(bundle, span(raw, g0))
            assert is_extremal(a_l, bundle)
            assert krein_order_check(a_l, bundle)


class TestNamedExamples:
    def test_scalar_graph(self):
        # R = graph of 1 in C x C: everything is explicit.  R is densely
        # defined and surjective, so the basic boundary space is trivial
        bundle = lift(from_operator(np.array([[1.0]])))
        assert bundle.S.dim == 1 and bundle.S_star.dim == 3
        assert bundle.G.dim == 1 and bundle.G0.dim == 0
        p = parts(bundle.S)
        assert_subspace_equal(p.dom, oplus(Subspace.full(1), Subspace.zero(1)))
        assert_subspace_equal(p.ran, oplus(Subspace.zero(1), Subspace.full(1)))
        # S_F = H here: the domain of R is everything
        assert_relation_equal(bundle.S_F, bundle.H)

    def test_zero_operator(self):
        bundle = lift(zero_operator(2))
        # ran R = {0} makes S the zero operator on H1 (+) {0}
        assert_relation_equal(
            bundle.S,
            from_product(
                oplus(Subspace.full(2), Subspace.zero(2)),
                Subspace.zero(4),
            ),
        )
        assert is_singular_relation(bundle.S)
        # singular lift: Friedrichs and Krein meet in S itself
        assert_relation_equal(meet_relations(bundle.S_F, bundle.S_K), bundle.S)

    def test_pure_multivalued(self):
        bundle = lift(from_product(Subspace.zero(1), Subspace.full(1)))
        # dom R = {0}: the lift is {0} x ({0} (+) H2)
        assert bundle.S.dim == 1
        p = parts(bundle.S)
        assert p.dom.dim == 0 and p.mul.dim == 1
        assert is_singular_relation(bundle.S)
        # Friedrichs keeps the trivial domain, Krein maximizes the kernel
        assert_relation_equal(
            bundle.S_F, from_product(Subspace.zero(2), Subspace.full(2))
        )
        assert_relation_equal(
            bundle.S_K,
            from_product(
                oplus(Subspace.full(1), Subspace.zero(1)),
                oplus(Subspace.zero(1), Subspace.full(1)),
            ),
        )


class TestIntermediateLift:
    """The intermediate extension keeps dom perp ran, so the extreme-
    extension machinery applies to it directly; its Friedrichs and Krein
    extensions and the product relation dom x ran have explicit forms in
    terms of the original parts."""

    @pytest.fixture
    def mid(self, rng):
        bundle = lift(random_relation(2, 3, rank=2, rng=rng))
        p = parts(bundle.S_tilde)
        s0_mid = from_product(p.dom, p.ran)
        return bundle, s0_mid

    def test_keeps_orthogonal_dom_ran(self, mid):
        bundle, _ = mid
        assert classify(bundle.S_tilde).dom_perp_ran

    def test_friedrichs_is_unchanged(self, mid):
        bundle, _ = mid
        assert_relation_equal(
            friedrichs_generic(bundle.S_tilde), bundle.S_F
        )

    def test_krein_product_form(self, mid):
        bundle, _ = mid
        want = from_product(
            oplus(bundle.dom_R, bundle.ker_R_star),
            oplus(bundle.mul_R_star, bundle.ran_R),
        )
        assert_relation_equal(krein_generic(bundle.S_tilde), want)

    def test_dom_ran_product_form(self, mid):
        bundle, s0_mid = mid
        want = from_product(
            oplus(bundle.dom_R, Subspace.zero(bundle.n2)),
            oplus(bundle.mul_R_star, bundle.ran_R),
        )
        assert_relation_equal(s0_mid, want)

    def test_dom_ran_product_adjoint(self, mid):
        bundle, s0_mid = mid
        want = from_product(
            oplus(bundle.dom_R, bundle.ker_R_star),
            oplus(bundle.mul_R_star, Subspace.full(bundle.n2)),
        )
        assert_relation_equal(adjoint(s0_mid), want)

    def test_dom_ran_product_adjoint_eigenspaces_are_flat(self, mid):
        # the adjoint is a product relation: for nonzero lambda its
        # eigenspace is {0} (+) ker R*, independent of lambda
        from linrel.relation import eigenspace

        bundle, s0_mid = mid
        star = adjoint(s0_mid)
        want = oplus(Subspace.zero(bundle.n1), bundle.ker_R_star)
        for lam in (-1.0, 1.0, 2.0, 1j):
            assert_subspace_equal(eigenspace(star, lam), want)
