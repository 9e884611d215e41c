"""Subspace arithmetic: spans, complements, lattice operations, verdicts."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linrel.subspace import (
    Subspace,
    Verdict,
    complement,
    join,
    meet,
    oplus,
    relate,
    span,
)

from conftest import assert_subspace_equal


def random_subspace(rng, ambient, dim):
    raw = rng.normal(size=(ambient, dim)) + 1j * rng.normal(size=(ambient, dim))
    return span(raw, ambient)


def test_span_deduplicates_dependent_columns():
    v = np.array([[1.0], [2.0], [0.0]], dtype=complex)
    u = span(np.hstack([v, 3 * v, -v]), 3)
    assert u.dim == 1


def test_span_of_noise_is_zero():
    # unit-scale floor: a matrix that is numerically zero must not
    # resurrect as a full-rank basis after normalization
    noise = np.full((4, 3), 1e-14, dtype=complex)
    assert span(noise, 4).dim == 0


def test_subspace_rejects_non_orthonormal_basis():
    bad = np.array([[1.0], [1.0]], dtype=complex)
    with pytest.raises(ValueError, match="orthonormal"):
        Subspace(2, bad)


def test_zero_and_full():
    z = Subspace.zero(3)
    f = Subspace.full(3)
    assert z.dim == 0 and f.dim == 3
    assert relate(z, f).verdict is Verdict.SUBSET
    np.testing.assert_allclose(f.projector(), np.eye(3), atol=1e-14)
    np.testing.assert_allclose(z.projector(), np.zeros((3, 3)), atol=1e-14)


def test_complement_involution_and_dimension(rng):
    for dim in range(5):
        u = random_subspace(rng, 4, dim)
        uc = complement(u)
        assert uc.dim == 4 - u.dim
        assert np.max(np.abs(uc.basis.conj().T @ u.basis)) < 1e-12 \
            if u.dim and uc.dim else True
        assert_subspace_equal(complement(uc), u)


def test_meet_join_de_morgan(rng):
    u = random_subspace(rng, 5, 3)
    v = random_subspace(rng, 5, 3)
    m = meet(u, v)
    j = join(u, v)
    assert m.dim + j.dim == u.dim + v.dim
    assert_subspace_equal(complement(j), meet(complement(u), complement(v)))


def test_relate_verdicts(rng):
    u = random_subspace(rng, 6, 2)
    w = join(u, random_subspace(rng, 6, 2))
    res = relate(u, w)
    assert res.verdict is Verdict.SUBSET
    assert res.forward_angle < 1e-10 and res.reverse_angle > 1e-4
    assert relate(w, u).verdict is Verdict.SUPERSET
    assert relate(u, u).verdict is Verdict.EQUAL

    a = span(np.eye(4)[:, :2], 4)
    b = span(np.eye(4)[:, 1:3], 4)
    assert relate(a, b).verdict is Verdict.INCOMPARABLE


def test_relate_angle_is_the_principal_angle():
    theta = 0.3
    a = span(np.array([[1.0], [0.0]]), 2)
    b = span(np.array([[np.cos(theta)], [np.sin(theta)]]), 2)
    res = relate(a, b)
    assert res.verdict is Verdict.INCOMPARABLE
    assert abs(res.angle - theta) < 1e-12


def test_oplus_blocks(rng):
    u = random_subspace(rng, 3, 2)
    v = random_subspace(rng, 2, 1)
    w = oplus(u, v)
    assert w.ambient_dim == 5 and w.dim == 3
    # top-right and bottom-left blocks stay exactly zero
    assert np.all(w.basis[:3, 2:] == 0)
    assert np.all(w.basis[3:, :2] == 0)


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(0, 2**31 - 1),
    ambient=st.integers(1, 6),
    d1=st.integers(0, 6),
    d2=st.integers(0, 6),
)
def test_lattice_properties(seed, ambient, d1, d2):
    rng = np.random.default_rng(seed)
    u = random_subspace(rng, ambient, min(d1, ambient))
    v = random_subspace(rng, ambient, min(d2, ambient))
    m, j = meet(u, v), join(u, v)
    assert m.dim + j.dim == u.dim + v.dim
    assert relate(m, u).verdict in (Verdict.EQUAL, Verdict.SUBSET)
    assert relate(u, j).verdict in (Verdict.EQUAL, Verdict.SUBSET)
    assert_subspace_equal(complement(complement(u)), u)
