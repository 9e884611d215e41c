"""Shared fixtures and assertion helpers for the test suite."""

import numpy as np
import pytest

from linrel.config import DEFAULT_TOLERANCES
from linrel.relation import relation_equal
from linrel.subspace import Verdict, relate


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


def assert_subspace_equal(u, v, tol=1e-8, msg=""):
    res = relate(u, v)
    assert res.verdict is Verdict.EQUAL and res.angle < tol, (
        f"{msg or 'subspaces differ'}: verdict={res.verdict.name} "
        f"angle={res.angle:.3e}"
    )


def assert_relation_equal(r, s, tol=1e-8, msg=""):
    res = relation_equal(r, s)
    assert res.verdict is Verdict.EQUAL and res.angle < tol, (
        f"{msg or 'relations differ'}: verdict={res.verdict.name} "
        f"angle={res.angle:.3e}"
    )


def assert_relation_subset(r, s, tol=1e-8, msg=""):
    res = relation_equal(r, s)
    assert res.verdict in (Verdict.EQUAL, Verdict.SUBSET), (
        f"{msg or 'not a sub-relation'}: verdict={res.verdict.name} "
        f"forward_angle={res.forward_angle:.3e}"
    )
    assert res.forward_angle < tol


CFG = DEFAULT_TOLERANCES
