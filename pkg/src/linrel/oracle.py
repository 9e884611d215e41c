"""Brute-force verifiers and seeded input generators for the test suite.

The verifiers here deliberately avoid the main modules' algorithms:
adjoint_definitional solves the defining pairing equations as one dense
nullspace problem with its own SVD helper, and numerical_range_hull
samples the range definition directly.  They are allowed to be slower;
they exist to disagree loudly when the fast paths are wrong.

The random_* generators are input factories for property tests, not
verifiers, so they may lean on plain QR factorizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .boundary import extension_from_boundary, triplet_main
from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .extension import LiftBundle, lift
from .relation import LinearRelation, classify, relation_equal
from .subspace import Subspace, Verdict, relate

__all__ = [
    "adjoint_definitional",
    "numerical_range_hull",
    "SweepRecord",
    "SweepReport",
    "extension_sweep",
    "random_relation",
    "random_selfadjoint_relation",
    "random_hermitian",
]


def _svd_nullspace(mat: np.ndarray, rank_tol: float) -> np.ndarray:
    """Orthonormal nullspace basis; local copy to keep the oracle separate.

    Rank thresholding is relative to max(s[0], 1): inputs are assembled
    from unit-norm graph columns, so anything far below unit scale is
    noise, not rank.
    """
    rows, cols = mat.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=complex)
    if rows == 0:
        return np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    rank = int(np.count_nonzero(s > rank_tol * max(float(s[0]), 1.0)))
    return vh[rank:].conj().T


def adjoint_definitional(rel: LinearRelation,
                         cfg: ToleranceConfig = DEFAULT_TOLERANCES,
                         ) -> LinearRelation:
    """Adjoint straight from the pairing equations.

    (h, k) belongs to R* exactly when <g, h> = <f, k> for every (f, g)
    in R; testing against each graph basis column gives the linear system
    [G^H, -F^H] (h; k) = 0, one row per column of the graph basis.
    """
    f_blk, g_blk = rel.domain_block, rel.range_block
    system = np.hstack([g_blk.conj().T, -f_blk.conj().T])
    basis = _svd_nullspace(system, cfg.rank_tol)
    return LinearRelation(rel.n2, rel.n1, Subspace(rel.n1 + rel.n2, basis))


def numerical_range_hull(rel: LinearRelation, samples: int = 4096,
                         seed: int = 0) -> np.ndarray:
    """Sampled point cloud of {<g, f> / ||f||^2 : (f, g) in R, f != 0}.

    Purely multivalued relations have no admissible f; their range is
    {0} by convention and a single zero point is returned.
    """
    f_blk, g_blk = rel.domain_block, rel.range_block
    if rel.dim == 0 or np.max(np.abs(f_blk)) == 0.0:
        return np.zeros(1, dtype=complex)
    rng = np.random.default_rng(seed)
    coeff = rng.standard_normal((rel.dim, samples)) + 1j * rng.standard_normal(
        (rel.dim, samples)
    )
    f_vals = f_blk @ coeff
    norms_sq = np.einsum("ij,ij->j", f_vals.conj(), f_vals).real
    mask = norms_sq > 1e-24
    if not mask.any():
        return np.zeros(1, dtype=complex)
    g_vals = g_blk @ coeff
    pairings = np.einsum("ij,ij->j", f_vals.conj(), g_vals)
    return pairings[mask] / norms_sq[mask]


@dataclass(frozen=True)
class SweepRecord:
    """Verdicts for one boundary parameter in an extension sweep."""

    theta_selfadjoint: bool
    extension: LinearRelation
    extension_selfadjoint: bool
    extends_s: bool
    inside_s_star: bool

    @property
    def consistent(self) -> bool:
        """Selfadjoint parameters must give selfadjoint extensions of S."""
        if not self.theta_selfadjoint:
            return True
        return self.extension_selfadjoint and self.extends_s and self.inside_s_star


@dataclass(frozen=True)
class SweepReport:
    records: tuple[SweepRecord, ...]
    injective: bool

    @property
    def all_consistent(self) -> bool:
        return all(r.consistent for r in self.records)


def extension_sweep(source: LinearRelation | LiftBundle,
                    thetas: Sequence[LinearRelation],
                    cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SweepReport:
    """Drive theta -> A_theta over a grid and check the claimed properties.

    Every selfadjoint theta must produce a selfadjoint relation between
    S and S*, and distinct parameters must produce distinct extensions
    (the parametrization is a bijection).  Non-selfadjoint parameters are
    expected to fail selfadjointness and are only recorded.
    """
    bundle = source if isinstance(source, LiftBundle) else lift(source, cfg)
    trip = triplet_main(bundle, cfg)
    records = []
    for theta in thetas:
        a_theta = extension_from_boundary(trip, theta, cfg)
        fwd = relate(bundle.S.graph, a_theta.graph, cfg).verdict
        bwd = relate(a_theta.graph, bundle.S_star.graph, cfg).verdict
        records.append(
            SweepRecord(
                theta_selfadjoint=classify(theta, cfg).is_selfadjoint,
                extension=a_theta,
                extension_selfadjoint=classify(a_theta, cfg).is_selfadjoint,
                extends_s=fwd in (Verdict.EQUAL, Verdict.SUBSET),
                inside_s_star=bwd in (Verdict.EQUAL, Verdict.SUBSET),
            )
        )

    injective = True
    for i in range(len(thetas)):
        for j in range(i + 1, len(thetas)):
            same_theta = (
                relation_equal(thetas[i], thetas[j], cfg).verdict
                is Verdict.EQUAL
            )
            same_ext = (
                relation_equal(
                    records[i].extension, records[j].extension, cfg
                ).verdict
                is Verdict.EQUAL
            )
            if same_ext and not same_theta:
                injective = False
    return SweepReport(records=tuple(records), injective=injective)


def _crandn(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal(
        (rows, cols)
    )


def random_relation(n1: int, n2: int, rank: int | None = None,
                    rng: np.random.Generator | int | None = None,
                    ) -> LinearRelation:
    """Haar-ish random relation: a random graph subspace of given rank."""
    rng = np.random.default_rng(rng)
    total = n1 + n2
    if rank is None:
        rank = int(rng.integers(0, total + 1))
    if not 0 <= rank <= total:
        raise ValueError(f"rank {rank} out of range for ambient C^{total}")
    if rank == 0:
        basis = np.zeros((total, 0), dtype=complex)
    else:
        basis = np.linalg.qr(_crandn(rng, total, rank))[0]
    return LinearRelation(n1, n2, Subspace(total, basis))


def random_hermitian(n: int, rng: np.random.Generator | int | None = None,
                     nonneg: bool = False) -> np.ndarray:
    rng = np.random.default_rng(rng)
    raw = _crandn(rng, n, n)
    if nonneg:
        return raw @ raw.conj().T
    return (raw + raw.conj().T) / 2.0


def random_selfadjoint_relation(n: int,
                                rng: np.random.Generator | int | None = None,
                                dom_dim: int | None = None,
                                nonneg: bool = False) -> LinearRelation:
    """Random selfadjoint relation in C^n, optionally nonnegative.

    Built as a Hermitian operator on a random subspace L plus the
    multivalued part {0} x L^perp; that decomposition is exactly the
    structure of a selfadjoint relation, so selfadjointness holds by
    construction instead of by rejection sampling.
    """
    rng = np.random.default_rng(rng)
    if dom_dim is None:
        dom_dim = int(rng.integers(0, n + 1))
    if not 0 <= dom_dim <= n:
        raise ValueError(f"dom_dim {dom_dim} out of range for C^{n}")
    full = np.linalg.qr(_crandn(rng, n, n), mode="complete")[0]
    l_basis, perp_basis = full[:, :dom_dim], full[:, dom_dim:]
    t_mat = random_hermitian(dom_dim, rng, nonneg=nonneg)

    op_cols = np.vstack([l_basis, l_basis @ t_mat])
    if dom_dim:
        op_cols = np.linalg.qr(op_cols)[0]
    mul_cols = np.vstack(
        [np.zeros((n, n - dom_dim), dtype=complex), perp_basis]
    )
    basis = np.hstack([op_cols, mul_cols])
    return LinearRelation(n, n, Subspace(2 * n, basis))
