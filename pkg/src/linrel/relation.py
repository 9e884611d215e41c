"""Linear relations between finite-dimensional complex Hilbert spaces.

A linear relation from C^{n1} to C^{n2} is any subspace of C^{n1+n2},
viewed as a multivalued map: the first n1 coordinates are the domain-side
component.  Operator graphs, purely multivalued relations, and everything
in between are the same kind of object here.

Inner products follow the convention <a, b> = b^H a (linear in the first
argument).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import DimensionMismatch, SpectrumError
from .subspace import (
    RelateResult,
    Subspace,
    Verdict,
    complement,
    join,
    meet,
    nullspace_columns,
    orthonormal_columns,
    relate,
    span,
)

__all__ = [
    "LinearRelation",
    "RelationParts",
    "SymmetryReport",
    "from_operator",
    "from_kernel_pair",
    "from_graph",
    "from_product",
    "identity_relation",
    "zero_operator",
    "parts",
    "adjoint",
    "inverse",
    "operator_part",
    "classify",
    "eigenspace",
    "defect_relation",
    "resolvent",
    "componentwise_sum",
    "meet_relations",
    "orthogonal_componentwise_sum",
    "operator_norm",
    "relation_equal",
]


@dataclass(eq=False)
class LinearRelation:
    """A relation C^{n1} -> C^{n2} as the subspace of its graph."""

    n1: int
    n2: int
    graph: Subspace

    def __post_init__(self) -> None:
        if self.n1 < 1 or self.n2 < 1:
            raise DimensionMismatch(
                f"spaces must have dimension >= 1, got ({self.n1}, {self.n2})"
            )
        if self.graph.ambient_dim != self.n1 + self.n2:
            raise DimensionMismatch(
                f"graph lives in C^{self.graph.ambient_dim}, expected "
                f"C^{self.n1 + self.n2}"
            )

    @property
    def dim(self) -> int:
        return self.graph.dim

    @property
    def domain_block(self) -> np.ndarray:
        """Top n1 rows of the graph basis (domain-side components)."""
        return self.graph.basis[: self.n1]

    @property
    def range_block(self) -> np.ndarray:
        """Bottom n2 rows of the graph basis (range-side components)."""
        return self.graph.basis[self.n1 :]

    def equals(self, other: "LinearRelation",
               cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
        return (
            self.n1 == other.n1
            and self.n2 == other.n2
            and self.graph.equals(other.graph, cfg)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearRelation(n1={self.n1}, n2={self.n2}, dim={self.dim})"


@dataclass(frozen=True)
class RelationParts:
    """Domain, range, kernel, and multivalued part of a relation."""

    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


@dataclass(frozen=True)
class SymmetryReport:
    """Symmetry-class verdicts of a relation.

    Every field except the booleans needs the pairing <g, f> between the
    two components, which only exists when both live in the same space:
    for rectangular relations the symmetry booleans are False and
    dom_perp_ran / numerical_range_radius are None.  lower_bound is the
    greatest lower bound of the operator part on its domain: +inf when
    the domain is trivial (every bound holds vacuously), None when the
    relation is not symmetric.  A single finite relation is never
    unbounded below.
    """

    is_symmetric: bool
    is_selfadjoint: bool
    is_nonnegative: bool
    dom_perp_ran: bool | None
    lower_bound: float | None
    numerical_range_radius: float | None


def from_operator(mat) -> LinearRelation:
    """Graph of an everywhere-defined operator given by an n2 x n1 matrix."""
    mat = np.atleast_2d(np.asarray(mat, dtype=complex))
    n2, n1 = mat.shape
    basis = orthonormal_columns(
        np.vstack([np.eye(n1, dtype=complex), mat]), DEFAULT_TOLERANCES.rank_tol
    )
    return LinearRelation(n1, n2, Subspace(n1 + n2, basis))


def from_kernel_pair(c_mat, d_mat,
                     cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Relation {(Cx, Dx) : x in C^p} from a pair of matrices."""
    c_mat = np.atleast_2d(np.asarray(c_mat, dtype=complex))
    d_mat = np.atleast_2d(np.asarray(d_mat, dtype=complex))
    if c_mat.shape[1] != d_mat.shape[1]:
        raise DimensionMismatch(
            f"C has {c_mat.shape[1]} columns, D has {d_mat.shape[1]}"
        )
    n1, n2 = c_mat.shape[0], d_mat.shape[0]
    basis = orthonormal_columns(np.vstack([c_mat, d_mat]), cfg.rank_tol)
    return LinearRelation(n1, n2, Subspace(n1 + n2, basis))


def from_graph(n1: int, n2: int, graph: Subspace) -> LinearRelation:
    """Wrap an existing graph subspace of C^{n1+n2} as a relation."""
    return LinearRelation(n1, n2, graph)


def from_product(m_space: Subspace, n_space: Subspace) -> LinearRelation:
    """The product relation M x N (every pair (m, n) is in the relation).

    Dedicated constructor: the block-diagonal basis keeps the zero blocks
    exact instead of round-tripping them through a factorization.
    """
    basis = np.zeros(
        (m_space.ambient_dim + n_space.ambient_dim, m_space.dim + n_space.dim),
        dtype=complex,
    )
    basis[: m_space.ambient_dim, : m_space.dim] = m_space.basis
    basis[m_space.ambient_dim :, m_space.dim :] = n_space.basis
    return LinearRelation(
        m_space.ambient_dim,
        n_space.ambient_dim,
        Subspace(m_space.ambient_dim + n_space.ambient_dim, basis),
    )


def identity_relation(n: int) -> LinearRelation:
    return from_operator(np.eye(n, dtype=complex))


def zero_operator(n1: int, n2: int | None = None) -> LinearRelation:
    if n2 is None:
        n2 = n1
    return from_operator(np.zeros((n2, n1), dtype=complex))


def parts(rel: LinearRelation,
          cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> RelationParts:
    """Domain, range, kernel, multivalued part.

    ker and mul come from coefficient nullspaces of the graph blocks:
    coefficients c with Gc = 0 give kernel vectors Fc, and symmetrically
    for mul.
    """
    f_blk, g_blk = rel.domain_block, rel.range_block
    dom = span(f_blk, rel.n1, cfg)
    ran = span(g_blk, rel.n2, cfg)
    ker = span(f_blk @ nullspace_columns(g_blk, cfg.rank_tol), rel.n1, cfg)
    mul = span(g_blk @ nullspace_columns(f_blk, cfg.rank_tol), rel.n2, cfg)
    return RelationParts(dom=dom, ran=ran, ker=ker, mul=mul)


def adjoint(rel: LinearRelation,
            cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Adjoint relation, computed through the flip-flop complement.

    The orthogonal complement of the graph equals the flipped adjoint
    graph: (h, k) is in R* exactly when (k, -h) is orthogonal to R.  One
    factorization of the graph basis produces the whole adjoint; the
    definitional route lives in the oracle module as a cross-check.
    """
    ortho = complement(rel.graph, cfg).basis
    top, bottom = ortho[: rel.n1], ortho[rel.n1 :]
    basis = np.vstack([-bottom, top])
    return LinearRelation(rel.n2, rel.n1, Subspace(rel.n1 + rel.n2, basis))


def inverse(rel: LinearRelation) -> LinearRelation:
    """Componentwise swap of the graph."""
    basis = np.vstack([rel.range_block, rel.domain_block])
    return LinearRelation(rel.n2, rel.n1, Subspace(rel.n1 + rel.n2, basis))


def operator_part(rel: LinearRelation,
                  cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Single-valued part: project the range components off mul(R).

    The graph of the operator part is the orthogonal complement of
    {0} x mul(R) inside the graph, so one projection of the graph basis
    followed by a re-span does it.
    """
    mul = parts(rel, cfg).mul
    if mul.dim == 0:
        return rel
    z = np.zeros((rel.n1 + rel.n2, mul.dim), dtype=complex)
    z[rel.n1 :] = mul.basis
    projected = rel.graph.basis - z @ (z.conj().T @ rel.graph.basis)
    basis = orthonormal_columns(projected, cfg.rank_tol)
    return LinearRelation(rel.n1, rel.n2, Subspace(rel.n1 + rel.n2, basis))


def _lower_bound_of_operator_part(rel: LinearRelation,
                                  cfg: ToleranceConfig) -> float:
    """Smallest eigenvalue of the compressed operator part on its domain.

    With graph basis [F; G] of the operator part, the quadratic form
    <g, f> on unit domain vectors is the generalized Rayleigh quotient of
    (F^H G, F^H F).  Whitening the domain through the SVD of F turns that
    into a standard Hermitian eigenproblem, which stays stable when F is
    badly conditioned (steep operators have nearly vertical graphs).  A
    trivial domain means every bound holds, reported as +inf.
    """
    op = operator_part(rel, cfg)
    if op.dim == 0:
        return math.inf
    f_blk, g_blk = op.domain_block, op.range_block
    u, s, vh = np.linalg.svd(f_blk, full_matrices=False)
    keep = s > cfg.rank_tol * max(float(s[0]), 1.0)
    if not keep.any():
        return math.inf
    whitener = vh.conj().T[:, keep] / s[keep]
    a = f_blk.conj().T @ g_blk
    a = (a + a.conj().T) / 2.0
    reduced = whitener.conj().T @ a @ whitener
    return float(np.linalg.eigvalsh(reduced)[0])


def classify(rel: LinearRelation,
             cfg: ToleranceConfig = DEFAULT_TOLERANCES,
             samples: int = 2048,
             seed: int = 0) -> SymmetryReport:
    """Symmetry-class report.

    The dom-perp-ran test is exact: with graph basis [F; G] the numerical
    range collapses to {0} precisely when the cross-Gram matrix F^H G
    vanishes (complex polarization), which is also the condition for the
    domain and range spans to be orthogonal.  Nonnegativity is the
    Hermitian-PSD test on the same matrix.  The sampled radius is
    cosmetic; the algebraic tests are authoritative.  All of these need
    the pairing between the two components, so a rectangular relation
    gets None for dom_perp_ran and the radius.
    """
    if rel.n1 != rel.n2:
        return SymmetryReport(
            is_symmetric=False,
            is_selfadjoint=False,
            is_nonnegative=False,
            dom_perp_ran=None,
            lower_bound=None,
            numerical_range_radius=None,
        )

    f_blk, g_blk = rel.domain_block, rel.range_block
    cross = f_blk.conj().T @ g_blk
    dom_perp_ran = bool(
        cross.size == 0 or np.max(np.abs(cross)) <= cfg.rank_tol
    )
    hermitian = bool(
        cross.size == 0
        or np.max(np.abs(cross - cross.conj().T)) <= cfg.rank_tol
    )

    verdict = relate(rel.graph, adjoint(rel, cfg).graph, cfg).verdict
    is_symmetric = verdict in (Verdict.EQUAL, Verdict.SUBSET)
    is_selfadjoint = verdict is Verdict.EQUAL
    is_nonnegative = False
    lower_bound: float | None = None
    if is_symmetric and hermitian:
        eig_floor = 0.0
        if cross.size:
            herm = (cross + cross.conj().T) / 2.0
            eig_floor = float(np.linalg.eigvalsh(herm)[0])
        is_nonnegative = eig_floor >= cfg.psd_floor
        lower_bound = _lower_bound_of_operator_part(rel, cfg)

    radius = 0.0
    if rel.dim and np.max(np.abs(f_blk)) > 0:
        rng = np.random.default_rng(seed)
        coeff = rng.standard_normal((rel.dim, samples)) + 1j * rng.standard_normal(
            (rel.dim, samples)
        )
        f_vals = f_blk @ coeff
        norms_sq = np.einsum("ij,ij->j", f_vals.conj(), f_vals).real
        mask = norms_sq > 1e-24
        if mask.any():
            g_vals = g_blk @ coeff
            pairings = np.einsum("ij,ij->j", f_vals.conj(), g_vals)
            radius = float(np.max(np.abs(pairings[mask] / norms_sq[mask])))

    return SymmetryReport(
        is_symmetric=is_symmetric,
        is_selfadjoint=is_selfadjoint,
        is_nonnegative=is_nonnegative,
        dom_perp_ran=dom_perp_ran,
        lower_bound=lower_bound,
        numerical_range_radius=radius,
    )


def eigenspace(rel: LinearRelation, lam: complex,
               cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Subspace:
    """N_lambda(T) = {f : (f, lambda f) in T}."""
    if rel.n1 != rel.n2:
        raise DimensionMismatch("eigenspace needs a square relation")
    pencil = rel.range_block - lam * rel.domain_block
    coeffs = nullspace_columns(pencil, cfg.rank_tol)
    return span(rel.domain_block @ coeffs, rel.n1, cfg)


def defect_relation(rel: LinearRelation, lam: complex,
                    cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """The defect pairs {(f, lambda f)} in T, as a relation."""
    if rel.n1 != rel.n2:
        raise DimensionMismatch("defect pairs need a square relation")
    pencil = rel.range_block - lam * rel.domain_block
    coeffs = nullspace_columns(pencil, cfg.rank_tol)
    basis = orthonormal_columns(rel.graph.basis @ coeffs, cfg.rank_tol)
    return LinearRelation(rel.n1, rel.n2, Subspace(rel.n1 + rel.n2, basis))


def resolvent(rel: LinearRelation, lam: complex,
              cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """Matrix of (A - lambda)^{-1} when it is an everywhere-defined operator.

    The graph of the inverse is {(g - lambda f, f)}; it is the graph of a
    bounded everywhere-defined operator exactly when the pencil
    G - lambda F is square and invertible at the configured rank
    threshold.  Spectral points are detected that way, not by eigenvalue
    proximity, so relations with a nontrivial multivalued part are handled
    correctly (the resolvent vanishes on mul A).
    """
    if rel.n1 != rel.n2:
        raise DimensionMismatch("resolvent needs a square relation")
    n = rel.n1
    pencil = rel.range_block - lam * rel.domain_block
    if rel.dim != n:
        raise SpectrumError(
            f"graph dimension {rel.dim} != {n}: (A - lambda)^(-1) cannot be "
            "an everywhere-defined operator"
        )
    s = np.linalg.svd(pencil, compute_uv=False)
    if s.size == 0 or s[-1] <= cfg.rank_tol * s[0]:
        raise SpectrumError(f"lambda = {lam} is a spectral point")
    return rel.domain_block @ np.linalg.inv(pencil)


def componentwise_sum(a: LinearRelation, b: LinearRelation,
                      cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Componentwise (graph) sum: the join of the two graph subspaces."""
    if (a.n1, a.n2) != (b.n1, b.n2):
        raise DimensionMismatch(
            f"componentwise sum of ({a.n1},{a.n2}) and ({b.n1},{b.n2}) relations"
        )
    return LinearRelation(a.n1, a.n2, join(a.graph, b.graph, cfg))


def meet_relations(a: LinearRelation, b: LinearRelation,
                   cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Intersection of two relations: the meet of the graph subspaces."""
    if (a.n1, a.n2) != (b.n1, b.n2):
        raise DimensionMismatch(
            f"intersecting ({a.n1},{a.n2}) and ({b.n1},{b.n2}) relations"
        )
    return LinearRelation(a.n1, a.n2, meet(a.graph, b.graph, cfg))


def orthogonal_componentwise_sum(
    a: LinearRelation, b: LinearRelation,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> LinearRelation:
    """Componentwise sum that asserts the graphs are orthogonal."""
    if (a.n1, a.n2) != (b.n1, b.n2):
        raise DimensionMismatch(
            f"componentwise sum of ({a.n1},{a.n2}) and ({b.n1},{b.n2}) relations"
        )
    overlap = a.graph.basis.conj().T @ b.graph.basis
    if overlap.size and np.max(np.abs(overlap)) > 1e-8:
        raise ValueError(
            "graphs are not orthogonal; use componentwise_sum instead"
        )
    basis = np.hstack([a.graph.basis, b.graph.basis])
    return LinearRelation(a.n1, a.n2, Subspace(a.n1 + a.n2, basis))


def operator_norm(rel: LinearRelation,
                  cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Norm of a single-valued relation as an operator on its domain."""
    if parts(rel, cfg).mul.dim != 0:
        raise ValueError("operator_norm needs a single-valued relation")
    if rel.dim == 0:
        return 0.0
    mat = rel.range_block @ np.linalg.pinv(rel.domain_block)
    s = np.linalg.svd(mat, compute_uv=False)
    return float(s[0]) if s.size else 0.0


def relation_equal(a: LinearRelation, b: LinearRelation,
                   cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> RelateResult:
    """Relate the graphs of two relations over the same pair of spaces."""
    if (a.n1, a.n2) != (b.n1, b.n2):
        raise DimensionMismatch(
            f"comparing ({a.n1},{a.n2}) and ({b.n1},{b.n2}) relations"
        )
    return relate(a.graph, b.graph, cfg)
