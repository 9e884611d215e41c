"""Orthonormal-basis arithmetic for closed subspaces of C^n.

A subspace is stored as an ambient dimension together with a matrix whose
columns form an orthonormal basis.  The zero subspace (an ``(n, 0)`` basis
matrix) is a first-class value so that kernel and multivalued-part
computations never need special casing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import DimensionMismatch

__all__ = [
    "Subspace",
    "Verdict",
    "RelateResult",
    "span",
    "complement",
    "meet",
    "join",
    "relate",
    "oplus",
]


def _as_matrix(vectors, ambient_dim: int | None) -> np.ndarray:
    """Stack vectors as columns of a complex matrix."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        mat = np.asarray(vectors, dtype=complex)
    else:
        cols = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
        if not cols:
            if ambient_dim is None:
                raise DimensionMismatch(
                    "empty span needs an explicit ambient_dim"
                )
            return np.zeros((ambient_dim, 0), dtype=complex)
        lengths = {c.shape[0] for c in cols}
        if len(lengths) != 1:
            raise DimensionMismatch(f"mixed vector lengths {sorted(lengths)}")
        mat = np.column_stack(cols)
    if ambient_dim is not None and mat.shape[0] != ambient_dim:
        raise DimensionMismatch(
            f"vectors live in C^{mat.shape[0]}, expected C^{ambient_dim}"
        )
    return mat


def _numerical_rank(s: np.ndarray, rank_tol: float) -> int:
    """Singular values above rank_tol relative to max(leading value, 1).

    The unit floor matters: the matrices factored here are built from
    unit-norm columns, so a residual whose largest singular value sits far
    below 1 is a numerically zero matrix, and a purely relative threshold
    would resurrect its rounding noise as full rank.
    """
    if s.size == 0:
        return 0
    return int(np.count_nonzero(s > rank_tol * max(float(s[0]), 1.0)))


def orthonormal_columns(mat: np.ndarray, rank_tol: float) -> np.ndarray:
    """Orthonormal basis of the column span, rank decided by rank_tol."""
    mat = np.asarray(mat, dtype=complex)
    n, k = mat.shape
    if k == 0:
        return np.zeros((n, 0), dtype=complex)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    return u[:, : _numerical_rank(s, rank_tol)]


def nullspace_columns(mat: np.ndarray, rank_tol: float) -> np.ndarray:
    """Orthonormal basis of ker(mat) as columns; mat may be empty."""
    mat = np.asarray(mat, dtype=complex)
    m, k = mat.shape
    if k == 0:
        return np.zeros((0, 0), dtype=complex)
    if m == 0:
        return np.eye(k, dtype=complex)
    _, s, vh = np.linalg.svd(mat)
    return vh[_numerical_rank(s, rank_tol) :].conj().T


@dataclass(eq=False)
class Subspace:
    """A closed linear subspace of C^n held as an orthonormal basis."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self) -> None:
        self.basis = np.asarray(self.basis, dtype=complex)
        if self.ambient_dim < 0:
            raise DimensionMismatch(f"ambient_dim {self.ambient_dim} < 0")
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient_dim:
            raise DimensionMismatch(
                f"basis shape {self.basis.shape} does not match ambient "
                f"dimension {self.ambient_dim}"
            )
        d = self.basis.shape[1]
        if d:
            gram = self.basis.conj().T @ self.basis
            if not np.allclose(gram, np.eye(d), atol=1e-8):
                raise ValueError("basis columns are not orthonormal")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=complex))

    def projector(self) -> np.ndarray:
        """Orthogonal projection matrix onto the subspace."""
        return self.basis @ self.basis.conj().T

    def equals(self, other: "Subspace",
               cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
        return relate(self, other, cfg).verdict is Verdict.EQUAL

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # tolerance-based equality is not hashable

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


class Verdict(Enum):
    EQUAL = "equal"
    SUBSET = "subset"
    SUPERSET = "superset"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class RelateResult:
    """Containment verdict plus the principal angle supporting it.

    forward_angle is the largest principal angle of U measured against V
    (0 when U is contained in V), reverse_angle the converse.  ``angle``
    is the angle relevant to the verdict: the residual for EQUAL/SUBSET/
    SUPERSET, and the smaller of the two containment angles when the
    spaces are incomparable.
    """

    verdict: Verdict
    angle: float
    forward_angle: float
    reverse_angle: float


def span(vectors, ambient_dim: int | None = None,
         cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Subspace:
    """Orthonormalized column span of the given vectors."""
    mat = _as_matrix(vectors, ambient_dim)
    return Subspace(mat.shape[0], orthonormal_columns(mat, cfg.rank_tol))


def complement(u: Subspace,
               cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Subspace:
    """Orthogonal complement of u in its ambient space."""
    basis = nullspace_columns(u.basis.conj().T, cfg.rank_tol)
    return Subspace(u.ambient_dim, basis)


def join(u: Subspace, v: Subspace,
         cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Subspace:
    """Closure of u + v (finite dimension: the plain sum)."""
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(
            f"join of C^{u.ambient_dim} and C^{v.ambient_dim} subspaces"
        )
    stacked = np.hstack([u.basis, v.basis])
    return Subspace(u.ambient_dim, orthonormal_columns(stacked, cfg.rank_tol))


def meet(u: Subspace, v: Subspace,
         cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Subspace:
    """Intersection, via De Morgan on orthogonal complements.

    Complements of orthonormal bases are exact to machine precision, which
    makes this route more robust than principal-vector matching at the
    configured angle tolerance.
    """
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(
            f"meet of C^{u.ambient_dim} and C^{v.ambient_dim} subspaces"
        )
    return complement(join(complement(u, cfg), complement(v, cfg), cfg), cfg)


def _containment_angle(a: Subspace, b: Subspace) -> float:
    """Largest principal angle of a against b; 0 iff a is inside b.

    Sine-based: the residual (I - P_b) a has singular values sin(theta),
    which resolves angles far below 1e-8 where cosines saturate.
    """
    if a.dim == 0:
        return 0.0
    if b.dim == 0:
        return float(np.pi / 2)
    residual = a.basis - b.basis @ (b.basis.conj().T @ a.basis)
    s = np.linalg.svd(residual, compute_uv=False)
    top = float(s[0]) if s.size else 0.0
    return float(np.arcsin(min(1.0, top)))


def relate(u: Subspace, v: Subspace,
           cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> RelateResult:
    """Classify the pair as equal / subset / superset / incomparable."""
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(
            f"relate of C^{u.ambient_dim} and C^{v.ambient_dim} subspaces"
        )
    fwd = _containment_angle(u, v)
    rev = _containment_angle(v, u)
    if fwd < cfg.angle_tol and rev < cfg.angle_tol:
        return RelateResult(Verdict.EQUAL, max(fwd, rev), fwd, rev)
    if fwd < cfg.angle_tol:
        return RelateResult(Verdict.SUBSET, fwd, fwd, rev)
    if rev < cfg.angle_tol:
        return RelateResult(Verdict.SUPERSET, rev, fwd, rev)
    return RelateResult(Verdict.INCOMPARABLE, min(fwd, rev), fwd, rev)


def oplus(u: Subspace, v: Subspace) -> Subspace:
    """External direct sum: u + v inside C^(m+n), with exact zero blocks."""
    m, n = u.ambient_dim, v.ambient_dim
    basis = np.zeros((m + n, u.dim + v.dim), dtype=complex)
    basis[:m, : u.dim] = u.basis
    basis[m:, u.dim :] = v.basis
    return Subspace(m + n, basis)
