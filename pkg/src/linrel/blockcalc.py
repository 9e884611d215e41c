"""Columns, rows, and 2x2 blocks of linear relations.

Compositions are computed by assembling one linear constraint system on
stacked coordinates and extracting its nullspace.  That treats operator
graphs, non-densely-defined relations, and purely multivalued relations
uniformly: membership of (x, y) in a relation A is the orthogonality of
(x, y) to the complement of the graph of A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import DimensionMismatch
from .relation import LinearRelation, adjoint
from .subspace import (
    RelateResult,
    Subspace,
    Verdict,
    complement,
    nullspace_columns,
    orthonormal_columns,
    relate,
)

__all__ = [
    "Block2x2",
    "column",
    "row",
    "block",
    "check_row_col_duality",
    "check_adjoint_inclusion",
    "check_row_adjoint",
    "check_column_adjoint",
]


@dataclass(frozen=True)
class Block2x2:
    """Entries e_ij : H_j -> H_i of a 2x2 block of relations."""

    e11: LinearRelation
    e12: LinearRelation
    e21: LinearRelation
    e22: LinearRelation

    def __post_init__(self) -> None:
        h1, h2 = self.e11.n1, self.e12.n1
        ok = (
            self.e21.n1 == h1
            and self.e22.n1 == h2
            and self.e11.n2 == h1
            and self.e12.n2 == h1
            and self.e21.n2 == h2
            and self.e22.n2 == h2
        )
        if not ok:
            raise DimensionMismatch("inconsistent block entry dimensions")

    @property
    def h1(self) -> int:
        return self.e11.n1

    @property
    def h2(self) -> int:
        return self.e12.n1


def _membership_rows(rel: LinearRelation, cfg: ToleranceConfig,
                     total: int, x_cols: slice, y_cols: slice) -> np.ndarray:
    """Constraint rows forcing (x, y) into rel, on stacked coordinates.

    Rows are the conjugate transpose of a basis of the graph complement,
    scattered into the x/y column positions of the stacked system.
    """
    perp = complement(rel.graph, cfg).basis
    rows = np.zeros((perp.shape[1], total), dtype=complex)
    rows[:, x_cols] = perp[: rel.n1].conj().T
    rows[:, y_cols] = perp[rel.n1 :].conj().T
    return rows


def column(a: LinearRelation, b: LinearRelation,
           cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """col(A; B) = {(h, (k1, k2)) : (h, k1) in A, (h, k2) in B}."""
    if a.n1 != b.n1:
        raise DimensionMismatch(
            f"column entries need one domain space, got C^{a.n1} and C^{b.n1}"
        )
    h, k1, k2 = a.n1, a.n2, b.n2
    total = h + k1 + k2
    sl_h = slice(0, h)
    sl_k1 = slice(h, h + k1)
    sl_k2 = slice(h + k1, total)
    constraints = np.vstack(
        [
            _membership_rows(a, cfg, total, sl_h, sl_k1),
            _membership_rows(b, cfg, total, sl_h, sl_k2),
        ]
    )
    basis = nullspace_columns(constraints, cfg.rank_tol)
    return LinearRelation(h, k1 + k2, Subspace(total, basis))


def row(c: LinearRelation, d: LinearRelation,
        cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """(C ; D) = {((h1, h2), k1 + k2) : (h1, k1) in C, (h2, k2) in D}."""
    if c.n2 != d.n2:
        raise DimensionMismatch(
            f"row entries need one range space, got C^{c.n2} and C^{d.n2}"
        )
    h1, h2, k = c.n1, d.n1, c.n2
    total = h1 + h2 + 2 * k
    sl_h1 = slice(0, h1)
    sl_h2 = slice(h1, h1 + h2)
    sl_k1 = slice(h1 + h2, h1 + h2 + k)
    sl_k2 = slice(h1 + h2 + k, total)
    constraints = np.vstack(
        [
            _membership_rows(c, cfg, total, sl_h1, sl_k1),
            _membership_rows(d, cfg, total, sl_h2, sl_k2),
        ]
    )
    solutions = nullspace_columns(constraints, cfg.rank_tol)
    image = np.vstack(
        [
            solutions[sl_h1],
            solutions[sl_h2],
            solutions[sl_k1] + solutions[sl_k2],
        ]
    )
    basis = orthonormal_columns(image, cfg.rank_tol)
    return LinearRelation(h1 + h2, k, Subspace(h1 + h2 + k, basis))


def block(b: Block2x2,
          cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LinearRelation:
    """Block relation on H1 (+) H2: the row of the two columns."""
    return row(column(b.e11, b.e21, cfg), column(b.e12, b.e22, cfg), cfg)


def check_row_col_duality(b: Block2x2,
                          cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """Row-of-columns equals column-of-rows for the same block."""
    row_of_cols = block(b, cfg)
    col_of_rows = column(row(b.e11, b.e12, cfg), row(b.e21, b.e22, cfg), cfg)
    return relate(row_of_cols.graph, col_of_rows.graph, cfg).verdict is Verdict.EQUAL


@dataclass(frozen=True)
class AdjointInclusionResult:
    """Verdict of block-of-adjoints against adjoint-of-block."""

    verdict: Verdict
    inclusion_holds: bool
    angle: float


def check_adjoint_inclusion(b: Block2x2,
                            cfg: ToleranceConfig = DEFAULT_TOLERANCES,
                            ) -> AdjointInclusionResult:
    """Verify block(E_ji^*) is contained in (block E)^*.

    Equality holds for everywhere-defined bounded entries; in general only
    the inclusion does, and a correct implementation must never produce a
    verdict where the inclusion fails.
    """
    lhs = adjoint(block(b, cfg), cfg)
    transposed_adjoints = Block2x2(
        e11=adjoint(b.e11, cfg),
        e12=adjoint(b.e21, cfg),
        e21=adjoint(b.e12, cfg),
        e22=adjoint(b.e22, cfg),
    )
    rhs = block(transposed_adjoints, cfg)
    result = relate(rhs.graph, lhs.graph, cfg)
    holds = result.verdict in (Verdict.EQUAL, Verdict.SUBSET)
    return AdjointInclusionResult(
        verdict=result.verdict, inclusion_holds=holds, angle=result.angle
    )


def check_row_adjoint(c: LinearRelation, d: LinearRelation,
                      cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> RelateResult:
    """(C ; D)^* against col(C^*; D^*): equality is expected."""
    lhs = adjoint(row(c, d, cfg), cfg)
    rhs = column(adjoint(c, cfg), adjoint(d, cfg), cfg)
    return relate(lhs.graph, rhs.graph, cfg)


def check_column_adjoint(a: LinearRelation, b: LinearRelation,
                         cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> RelateResult:
    """Row(A^*; B^*) against col(A; B)^*: inclusion is expected."""
    lhs = row(adjoint(a, cfg), adjoint(b, cfg), cfg)
    rhs = adjoint(column(a, b, cfg), cfg)
    return relate(lhs.graph, rhs.graph, cfg)
