"""Tolerance configuration shared by every numerical decision in the package."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ToleranceConfig:
    """Knobs for all rank / equality / positivity verdicts.

    rank_tol
        Relative singular-value cutoff: singular values below
        ``rank_tol * s_max`` are treated as zero.  One knob for every
        rank-revealing decision so verdicts stay reproducible.
    angle_tol
        Maximum principal angle (radians) under which two subspaces are
        reported equal.  Containment tests use the same threshold.
    psd_floor
        Eigenvalue floor for positive-semidefinite verdicts: a Hermitian
        matrix counts as PSD when its smallest eigenvalue is >= psd_floor.
    """

    rank_tol: float = 1e-10
    angle_tol: float = 1e-8
    psd_floor: float = -1e-10

    def __post_init__(self) -> None:
        for name in ("rank_tol", "angle_tol", "psd_floor"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.rank_tol <= 0:
            raise ValueError(f"rank_tol must be positive, got {self.rank_tol!r}")
        if self.angle_tol < 0:
            raise ValueError(f"angle_tol must be nonnegative, got {self.angle_tol!r}")
        if self.psd_floor > 0:
            raise ValueError(f"psd_floor must be <= 0, got {self.psd_floor!r}")


DEFAULT_TOLERANCES = ToleranceConfig()
