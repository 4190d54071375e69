"""Diagonal projector P and its complement Q = 1 - P.

Both act on concrete matrices in the computational basis, so they cost
O(dim^2) rather than being built as dim^2 x dim^2 superoperators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DimensionError, as_matrix


def project_diag(a) -> np.ndarray:
    """Keep the diagonal of ``a``, zero everything else."""
    a = as_matrix(a)
    return np.diag(np.diag(a))


def project_offdiag(a) -> np.ndarray:
    """Zero the diagonal of ``a``."""
    a = as_matrix(a).copy()
    np.fill_diagonal(a, 0.0)
    return a


@dataclass(frozen=True)
class ProjectorPair:
    """P/Q bound to a fixed basis size; rejects matrices of other sizes."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError(f"dim must be positive, got {self.dim}")

    def _check(self, a) -> np.ndarray:
        a = as_matrix(a)
        if a.shape[0] != self.dim:
            raise DimensionError(f"projector of dim {self.dim} applied to {a.shape}")
        return a

    def P(self, a) -> np.ndarray:
        return project_diag(self._check(a))

    def Q(self, a) -> np.ndarray:
        return project_offdiag(self._check(a))
