"""Partition functions ``Z = Tr exp(-beta H)`` for zero-diagonal Hamiltonians.

With ``t -> -i beta`` the diagonal TCL factor gives
``Z_tcl2 = sum_k exp(beta^2 (H^2)_kk / 2)`` while truncating the
time-ordered exponential gives ``Z_dyson2 = Tr(I + beta^2 H^2 / 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import NotHermitianError, OperatorError, as_matrix, is_hermitian
from .models import ZERO_DIAGONAL_RTOL, XYChainParams, xy_hamiltonian

@dataclass(frozen=True)
class PartitionResult:
    a_beta: float
    z_exact: float
    z_tcl2: float
    z_dyson2: float
    z_average: float


def _hermitian(h) -> np.ndarray:
    h = as_matrix(h)
    if not is_hermitian(h):
        raise NotHermitianError("partition functions need a Hermitian H")
    return h


def _zero_diagonal(h) -> np.ndarray:
    h = _hermitian(h)
    if np.linalg.norm(np.diag(h)) > ZERO_DIAGONAL_RTOL * max(1.0, np.linalg.norm(h)):
        raise OperatorError("second-order partition formulas assume a zero-diagonal H")
    return h


def _check_beta(beta: float) -> None:
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")


def diag_of_square(h) -> np.ndarray:
    """Diagonal of ``H @ H`` for Hermitian H, as row-wise squared norms."""
    h = as_matrix(h)
    return np.sum(np.abs(h) ** 2, axis=1)


def z_from_spectrum(evals: np.ndarray, beta: float) -> float:
    return float(np.sum(np.exp(-beta * np.asarray(evals))))


def z_exact(h, beta: float) -> float:
    _check_beta(beta)
    h = _hermitian(h)
    return z_from_spectrum(np.linalg.eigvalsh(h), beta)


def z_tcl2(h, beta: float) -> float:
    _check_beta(beta)
    h = _zero_diagonal(h)
    return float(np.sum(np.exp(0.5 * beta**2 * diag_of_square(h))))


def z_dyson2(h, beta: float) -> float:
    _check_beta(beta)
    h = _zero_diagonal(h)
    # Tr H^2 = sum_jk |H_jk|^2 for Hermitian H, real by construction
    return h.shape[0] + 0.5 * beta**2 * float(np.sum(diag_of_square(h)))


def z_closed_form_tcl_n10(a_beta: float) -> float:
    x = a_beta**2
    return 8.0 * math.exp(2.5 * x) * math.cosh(0.5 * x) * (44.0 * math.cosh(x) + math.cosh(2.0 * x) + 83.0)


def z_closed_form_dyson_n10(a_beta: float) -> float:
    return 1024.0 + 2560.0 * a_beta**2


def partition_sweep(p: XYChainParams, a_beta_grid) -> list[PartitionResult]:
    """Exact, TCL2, Dyson2 and averaged Z for each ``|A| * beta`` in the grid."""
    grid = [float(x) for x in a_beta_grid]
    if any(x < 0 for x in grid):
        raise ValueError("a_beta values must be non-negative")
    if p.coupling == 0:
        raise ValueError("coupling must be nonzero to convert A*beta to beta")
    h = xy_hamiltonian(p)
    evals = np.linalg.eigvalsh(h)
    results = []
    for ab in grid:
        beta = ab / abs(p.coupling)
        zt = z_tcl2(h, beta)
        zd = z_dyson2(h, beta)
        results.append(PartitionResult(ab, z_from_spectrum(evals, beta), zt, zd, 0.5 * (zt + zd)))
    return results
