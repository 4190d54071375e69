"""Dense complex linear algebra shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; the
helpers here only add the shape/finiteness checks and the two matrix
exponentials the rest of the package relies on.
"""

from __future__ import annotations

import numpy as np

DIAGONAL_RTOL = 1e-14
HERMITIAN_RTOL = 1e-12


class OperatorError(ValueError):
    """Base class for invalid-operator errors."""


class DimensionError(OperatorError):
    pass


class NotDiagonalError(OperatorError):
    pass


class NotHermitianError(OperatorError):
    pass


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a square, finite complex matrix."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise OperatorError("matrix has non-finite entries")
    return m


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")


def identity(dim: int) -> np.ndarray:
    if int(dim) != dim or dim < 1:
        raise DimensionError(f"dim must be a positive integer, got {dim!r}")
    return np.eye(int(dim), dtype=np.complex128)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a)))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def is_diagonal(a, rtol: float = DIAGONAL_RTOL) -> bool:
    a = as_matrix(a)
    off = a - np.diag(np.diag(a))
    return bool(np.linalg.norm(off) <= rtol * np.linalg.norm(a))


def is_hermitian(a, rtol: float = HERMITIAN_RTOL) -> bool:
    a = as_matrix(a)
    return bool(np.linalg.norm(a - a.conj().T) <= rtol * np.linalg.norm(a))


def exp_diagonal(d) -> np.ndarray:
    """Exponential of a diagonal matrix, entry by entry.

    Raises
    ------
    NotDiagonalError
        If the off-diagonal part exceeds ``1e-14`` of the Frobenius norm.
    """
    d = as_matrix(d)
    if not is_diagonal(d):
        raise NotDiagonalError("exp_diagonal requires a diagonal matrix")
    return np.diag(np.exp(np.diag(d)))


def exp_hermitian(h, scale: complex = 1.0) -> np.ndarray:
    """Return ``exp(scale * h)`` for Hermitian ``h`` via eigendecomposition.

    ``scale`` may be complex, so both ``exp(-i h t)`` and ``exp(-beta h)``
    go through here.
    """
    h = as_matrix(h)
    if not is_hermitian(h):
        raise NotHermitianError("exp_hermitian requires a Hermitian matrix")
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(scale * evals)) @ evecs.conj().T
