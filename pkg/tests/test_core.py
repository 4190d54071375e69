import cmath
import math

import numpy as np
import pytest
from hypothesis import given

from conftest import complex_matrices, random_complex, random_hermitian
from tclprop.core import (DimensionError, NotDiagonalError, NotHermitianError, OperatorError,
                          adjoint, as_matrix, exp_diagonal, exp_hermitian, frobenius_norm,
                          identity, kron, matmul, trace)


def unit(i, j, n=3):
    e = np.zeros((n, n), dtype=complex)
    e[i - 1, j - 1] = 1
    return e


def naive_matmul(a, b):
    n = a.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[i, j] += a[i, k] * b[k, j]
    return out


def taylor_expm(a, terms=40):
    """Scaled-and-squared truncated Taylor series."""
    norm = np.linalg.norm(a, 1)
    squarings = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    x = a / 2**squarings
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ x / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def test_identity():
    assert np.array_equal(identity(2), [[1, 0], [0, 1]])
    assert np.array_equal(identity(1), [[1]])
    for n in range(1, 9):
        assert trace(identity(n)) == n


@pytest.mark.parametrize("bad", [0, -1, 2.5])
def test_identity_rejects_bad_dim(bad):
    with pytest.raises(DimensionError):
        identity(bad)


def test_as_matrix_validation():
    with pytest.raises(DimensionError):
        as_matrix(np.zeros((2, 3)))
    with pytest.raises(OperatorError):
        as_matrix([[1, np.nan], [0, 1]])


def test_matmul(rng):
    a = random_complex(rng, 4)
    assert np.array_equal(matmul(identity(4), a), a)
    assert np.array_equal(matmul(unit(3, 2), unit(2, 1)), unit(3, 1))
    b = random_complex(rng, 4)
    assert np.max(np.abs(matmul(a, b) - naive_matmul(a, b))) <= 1e-13
    with pytest.raises(DimensionError):
        matmul(identity(2), identity(3))


def test_adjoint_trace_kron():
    assert np.array_equal(adjoint(unit(3, 2)), unit(2, 3))
    assert trace([[1, 2], [3, 4]]) == 5
    assert np.array_equal(kron(identity(2), identity(2)), identity(4))
    assert frobenius_norm([[3, 0], [0, 4]]) == 5.0


@given(complex_matrices())
def test_adjoint_involution(a):
    assert np.array_equal(adjoint(adjoint(a)), a)


def test_kron_associative(rng):
    a, b, c = (random_complex(rng, n) for n in (2, 3, 2))
    assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) <= 1e-13


def test_trace_cyclic(rng):
    for _ in range(10):
        a, b = random_complex(rng, 5), random_complex(rng, 5)
        assert abs(trace(matmul(a, b)) - trace(matmul(b, a))) <= 1e-12


def test_exp_diagonal(rng):
    assert np.array_equal(exp_diagonal(np.zeros((3, 3))), identity(3))
    out = exp_diagonal(np.diag([1j * np.pi, 0]))
    assert np.max(np.abs(out - np.diag([-1, 1]))) <= 1e-15
    d = rng.normal(size=6) + 1j * rng.normal(size=6)
    out = exp_diagonal(np.diag(d))
    for k in range(6):
        assert abs(out[k, k] - cmath.exp(d[k])) <= 1e-14 * max(1, abs(cmath.exp(d[k])))
    assert np.count_nonzero(out - np.diag(np.diag(out))) == 0


def test_exp_diagonal_rejects_offdiagonal():
    with pytest.raises(NotDiagonalError):
        exp_diagonal([[1, 1e-6], [0, 1]])


def test_exp_hermitian(rng):
    h = random_hermitian(rng, 4)
    assert np.max(np.abs(exp_hermitian(h, 0) - identity(4))) <= 1e-13
    assert np.max(np.abs(exp_hermitian(np.diag([1.0, 2.0]), -1) - np.diag([np.e**-1, np.e**-2]))) <= 1e-15
    h6 = random_hermitian(rng, 6)
    for scale in (-1j * 0.7, -0.5, 1.3):
        assert np.linalg.norm(exp_hermitian(h6, scale) - taylor_expm(scale * h6)) <= 1e-10


def test_exp_hermitian_inverse_pair(rng):
    h = random_hermitian(rng, 5)
    for s in (0.3, -2j, 1 + 1j):
        prod = exp_hermitian(h, s) @ exp_hermitian(h, -s)
        assert np.linalg.norm(prod - identity(5)) <= 1e-10


def test_exp_hermitian_rejects_non_hermitian(rng):
    with pytest.raises(NotHermitianError):
        exp_hermitian(random_complex(rng, 3), 1.0)
