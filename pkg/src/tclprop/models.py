"""Built-in Hamiltonians: the driven three-level Lambda system and the
periodic XY spin chain, plus closed-form time integrals for the former.

Level ordering for the Lambda system is ground ``|1>`` = index 0,
``|2>`` = index 1, excited ``|3>`` = index 2. Spin-chain site 1 is the most
significant bit of the basis index and ``sigma_+ = [[0, 1], [0, 0]]``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import DimensionError, as_matrix, identity

MAX_CHAIN_DIM = 4096
ZERO_DIAGONAL_RTOL = 1e-13

SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=np.complex128)
SIGMA_MINUS = SIGMA_PLUS.T.copy()


@dataclass(frozen=True)
class TimeDependentHamiltonian:
    """A Hamiltonian ``t -> H(t)`` of fixed dimension.

    ``constant`` marks time-independent Hamiltonians so the interaction
    frame can use the exact phase instead of quadrature.
    """

    dim: int
    evaluate: Callable[[float], np.ndarray]
    has_zero_diagonal: bool = False
    constant: bool = False

    def __call__(self, t: float) -> np.ndarray:
        return self.evaluate(t)

    def check_zero_diagonal(self, times) -> bool:
        for t in times:
            h = self.evaluate(t)
            if np.linalg.norm(np.diag(h)) > ZERO_DIAGONAL_RTOL * max(1.0, np.linalg.norm(h)):
                return False
        return True


def constant_hamiltonian(h) -> TimeDependentHamiltonian:
    h = as_matrix(h)
    h.setflags(write=False)
    zero_diag = bool(np.linalg.norm(np.diag(h)) <= ZERO_DIAGONAL_RTOL * max(1.0, np.linalg.norm(h)))
    return TimeDependentHamiltonian(h.shape[0], lambda t: h, has_zero_diagonal=zero_diag, constant=True)


def zero_hamiltonian(dim: int) -> TimeDependentHamiltonian:
    return constant_hamiltonian(np.zeros((dim, dim), dtype=np.complex128))


# --------------------------------------------------------------------------
# Lambda system

@dataclass(frozen=True)
class LambdaParams:
    omega_rabi_1: float
    omega_rabi_2: float
    detuning_1: float
    detuning_2: float

    def __post_init__(self):
        if self.detuning_1 == 0 or self.detuning_2 == 0:
            raise ValueError("detunings must be nonzero")

    def rabi(self, i: int) -> float:
        return _pick(i, self.omega_rabi_1, self.omega_rabi_2)

    def detuning(self, i: int) -> float:
        return _pick(i, self.detuning_1, self.detuning_2)


# Omega_1 = 1, Omega_2 = 0.7, omega_1 = 1.3, omega_2 = 5.3 (units of Omega_1)
FIG1_PARAMS = LambdaParams(1.0, 0.7, 1.3, 5.3)
FIG1_STEP = 0.1
FIG1_T_MAX = 20.0


def _pick(i: int, first, second):
    if i == 1:
        return first
    if i == 2:
        return second
    raise ValueError(f"field index must be 1 or 2, got {i}")


def lambda_hamiltonian(p: LambdaParams) -> TimeDependentHamiltonian:
    """``H(t) = Omega_1(t) E32 + Omega_2(t) E31 + h.c.`` with
    ``Omega_i(t) = Omega_i exp(i omega_i t)``."""

    def evaluate(t: float) -> np.ndarray:
        a = p.omega_rabi_1 * cmath.exp(1j * p.detuning_1 * t)
        b = p.omega_rabi_2 * cmath.exp(1j * p.detuning_2 * t)
        h = np.zeros((3, 3), dtype=np.complex128)
        h[2, 1] = a
        h[2, 0] = b
        h[1, 2] = a.conjugate()
        h[0, 2] = b.conjugate()
        return h

    return TimeDependentHamiltonian(3, evaluate, has_zero_diagonal=True)


def phase_integral(w: float, t0: float, t: float) -> complex:
    """``int_{t0}^{t} exp(i w s) ds``."""
    if w == 0:
        return complex(t - t0)
    return (cmath.exp(1j * w * t) - cmath.exp(1j * w * t0)) / (1j * w)


def nested_phase_integral(a: float, b: float, t0: float, t: float) -> complex:
    """``int_{t0}^{t} dt1 int_{t0}^{t1} ds exp(-i a t1 + i b s)``."""
    if b == 0:
        # inner integral is (t1 - t0)
        if a == 0:
            return complex(0.5 * (t - t0) ** 2)
        # int (t1 - t0) e^{-i a t1} dt1 by parts
        e_t = cmath.exp(-1j * a * t)
        return (t - t0) * e_t / (-1j * a) - (e_t - cmath.exp(-1j * a * t0)) / (-1j * a) ** 2
    return (phase_integral(b - a, t0, t) - cmath.exp(1j * b * t0) * phase_integral(-a, t0, t)) / (1j * b)


def lambda_h(i: int, t: float, t0: float, p: LambdaParams) -> complex:
    """``h_i = int_{t0}^{t} Omega_i(s) ds``."""
    w = p.detuning(i)
    return -1j * p.rabi(i) * (cmath.exp(1j * t * w) - cmath.exp(1j * t0 * w)) / w


def lambda_f(i: int, t: float, t0: float, p: LambdaParams) -> complex:
    """``f_i = -Omega_i^2 int dt' int ds exp(i (s - t') omega_i)``.

    Only depends on ``t - t0``.
    """
    w = p.detuning(i)
    tau = t - t0
    a2 = p.rabi(i) ** 2
    return 1j * a2 * tau / w - a2 * (1.0 - cmath.exp(-1j * w * tau)) / w**2


def lambda_g(t: float, t0: float, p: LambdaParams) -> complex:
    """``g = int dt1 int ds exp(-i t1 omega_1 + i s omega_2)``."""
    return nested_phase_integral(p.detuning_1, p.detuning_2, t0, t)


def lambda_tcl2_matrix(t: float, t0: float, p: LambdaParams) -> np.ndarray:
    """Closed-form second-order TCL propagator over ``[t0, t]``.

    Entry (1, 2) carries the nested integral with the outer time on the
    second field, ``nested_phase_integral(omega_2, omega_1)``; it is not the
    complex conjugate of ``g``.
    """
    f1, f2 = lambda_f(1, t, t0, p), lambda_f(2, t, t0, p)
    h1, h2 = lambda_h(1, t, t0, p), lambda_h(2, t, t0, p)
    g = lambda_g(t, t0, p)
    g_rev = nested_phase_integral(p.detuning_2, p.detuning_1, t0, t)
    w12 = p.omega_rabi_1 * p.omega_rabi_2
    e1, e2 = cmath.exp(f1), cmath.exp(f2)
    e3 = cmath.exp(f1.conjugate() + f2.conjugate())
    return np.array(
        [
            [e2, -w12 * g_rev * e1, -1j * h2.conjugate() * e3],
            [-w12 * g * e2, e1, -1j * h1.conjugate() * e3],
            [-1j * h2 * e2, -1j * h1 * e1, e3],
        ],
        dtype=np.complex128,
    )


def lambda_dyson2_matrix(t: float, t0: float, p: LambdaParams) -> np.ndarray:
    """Closed-form second-order Dyson propagator over ``[t0, t]``."""
    f1, f2 = lambda_f(1, t, t0, p), lambda_f(2, t, t0, p)
    h1, h2 = lambda_h(1, t, t0, p), lambda_h(2, t, t0, p)
    g = lambda_g(t, t0, p)
    g_rev = nested_phase_integral(p.detuning_2, p.detuning_1, t0, t)
    w12 = p.omega_rabi_1 * p.omega_rabi_2
    return np.array(
        [
            [1 + f2, -w12 * g_rev, -1j * h2.conjugate()],
            [-w12 * g, 1 + f1, -1j * h1.conjugate()],
            [-1j * h2, -1j * h1, 1 + f1.conjugate() + f2.conjugate()],
        ],
        dtype=np.complex128,
    )


# --------------------------------------------------------------------------
# XY chain

@dataclass(frozen=True)
class XYChainParams:
    sites: int
    coupling: float = 1.0

    def __post_init__(self):
        if self.sites < 3:
            raise ValueError(f"periodic chain needs at least 3 sites, got {self.sites}")
        if 2**self.sites > MAX_CHAIN_DIM:
            raise DimensionError(f"2^{self.sites} exceeds the dimension cap {MAX_CHAIN_DIM}")

    @property
    def dim(self) -> int:
        return 2**self.sites


def _site_product(n: int, ops: dict[int, np.ndarray]) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    eye = identity(2)
    for site in range(n):
        out = np.kron(out, ops.get(site, eye))
    return out


def xy_hamiltonian(p: XYChainParams) -> np.ndarray:
    """``A sum_i (s+^i s-^{i+1} + s-^i s+^{i+1})`` with periodic boundary."""
    n = p.sites
    h = np.zeros((p.dim, p.dim), dtype=np.complex128)
    for i in range(n):
        j = (i + 1) % n
        h += _site_product(n, {i: SIGMA_PLUS, j: SIGMA_MINUS})
        h += _site_product(n, {i: SIGMA_MINUS, j: SIGMA_PLUS})
    return p.coupling * h


def domain_wall_count(basis_index: int, n: int) -> int:
    """Number of cyclically adjacent differing bits in the ``n``-bit index."""
    if not 0 <= basis_index < 2**n:
        raise ValueError(f"basis index {basis_index} out of range for {n} sites")
    bits = [(basis_index >> (n - 1 - k)) & 1 for k in range(n)]
    return sum(bits[k] != bits[(k + 1) % n] for k in range(n))
