"""Interaction picture with respect to the diagonal part of H.

``U(t, t0) = U0(t, t0) U_I(t, t0)`` with ``U0 = exp(-i Phi(t))``,
``Phi(t) = int_{t0}^{t} diag H(s) ds`` and the zero-diagonal interaction
Hamiltonian ``H_I(t) = exp(i Phi) Q H(t) exp(-i Phi)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import DimensionError, as_matrix, exp_diagonal
from .models import TimeDependentHamiltonian
from .quadrature import QuadratureSpec, integrate


@dataclass(frozen=True)
class InteractionFrame:
    base: TimeDependentHamiltonian
    t0: float = 0.0
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)


def _phase_vector(frame: InteractionFrame, t: float) -> np.ndarray:
    if t < frame.t0:
        raise ValueError(f"t = {t} precedes frame origin t0 = {frame.t0}")
    base = frame.base
    if base.has_zero_diagonal:
        return np.zeros(base.dim, dtype=np.complex128)
    if base.constant:
        return np.diag(base(frame.t0)) * (t - frame.t0)
    if t == frame.t0:
        return np.zeros(base.dim, dtype=np.complex128)
    return integrate(lambda s: np.diag(base(s)), frame.t0, t, frame.quad)


def integrate_diagonal_phase(frame: InteractionFrame, t: float) -> np.ndarray:
    """Accumulated diagonal phase ``Phi(t)`` as a diagonal matrix."""
    return np.diag(_phase_vector(frame, t))


def u_zero(frame: InteractionFrame, t: float) -> np.ndarray:
    return exp_diagonal(-1j * integrate_diagonal_phase(frame, t))


def interaction_hamiltonian(frame: InteractionFrame) -> TimeDependentHamiltonian:
    base = frame.base
    if base.has_zero_diagonal:
        return base

    def evaluate(t: float) -> np.ndarray:
        phi = _phase_vector(frame, t)
        v = np.array(base(t), dtype=np.complex128)
        np.fill_diagonal(v, 0.0)
        # e^{i phi_j} V_jk e^{-i phi_k}; phi may be complex for non-Hermitian H
        return np.exp(1j * phi)[:, None] * v * np.exp(-1j * phi)[None, :]

    return TimeDependentHamiltonian(base.dim, evaluate, has_zero_diagonal=True)


def recombine(u0, ui) -> np.ndarray:
    u0, ui = as_matrix(u0), as_matrix(ui)
    if u0.shape != ui.shape:
        raise DimensionError(f"dimension mismatch: {u0.shape} vs {ui.shape}")
    return u0 @ ui
