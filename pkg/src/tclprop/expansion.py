"""Second-order projection (TCL) propagator and the second-order Dyson step.

Over one step ``[t0, t]`` the TCL propagator in the interaction frame is the
product ``U_I = M D`` of

* ``D = exp(int K)``, diagonal, with
  ``int K = -int_{t0}^{t} ds int_{t0}^{s} ds1 P[H_I(s) H_I(s1)]``;
* ``M = I - i int Q H_I(s) ds - int ds int ds1 Q[H_I(s) H_I(s1)]``, the
  geometric series for ``[I - Sigma]^{-1}`` truncated at second order.

The full step is ``U = U0 U_I``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import exp_diagonal, identity
from .interaction import InteractionFrame, interaction_hamiltonian, u_zero
from .models import TimeDependentHamiltonian
from .projection import project_diag, project_offdiag
from .quadrature import QuadratureSpec, nested_integral_terms

DEFAULT_QUAD = QuadratureSpec()


@dataclass(frozen=True)
class Tcl2StepResult:
    """One TCL2 step. ``u_step = frame_factor @ offdiag_factor @ diag_factor``;
    ``frame_factor`` is the identity for zero-diagonal Hamiltonians."""

    u_step: np.ndarray
    diag_factor: np.ndarray
    offdiag_factor: np.ndarray
    frame_factor: np.ndarray

    @property
    def u_interaction(self) -> np.ndarray:
        return self.offdiag_factor @ self.diag_factor


def _check_interval(t0: float, t: float) -> None:
    if t < t0:
        raise ValueError(f"t = {t} precedes t0 = {t0}")


def _require_zero_diagonal(h_int: TimeDependentHamiltonian) -> None:
    if not h_int.has_zero_diagonal:
        raise ValueError("interaction Hamiltonian must have zero diagonal")


def k2_integral(h_int: TimeDependentHamiltonian, t0: float, t: float,
                quad: QuadratureSpec = DEFAULT_QUAD) -> np.ndarray:
    """Diagonal matrix ``int_{t0}^{t} K(s) ds`` at second order."""
    _check_interval(t0, t)
    _require_zero_diagonal(h_int)
    _, second = nested_integral_terms(h_int, t0, t, quad)
    return -project_diag(second)


def sigma2_matrix(h_int: TimeDependentHamiltonian, t0: float, t: float,
                  quad: QuadratureSpec = DEFAULT_QUAD) -> np.ndarray:
    """``[I - Sigma(t)]^{-1} I`` truncated at second order."""
    _check_interval(t0, t)
    _require_zero_diagonal(h_int)
    first, second = nested_integral_terms(h_int, t0, t, quad)
    return identity(h_int.dim) - 1j * project_offdiag(first) - project_offdiag(second)


def tcl2_step(h: TimeDependentHamiltonian, t0: float, t: float,
              quad: QuadratureSpec = DEFAULT_QUAD) -> Tcl2StepResult:
    """Second-order TCL propagator ``U(t, t0)``.

    Accurate for ``(t - t0) * ||H|| << 1``; larger steps are allowed so the
    breakdown region can be probed.
    """
    _check_interval(t0, t)
    frame = InteractionFrame(h, t0, quad)
    h_int = interaction_hamiltonian(frame)
    first, second = nested_integral_terms(h_int, t0, t, quad)
    eye = identity(h.dim)
    diag_factor = exp_diagonal(-project_diag(second))
    offdiag_factor = eye - 1j * project_offdiag(first) - project_offdiag(second)
    u_int = offdiag_factor @ diag_factor
    if h.has_zero_diagonal:
        return Tcl2StepResult(u_int, diag_factor, offdiag_factor, eye)
    u0 = u_zero(frame, t)
    return Tcl2StepResult(u0 @ u_int, diag_factor, offdiag_factor, u0)


def dyson2_step(h: TimeDependentHamiltonian, t0: float, t: float,
                quad: QuadratureSpec = DEFAULT_QUAD) -> np.ndarray:
    """``I - i int H - int dt' int ds H(t') H(s)`` over ``[t0, t]``."""
    _check_interval(t0, t)
    first, second = nested_integral_terms(h, t0, t, quad)
    return identity(h.dim) - 1j * first - second
