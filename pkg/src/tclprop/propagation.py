"""Long-time propagation by composing short steps, plus the RK4 reference.

``U(t_k, 0) = U(t_k, t_{k-1}) U(t_{k-1}, 0)``: one left-multiplication per
step. The reference solves ``dU/dt = -i H U`` with classic fixed-step RK4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import identity
from .expansion import DEFAULT_QUAD, dyson2_step, tcl2_step
from .models import TimeDependentHamiltonian
from .quadrature import QuadratureSpec

# inner RK4 step 0.1 / 20 = 0.005
DEFAULT_SUBSTEPS = 20


class Method(str, Enum):
    TCL2 = "tcl2"
    DYSON2 = "dyson2"
    REFERENCE = "reference"


@dataclass(frozen=True)
class PropagatorTrajectory:
    times: np.ndarray
    operators: list[np.ndarray]
    method: Method

    def __post_init__(self):
        if len(self.times) != len(self.operators):
            raise ValueError("times and operators differ in length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    @property
    def final(self) -> np.ndarray:
        return self.operators[-1]


@dataclass(frozen=True)
class ObservableSeries:
    times: np.ndarray
    values: np.ndarray
    label: str = ""


def time_grid(t_max: float, step: float, t0: float = 0.0) -> np.ndarray:
    """``t0, t0 + step, ...`` ending exactly at ``t0 + t_max``; the last
    step is shortened when ``t_max / step`` is not integral."""
    if t_max <= 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if step <= 0 or step > t_max:
        raise ValueError(f"step must lie in (0, t_max], got {step}")
    n = math.ceil(t_max / step - 1e-9)
    times = t0 + step * np.arange(n + 1, dtype=float)
    times[-1] = t0 + t_max
    return times


def _step_operator(h, a, b, method: Method, quad: QuadratureSpec) -> np.ndarray:
    if method is Method.TCL2:
        return tcl2_step(h, a, b, quad).u_step
    if method is Method.DYSON2:
        return dyson2_step(h, a, b, quad)
    raise ValueError(f"unsupported step method {method!r}")


def propagate(h: TimeDependentHamiltonian, t_max: float, step: float,
              method: Method | str = Method.TCL2,
              quad: QuadratureSpec = DEFAULT_QUAD) -> PropagatorTrajectory:
    """Compose short-time TCL2 or Dyson2 steps over ``[0, t_max]``."""
    method = Method(method)
    times = time_grid(t_max, step)
    u = identity(h.dim)
    ops = [u]
    for a, b in zip(times[:-1], times[1:]):
        u = _step_operator(h, a, b, method, quad) @ u
        ops.append(u)
    return PropagatorTrajectory(times, ops, method)


def _rk4(rhs, u: np.ndarray, t: float, dt: float) -> np.ndarray:
    k1 = rhs(t, u)
    k2 = rhs(t + 0.5 * dt, u + 0.5 * dt * k1)
    k3 = rhs(t + 0.5 * dt, u + 0.5 * dt * k2)
    k4 = rhs(t + dt, u + dt * k3)
    return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _integrate_rk4(rhs, dim: int, times: np.ndarray, substeps: int) -> list[np.ndarray]:
    if substeps < 1:
        raise ValueError(f"substeps must be >= 1, got {substeps}")
    u = identity(dim)
    out = [u]
    for a, b in zip(times[:-1], times[1:]):
        dt = (b - a) / substeps
        for k in range(substeps):
            u = _rk4(rhs, u, a + k * dt, dt)
        out.append(u)
    return out


def reference_propagate(h: TimeDependentHamiltonian, t_max: float, step: float,
                        substeps: int = DEFAULT_SUBSTEPS,
                        t0: float = 0.0) -> PropagatorTrajectory:
    """RK4 solution of ``dU/dt = -i H U`` sampled every ``step``.

    Operators are ``U(t_k, t0)``; ``substeps`` RK4 steps per sample.
    """
    times = time_grid(t_max, step, t0)
    ops = _integrate_rk4(lambda t, u: -1j * (h(t) @ u), h.dim, times, substeps)
    return PropagatorTrajectory(times, ops, Method.REFERENCE)


def reference_inverse(h: TimeDependentHamiltonian, t_max: float, step: float,
                      substeps: int = DEFAULT_SUBSTEPS, t0: float = 0.0) -> np.ndarray:
    """``U^{-1}(t0 + t_max, t0)`` from ``dV/dt = i V H`` on the same grid as
    :func:`reference_propagate`."""
    times = time_grid(t_max, step, t0)
    return _integrate_rk4(lambda t, v: 1j * (v @ h(t)), h.dim, times, substeps)[-1]


def matrix_element(traj: PropagatorTrajectory, row: int, col: int) -> ObservableSeries:
    """Complex series ``U(t_k, 0)[row, col]`` (0-based indices)."""
    dim = traj.operators[0].shape[0]
    if not (0 <= row < dim and 0 <= col < dim):
        raise IndexError(f"element ({row}, {col}) out of range for dim {dim}")
    values = np.array([u[row, col] for u in traj.operators])
    return ObservableSeries(traj.times, values, f"U[{row},{col}]")


def population(traj: PropagatorTrajectory, row: int, col: int) -> ObservableSeries:
    """``|U(t_k, 0)[row, col]|^2`` (0-based indices)."""
    el = matrix_element(traj, row, col)
    return ObservableSeries(el.times, np.abs(el.values) ** 2, f"pop[{row},{col}]")


def average_series(a: ObservableSeries, b: ObservableSeries) -> ObservableSeries:
    if a.times.shape != b.times.shape or not np.array_equal(a.times, b.times):
        raise ValueError("series are on different time grids")
    return ObservableSeries(a.times, 0.5 * (a.values + b.values), a.label)


def l2_error(series: ObservableSeries, reference: ObservableSeries) -> float:
    if not np.array_equal(series.times, reference.times):
        raise ValueError("series are on different time grids")
    return float(np.linalg.norm(series.values - reference.values))
