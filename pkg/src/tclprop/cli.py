"""Command-line front end.

``tclprop propagate`` writes ``t,method,observable,value`` rows (long
format); ``tclprop partition`` writes ``a_beta,z_exact,z_tcl2,z_dyson2,z_average``.
Floats are written with 17 significant digits so they round-trip exactly.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .expansion import DEFAULT_QUAD
from .hamfile import load_custom_hamiltonian
from .models import (FIG1_PARAMS, FIG1_STEP, FIG1_T_MAX, LambdaParams, XYChainParams,
                     constant_hamiltonian, lambda_hamiltonian, xy_hamiltonian)
from .propagation import (DEFAULT_SUBSTEPS, Method, ObservableSeries, average_series,
                          matrix_element, propagate, reference_propagate)
from .quadrature import QuadratureSpec
from .thermo import partition_sweep

ALL_METHODS = ("tcl2", "dyson2", "reference", "average")
OBSERVABLES = ("population", "real", "imag")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    out: str
    model: str = "lambda"
    lambda_params: LambdaParams = FIG1_PARAMS
    chain: XYChainParams | None = None
    hamiltonian_path: str | None = None
    t_max: float = FIG1_T_MAX
    step: float = FIG1_STEP
    methods: tuple[str, ...] = ALL_METHODS
    element: tuple[int, int] = (1, 1)
    observable: str = "population"
    quad_order: int = DEFAULT_QUAD.rule_order
    substeps: int = DEFAULT_SUBSTEPS
    a_beta: list[float] = field(default_factory=list)

    def validate(self) -> None:
        if self.command == "propagate":
            if self.t_max <= 0 or self.step <= 0:
                raise ConfigError("--t-max and --step must be positive")
            if self.step > self.t_max:
                raise ConfigError("--step must not exceed --t-max")
            if not self.methods:
                raise ConfigError("--methods is empty")
            bad = [m for m in self.methods if m not in ALL_METHODS]
            if bad:
                raise ConfigError(f"unknown method(s): {', '.join(bad)}")
            if self.observable not in OBSERVABLES:
                raise ConfigError(f"unknown observable {self.observable!r}")
            if self.quad_order < 2 or self.substeps < 1:
                raise ConfigError("--quad-order must be >= 2 and --substeps >= 1")
        elif self.command == "partition":
            if not self.a_beta:
                raise ConfigError("--a-beta grid is empty")
            if any(x < 0 for x in self.a_beta):
                raise ConfigError("--a-beta values must be non-negative")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_grid(spec: str) -> list[float]:
    """``start:stop:step`` (inclusive of stop) or a comma-separated list."""
    try:
        if ":" in spec:
            start, stop, step = (float(x) for x in spec.split(":"))
            if step <= 0 or stop < start:
                raise ConfigError(f"bad grid {spec!r}")
            n = int(round((stop - start) / step))
            return [round(start + k * step, 12) for k in range(n + 1)]
        return [float(x) for x in spec.split(",") if x.strip()]
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"cannot parse grid {spec!r}") from None


def _build_hamiltonian(cfg: RunConfig):
    if cfg.model == "custom":
        if not cfg.hamiltonian_path:
            raise ConfigError("--model custom needs --hamiltonian FILE")
        return load_custom_hamiltonian(cfg.hamiltonian_path)
    if cfg.model == "xy":
        return constant_hamiltonian(xy_hamiltonian(cfg.chain))
    return lambda_hamiltonian(cfg.lambda_params)


def _observe(series: ObservableSeries, kind: str) -> np.ndarray:
    if kind == "population":
        return np.abs(series.values) ** 2
    if kind == "real":
        return series.values.real
    return series.values.imag


def run_propagate(cfg: RunConfig) -> list[str]:
    """Compute the requested trajectories and return the CSV lines."""
    cfg.validate()
    h = _build_hamiltonian(cfg)
    row, col = cfg.element
    if not (1 <= row <= h.dim and 1 <= col <= h.dim):
        raise ConfigError(f"--element {row},{col} out of range for dim {h.dim}")
    quad = QuadratureSpec(cfg.quad_order)

    needed = set(cfg.methods)
    if "average" in needed:
        needed |= {"tcl2", "dyson2"}
    values = {}
    for name in ("tcl2", "dyson2"):
        if name in needed:
            traj = propagate(h, cfg.t_max, cfg.step, Method(name), quad)
            values[name] = _observe(matrix_element(traj, row - 1, col - 1), cfg.observable)
            times = traj.times
    if "reference" in needed:
        traj = reference_propagate(h, cfg.t_max, cfg.step, cfg.substeps)
        values["reference"] = _observe(matrix_element(traj, row - 1, col - 1), cfg.observable)
        times = traj.times
    if "average" in needed:
        values["average"] = average_series(
            ObservableSeries(times, values["tcl2"]), ObservableSeries(times, values["dyson2"])
        ).values

    label = f"{cfg.observable}_{row}_{col}"
    lines = ["t,method,observable,value"]
    for k, t in enumerate(times):
        for name in cfg.methods:
            lines.append(f"{fmt(t)},{name},{label},{fmt(values[name][k])}")
    return lines


def run_partition(cfg: RunConfig) -> list[str]:
    cfg.validate()
    lines = ["a_beta,z_exact,z_tcl2,z_dyson2,z_average"]
    for r in partition_sweep(cfg.chain, cfg.a_beta):
        lines.append(",".join(fmt(x) for x in (r.a_beta, r.z_exact, r.z_tcl2, r.z_dyson2, r.z_average)))
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tclprop",
        description="Second-order projection-operator (TCL) propagators and partition functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    prop = sub.add_parser(
        "propagate",
        help="iterate short-time propagators and write an observable per method",
        description=(f"Defaults shared by all commands: --quad-order {DEFAULT_QUAD.rule_order} "
                     f"(Gauss-Legendre nodes per step), --substeps {DEFAULT_SUBSTEPS} "
                     "(RK4 steps per output step for the reference)."),
    )
    prop.add_argument("--model", choices=("lambda", "xy", "custom"), default=None,
                      help="built-in model, or 'custom' with --hamiltonian (default: lambda)")
    prop.add_argument("--hamiltonian", metavar="FILE", help="custom Hamiltonian (JSON); implies --model custom")
    prop.add_argument("--rabi1", type=float, default=FIG1_PARAMS.omega_rabi_1)
    prop.add_argument("--rabi2", type=float, default=FIG1_PARAMS.omega_rabi_2)
    prop.add_argument("--detuning1", type=float, default=FIG1_PARAMS.detuning_1)
    prop.add_argument("--detuning2", type=float, default=FIG1_PARAMS.detuning_2)
    prop.add_argument("--sites", type=int, default=4, help="XY chain length (model xy)")
    prop.add_argument("--coupling", type=float, default=1.0, help="XY coupling A (model xy)")
    prop.add_argument("--t-max", type=float, default=FIG1_T_MAX)
    prop.add_argument("--step", type=float, default=FIG1_STEP)
    prop.add_argument("--methods", default=",".join(ALL_METHODS),
                      help=f"comma-separated subset of {', '.join(ALL_METHODS)}")
    prop.add_argument("--element", default="1,1", help="1-based ROW,COL of U(t, 0) to report")
    prop.add_argument("--observable", choices=OBSERVABLES, default="population")
    prop.add_argument("--quad-order", type=int, default=DEFAULT_QUAD.rule_order)
    prop.add_argument("--substeps", type=int, default=DEFAULT_SUBSTEPS)
    prop.add_argument("--out", required=True, help="output CSV path")

    part = sub.add_parser("partition", help="sweep Z over A*beta for the periodic XY chain")
    part.add_argument("--sites", type=int, default=10)
    part.add_argument("--coupling", type=float, default=1.0)
    part.add_argument("--a-beta", default="0:1:0.1", help="START:STOP:STEP (inclusive) or a comma list")
    part.add_argument("--out", required=True, help="output CSV path")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "partition":
        return RunConfig("partition", args.out, model="xy",
                         chain=XYChainParams(args.sites, args.coupling),
                         a_beta=parse_grid(args.a_beta))
    model = args.model or ("custom" if args.hamiltonian else "lambda")
    try:
        row, col = (int(x) for x in args.element.split(","))
    except ValueError:
        raise ConfigError(f"--element expects ROW,COL, got {args.element!r}") from None
    return RunConfig(
        "propagate", args.out, model=model,
        lambda_params=LambdaParams(args.rabi1, args.rabi2, args.detuning1, args.detuning2),
        chain=XYChainParams(args.sites, args.coupling) if model == "xy" else None,
        hamiltonian_path=args.hamiltonian,
        t_max=args.t_max, step=args.step,
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        element=(row, col), observable=args.observable,
        quad_order=args.quad_order, substeps=args.substeps,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        lines = run_partition(cfg) if cfg.command == "partition" else run_propagate(cfg)
        Path(cfg.out).write_text("\n".join(lines) + "\n")
    except (ValueError, OSError) as exc:
        print(f"tclprop: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
