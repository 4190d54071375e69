"""Ground-state population of the driven Lambda system: TCL2, Dyson2, their
average and the RK4 reference over t in [0, 20] at step 0.1.

    python scripts/fig1_populations.py [--csv out.csv]
"""

import argparse

import numpy as np

from tclprop.models import FIG1_PARAMS, FIG1_STEP, FIG1_T_MAX, lambda_hamiltonian
from tclprop.propagation import average_series, l2_error, population, propagate, reference_propagate


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--csv", help="optional wide-format CSV of the four curves")
    parser.add_argument("--step", type=float, default=FIG1_STEP)
    args = parser.parse_args()

    ham = lambda_hamiltonian(FIG1_PARAMS)
    ref = population(reference_propagate(ham, FIG1_T_MAX, args.step), 0, 0)
    tcl = population(propagate(ham, FIG1_T_MAX, args.step, "tcl2"), 0, 0)
    dys = population(propagate(ham, FIG1_T_MAX, args.step, "dyson2"), 0, 0)
    avg = average_series(tcl, dys)

    window = ref.times >= 15.0 - 1e-9
    print(f"{'method':<8} {'L2 [0,20]':>10} {'L2 [15,20]':>11} {'max dev':>9}")
    for name, s in (("tcl2", tcl), ("dyson2", dys), ("average", avg)):
        d = s.values - ref.values
        print(f"{name:<8} {l2_error(s, ref):10.5f} {np.linalg.norm(d[window]):11.5f} {np.abs(d).max():9.5f}")

    if args.csv:
        data = np.column_stack([ref.times, ref.values, tcl.values, dys.values, avg.values])
        np.savetxt(args.csv, data, delimiter=",", header="t,reference,tcl2,dyson2,average",
                   comments="", fmt="%.17g")


if __name__ == "__main__":
    main()
