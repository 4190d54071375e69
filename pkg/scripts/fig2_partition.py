"""Partition function of the periodic XY chain: exact diagonalisation against
the second-order TCL and Dyson approximations and their average.

    python scripts/fig2_partition.py [--sites 10] [--max-a-beta 1.0]
"""

import argparse

import numpy as np

from tclprop.models import XYChainParams
from tclprop.thermo import partition_sweep


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sites", type=int, default=10)
    parser.add_argument("--max-a-beta", type=float, default=1.0)
    parser.add_argument("--points", type=int, default=11)
    args = parser.parse_args()

    grid = np.linspace(0.0, args.max_a_beta, args.points)
    print(f"{'A*beta':>6} {'exact':>12} {'tcl2-exact':>12} {'dyson2-exact':>13} {'avg-exact':>11}")
    for r in partition_sweep(XYChainParams(args.sites, 1.0), grid):
        print(f"{r.a_beta:6.2f} {r.z_exact:12.4f} {r.z_tcl2 - r.z_exact:12.4f} "
              f"{r.z_dyson2 - r.z_exact:13.4f} {r.z_average - r.z_exact:11.4f}")


if __name__ == "__main__":
    main()
