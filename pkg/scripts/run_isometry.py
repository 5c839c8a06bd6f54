"""Gram matrices of matrix coefficients on the group and on S(2), and their ratio."""
import argparse

import numpy as np

from metaplectic.checks import default_isometry_pairs, isometry_ratio
from metaplectic.quadrature import QuadratureConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=32)
    ap.add_argument("--radial", type=int, default=256)
    args = ap.parse_args()

    rep = isometry_ratio(default_isometry_pairs(), 1, QuadratureConfig(grid_nodes=args.grid, radial_nodes=args.radial))
    np.set_printoptions(precision=6, suppress=True, linewidth=140)
    print("coefficients:", ", ".join(rep.labels))
    print("Gram on the group:\n", rep.gram_sp)
    print("Gram on S(2):\n", rep.gram_s)
    print(f"fitted constant {rep.constant:.10f}, relative deviation {rep.deviation:.3e}, passed={rep.passed}")


if __name__ == "__main__":
    main()
