"""Closed-form matrix coefficients against direct Gauss-Hermite integration."""
import argparse

import numpy as np

from metaplectic.fock import FockPolynomial, matrix_coefficient
from metaplectic.oracle import HermiteConfig, oscillator_apply_many
from metaplectic.symplectic import lift, random_symplectic


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--nodes", type=int, default=40)
    ap.add_argument("--scale", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    vectors = [FockPolynomial.monomial((d,)) for d in range(args.degree + 1)]
    for _ in range(args.samples):
        m = lift(random_symplectic(1, rng, args.scale))
        images = oscillator_apply_many(m, vectors, HermiteConfig(nodes=args.nodes))
        err = max(abs(matrix_coefficient(phi, psi, m) - img.pair(psi))
                  for phi, img in zip(vectors, images) for psi in vectors)
        print(f"|lam| = {abs(m.lam):.4f}  max |closed - quadrature| = {err:.2e}")


if __name__ == "__main__":
    main()
