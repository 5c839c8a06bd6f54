"""Cross inner products between coefficient spaces of different (p, q) blocks, n = 1."""
import argparse

from metaplectic.checks import default_vector_sets, k_character, orthogonality_check, tensor_inner_product
from metaplectic.fock import FockPolynomial
from metaplectic.quadrature import QuadratureConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=32)
    ap.add_argument("--count", type=int, default=5)
    args = ap.parse_args()
    cfg = QuadratureConfig(grid_nodes=args.grid)

    for a, b in (((1, 2), (3, 0)), ((2, 1), (0, 3))):
        sets = default_vector_sets(a, args.count)
        rep = orthogonality_check(a, b, sets, 1, cfg, 1e-5)
        print(f"M{a} vs M{b}:")
        for (pa, pb), v in zip(sets, rep.normalized):
            print(f"  character {k_character(*a, pa)}  normalized |<.,.>| = {v:.3e}")

    # a pair with matching characters but no orthogonality relation between the blocks
    one, z = FockPolynomial.monomial((0,)), FockPolynomial.monomial((1,))
    cross, na, nb = tensor_inner_product((1, 2), [(one, one), (z, z), (one, one)], (0, 3), [(one, one)] * 3, 1, cfg)
    print(f"control M(1,2) vs M(0,3): normalized |<.,.>| = {abs(cross) / (na * nb) ** 0.5:.4f}")


if __name__ == "__main__":
    main()
