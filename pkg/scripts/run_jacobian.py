"""Compare integrals over Sp(2n, R) and S(2n) for a family of test functions."""
import argparse
import json
import time

from metaplectic.checks import default_jacobian_functions, jacobian_proportionality
from metaplectic.quadrature import QuadratureConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--samples", type=int, default=1_000_000, help="Monte Carlo samples (n >= 2)")
    ap.add_argument("--grid", type=int, default=64, help="angular nodes (n = 1)")
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()

    cfg = QuadratureConfig(grid_nodes=args.grid, mc_samples=args.samples, seed=args.seed)
    t0 = time.perf_counter()
    rep = jacobian_proportionality(default_jacobian_functions(args.n), args.n, cfg)
    print(json.dumps({
        "n": args.n,
        "mode": cfg.resolved_mode(args.n),
        "ratios": [r.real for r in rep.ratios],
        "stderrs": rep.stderrs,
        "spread": rep.spread,
        "threshold": rep.threshold,
        "passed": rep.passed,
        "seconds": round(time.perf_counter() - t0, 2),
    }, indent=2))


if __name__ == "__main__":
    main()
