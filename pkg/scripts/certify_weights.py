"""Exhaustive block-assignment certificates over even dominant weights."""
import argparse
import csv
import sys

from metaplectic.weights import SCHEMES, certify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--bound", type=int, default=10)
    ap.add_argument("--csv", metavar="PATH", help="write every (scheme, weight, p) row")
    args = ap.parse_args()

    rows = []
    ok = True
    for n in args.n:
        for scheme in SCHEMES:
            cert = certify(n, args.bound, scheme)
            ok &= cert.passed
            print(f"2n={2 * n:<2} {scheme:<15} weights={len(cert.rows):<6} failures={len(cert.failures)}")
            rows += [(2 * n, scheme, " ".join(map(str, lam)), p) for lam, p in cert.rows]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "scheme", "lambda", "p"])
            w.writerows(rows)
    sys.exit(0 if ok else 2)


if __name__ == "__main__":
    main()
