"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 a verification check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import checks
from .compactification import compactify, gc_decompose
from .errors import MetaplecticError, ValidationError
from .fock import matrix_coefficient
from .matrix_io import complex_to_json, load_json, matrix_from_json, matrix_to_json, polynomial_from_json
from .oracle import coefficient_bound
from .quadrature import QuadratureConfig
from .symplectic import kak_decompose, lift
from .weights import SCHEMES, assign_block, block_signature, certify

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2
SUITES = ("jacobian", "isometry", "orthogonality", "weights")


@dataclass
class RunConfig:
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    tolerances: dict = field(default_factory=dict)
    lift_sign: int = 1

    @classmethod
    def load(cls, path: str | None, seed: int | None = None) -> "RunConfig":
        raw = load_json(path) if path else {}
        if not isinstance(raw, dict):
            raise ValidationError("config file must hold a JSON object")
        quad = QuadratureConfig.from_dict(raw.get("quadrature", {}))
        if seed is not None:
            quad = replace(quad, seed=seed)
        tols = raw.get("tolerances", {})
        if any(not isinstance(v, (int, float)) or v <= 0 for v in tols.values()):
            raise ValidationError("tolerances must be positive numbers")
        return cls(quad, dict(tols), int(raw.get("lift_sign", 1)))

    def tol(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message} (see --help)\n")


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _read_matrix(path: str) -> np.ndarray:
    return matrix_from_json(load_json(path))


def cmd_decompose(args) -> int:
    g = _read_matrix(args.matrix)
    f = kak_decompose(g)
    _emit({"n": f.n, "lambdas": f.lambdas.tolist(), "k1": matrix_to_json(f.k1, f.n), "k2": matrix_to_json(f.k2, f.n),
           "residual": float(np.abs(f.reassemble() - g).max())}, args)
    return EXIT_OK


def cmd_compactify(args) -> int:
    g = _read_matrix(args.matrix)
    f = kak_decompose(g)
    s = compactify(f)
    gc = gc_decompose(s)
    _emit({"s": matrix_to_json(s), "lambdas": f.lambdas.tolist(), "thetas": gc.thetas.tolist()}, args)
    return EXIT_OK


def cmd_matcoef(args) -> int:
    phi = polynomial_from_json(load_json(args.phi))
    psi = polynomial_from_json(load_json(args.psi))
    g = _read_matrix(args.matrix) if args.matrix else np.eye(2 * phi.n)
    m = lift(g, args.lift_sign)
    value = matrix_coefficient(phi, psi, m)
    bound = coefficient_bound(phi, psi)
    _emit({"coefficient": complex_to_json(value), "lambda": complex_to_json(m.lam), "bound": bound,
           "bound_times_abs_lambda": bound * abs(m.lam)}, args)
    return EXIT_OK


def _parse_weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"--lambda expects comma-separated integers, got {text!r}") from None


def cmd_weights(args) -> int:
    if args.action == "assign":
        if not args.weight:
            raise ValidationError("weights assign needs --lambda")
        lam = _parse_weight(args.weight)
        schemes = SCHEMES if args.scheme == "all" else (args.scheme,)
        out = {"lambda": list(lam), "blocks": {sc: assign_block(lam, sc).as_dict() for sc in schemes},
               "signature": list(block_signature(lam))}
        _emit(out, args)
        return EXIT_OK

    schemes = SCHEMES if args.scheme == "all" else (args.scheme,)
    certs = [certify(args.n, args.bound, sc) for sc in schemes]
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["scheme", "lambda", "p"])
        for c in certs:
            for lam, p in c.rows:
                w.writerow([c.scheme, " ".join(map(str, lam)), p])
        text = buf.getvalue()
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        _emit({"n": args.n, "bound": args.bound,
               "certificates": [{"scheme": c.scheme, "weights": len(c.rows) + len(c.failures),
                                 "failures": [[list(w), why] for w, why in c.failures], "pass": c.passed}
                                for c in certs]}, args)
    for c in certs:
        print(f"{c.scheme:16s} weights={len(c.rows) + len(c.failures):6d} {'PASS' if c.passed else 'FAIL'}",
              file=sys.stderr)
    return EXIT_OK if all(c.passed for c in certs) else EXIT_FAILED


def run_suite(name: str, n: int, cfg: RunConfig, bound: int = 10) -> list[checks.CheckResult]:
    quad = cfg.quadrature
    out: list[checks.CheckResult] = []
    if name == "jacobian":
        tol = cfg.tol("jacobian", 1e-6 if n == 1 else 3.0)
        rep = checks.jacobian_proportionality(checks.default_jacobian_functions(n), n, quad,
                                              tolerance=tol, sigmas=tol)
        out.append(checks.CheckResult(f"jacobian n={n}", rep.spread, rep.threshold, rep.passed,
                                      {"ratios": [complex_to_json(r) for r in rep.ratios]}))
    elif name == "isometry":
        if n != 1:
            raise ValidationError("the isometry suite runs at n = 1")
        rep = checks.isometry_ratio(checks.default_isometry_pairs(1), 1, quad, cfg.tol("isometry", 1e-5))
        out.append(checks.CheckResult("isometry gram", rep.deviation, rep.tolerance, rep.passed,
                                      {"constant": complex_to_json(rep.constant)}))
    elif name == "orthogonality":
        if n != 1:
            raise ValidationError("the orthogonality suite runs at n = 1")
        tol = cfg.tol("orthogonality", 1e-5)
        for a, b in (((1, 2), (3, 0)), ((2, 1), (0, 3))):
            rep = checks.orthogonality_check(a, b, checks.default_vector_sets(a), 1, quad, tol)
            out.append(checks.CheckResult(f"orthogonality {a} vs {b}", max(rep.normalized), tol, rep.passed,
                                          {"normalized": rep.normalized}))
        wt = checks.weight_type_check([0, 2, 4], 1, quad, tol)
        out.append(checks.CheckResult("weight type", max(wt.cross_gram, wt.phase_error), tol, wt.passed))
    elif name == "weights":
        for sc in SCHEMES:
            c = certify(n, bound, sc)
            out.append(checks.CheckResult(f"lattice {sc} 2n={2 * n}", float(len(c.failures)), 0.0, c.passed))
    else:
        raise ValidationError(f"unknown suite {name!r}")
    return out


def exit_code_for(results: Sequence[checks.CheckResult]) -> int:
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def cmd_verify(args) -> int:
    cfg = RunConfig.load(args.config, args.seed)
    suites = SUITES if args.suite == "all" else (args.suite,)
    results = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for name in sorted(suites):
            if args.suite == "all" and args.n != 1 and name in ("isometry", "orthogonality"):
                continue
            results.extend(run_suite(name, args.n, cfg, args.bound))
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.check:36s} value={r.value:.3e} tol={r.tolerance:.1e}",
              file=sys.stderr)
    _emit({"seed": cfg.quadrature.seed, "results": [r.as_dict() for r in results]}, args)
    return exit_code_for(results)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="metaplectic", description="Symplectic compactification and oscillator coefficient tools.")
    p.add_argument("--out", help="write the JSON (or CSV) result to this file")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", help="KAK factorization of a symplectic matrix")
    d.add_argument("matrix", help="JSON file with the real 2n x 2n matrix")
    d.set_defaults(func=cmd_decompose)

    c = sub.add_parser("compactify", help="image of g in symmetric unitary matrices")
    c.add_argument("matrix")
    c.set_defaults(func=cmd_compactify)

    m = sub.add_parser("matcoef", help="matrix coefficient (omega(lam, g) phi, psi) and its bound")
    m.add_argument("--phi", required=True)
    m.add_argument("--psi", required=True)
    m.add_argument("--matrix", help="symplectic matrix JSON (identity if omitted)")
    m.add_argument("--lift-sign", type=int, choices=(1, -1), default=1)
    m.set_defaults(func=cmd_matcoef)

    w = sub.add_parser("weights", help="lattice block assignment and certificates")
    w.add_argument("action", choices=("assign", "certify"))
    w.add_argument("--scheme", default="all", choices=SCHEMES + ("all",))
    w.add_argument("--lambda", dest="weight", help="comma-separated even dominant weight, e.g. 4,2,0,-2")
    w.add_argument("--n", type=int, default=1)
    w.add_argument("--bound", type=int, default=10)
    w.add_argument("--csv", action="store_true", help="emit certify rows as CSV")
    w.set_defaults(func=cmd_weights)

    v = sub.add_parser("verify", help="run numerical verification suites")
    v.add_argument("--suite", default="all", choices=SUITES + ("all",))
    v.add_argument("--n", type=int, default=1, choices=(1, 2))
    v.add_argument("--config", help="JSON run configuration")
    v.add_argument("--seed", type=int)
    v.add_argument("--bound", type=int, default=10)
    v.set_defaults(func=cmd_verify)

    for sp in (d, c, m, w, v):
        sp.add_argument("--out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "out"):
        args.out = None
    try:
        return args.func(args)
    except MetaplecticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
