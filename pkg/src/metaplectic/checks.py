"""Numerical checks of the measure, isometry and orthogonality statements.

Every comparison is a ratio or a normalized inner product: no absolute
normalizing constant is asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Callable, Sequence

import numpy as np

from .compactification import compactify_coords, det12, sech_weight
from .errors import QuadratureError, ValidationError
from .fock import FockPolynomial, coefficient_on_s, gaussian_pairing, tensor_from_parts
from .quadrature import IntegralEstimate, QuadratureConfig, integrate_s2n, integrate_sp
from .symplectic import embed_unitary, lambda_squared, principal_sqrt

S2nFunction = Callable[[np.ndarray], np.ndarray]


@dataclass
class CheckResult:
    check: str
    value: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def _assemble(k1: np.ndarray, lam: np.ndarray, k2: np.ndarray) -> np.ndarray:
    """Stack of symplectic matrices embed(k1) exp(diag(l, -l)) embed(k2)."""
    e = np.concatenate([np.exp(lam), np.exp(-lam)], axis=-1)
    return (embed_unitary(k1, check=False) * e[..., None, :]) @ embed_unitary(k2, check=False)


def principal_lift(k1: np.ndarray, lam: np.ndarray, k2: np.ndarray) -> np.ndarray:
    """Principal square root of det(C_g)^{-1} on a stack of KAK coordinates."""
    return principal_sqrt(lambda_squared(_assemble(k1, lam, k2)))


@dataclass
class JacobianReport:
    ratios: list[complex]
    stderrs: list[float]
    spread: float
    threshold: float
    passed: bool


def _ratio_stderr(a: IntegralEstimate, b: IntegralEstimate) -> float:
    r = a.value / b.value
    return float(abs(r) * math.hypot(a.stderr / abs(a.value), b.stderr / abs(b.value)))


def jacobian_proportionality(test_functions: Sequence[S2nFunction], n: int, cfg: QuadratureConfig = QuadratureConfig(),
                             tolerance: float = 1e-6, sigmas: float = 3.0) -> JacobianReport:
    """Ratios  int_Sp F(H(g)) (prod sech)^{2n+1} dg / int_S F ds  for each F.

    Deterministic grids: pass iff max relative spread < tolerance. Monte
    Carlo: pass iff every pairwise difference is below `sigmas` combined
    standard errors.
    """
    if len(test_functions) < 3:
        raise ValidationError("need at least three test functions")
    ratios, errs = [], []
    for F in test_functions:
        sp = integrate_sp(lambda k1, l, k2, F=F: F(compactify_coords(k1, l, k2)) * sech_weight(l, 2 * n + 1), n, cfg)
        s = integrate_s2n(F, n, cfg)
        if abs(s.value) < 1e-12:
            raise QuadratureError("test function integrates to zero on S_2n; the ratio is undefined")
        ratios.append(sp.value / s.value)
        errs.append(_ratio_stderr(sp, s))
    mc = cfg.resolved_mode(n) == "monte-carlo"
    if mc:
        worst = 0.0
        for i in range(len(ratios)):
            for j in range(i):
                worst = max(worst, abs(ratios[i] - ratios[j]) / math.hypot(errs[i], errs[j]))
        return JacobianReport(ratios, errs, worst, sigmas, worst < sigmas)
    mean = np.mean(ratios)
    spread = float(max(abs(r - mean) for r in ratios) / abs(mean))
    return JacobianReport(ratios, errs, spread, tolerance, spread < tolerance)


def default_jacobian_functions(n: int) -> list[S2nFunction]:
    def const(s):
        return np.ones(s.shape[:-2], dtype=complex)

    def det12_sq(s):
        return np.abs(det12(s)) ** 2

    def shifted_det12(s):
        return 1 + det12(s).real

    def corner_sq(s):
        return np.abs(s[..., 0, 0]) ** 2

    def exp_corner(s):
        return np.exp(s[..., 0, 0].real)

    def phase_mix(s):
        return (det12(s) ** 2 / np.linalg.det(s)).real + 2

    return [const, det12_sq, shifted_det12, corner_sq, exp_corner, phase_mix]


@dataclass
class GramReport:
    labels: list[str]
    gram_sp: np.ndarray
    gram_s: np.ndarray
    constant: complex
    deviation: float
    tolerance: float
    passed: bool


def _gram_sp(fns, n, cfg):
    # weight |Lambda|^{4n+2} is computed from det of the Cayley block of the assembled g
    k = len(fns)
    gram = np.zeros((k, k), dtype=complex)
    for i in range(k):
        for j in range(i, k):
            def integrand(k1, l, k2, i=i, j=j):
                weight = np.abs(lambda_squared(_assemble(k1, l, k2))) ** (2 * n + 1)
                return fns[i](k1, l, k2) * np.conj(fns[j](k1, l, k2)) * weight
            gram[i, j] = integrate_sp(integrand, n, cfg).value
            gram[j, i] = np.conj(gram[i, j])
    return gram


def _gram_s(fns, n, cfg):
    k = len(fns)
    gram = np.zeros((k, k), dtype=complex)
    for i in range(k):
        for j in range(i, k):
            gram[i, j] = integrate_s2n(lambda s, i=i, j=j: fns[i](s) * np.conj(fns[j](s)), n, cfg).value
            gram[j, i] = np.conj(gram[i, j])
    return gram


def isometry_ratio(pairs: Sequence[tuple[FockPolynomial, FockPolynomial]], n: int = 1,
                   cfg: QuadratureConfig = QuadratureConfig(), tolerance: float = 1e-5) -> GramReport:
    """Gram matrices of M(phi (x) psi)/Lambda on Sp (weight |Lambda|^{4n+2}) and of
    their push-forwards W(j(phi (x) psi)) on S_2n must be proportional.

    On Sp the functions are the matrix coefficients divided by the principal
    lift, both evaluated from the assembled group element.
    """
    sp_fns, s_fns, labels = [], [], []
    for phi, psi in pairs:
        def on_sp(k1, l, k2, phi=phi, psi=psi):
            lam = principal_lift(k1, l, k2)
            return lam * coefficient_on_s(phi, psi, compactify_coords(k1, l, k2)) / lam
        sp_fns.append(on_sp)
        s_fns.append(lambda s, phi=phi, psi=psi: coefficient_on_s(phi, psi, s))
        labels.append(f"{sorted(phi.terms)}x{sorted(psi.terms)}")
    gsp, gs = _gram_sp(sp_fns, n, cfg), _gram_s(s_fns, n, cfg)
    c = np.vdot(gs.ravel(), gsp.ravel()) / np.vdot(gs.ravel(), gs.ravel())
    dev = float(np.abs(gsp - c * gs).max() / np.abs(gsp).max())
    return GramReport(labels, gsp, gs, complex(c), dev, tolerance, dev < tolerance)


def default_isometry_pairs(n: int = 1) -> list[tuple[FockPolynomial, FockPolynomial]]:
    if n != 1:
        raise ValidationError("default pairs are defined for n = 1")
    mono = FockPolynomial.monomial
    return [(mono((a,)), mono((b,))) for a, b in [(0, 0), (1, 1), (2, 0), (0, 2), (1, 3), (2, 2), (3, 1), (4, 0)]]


VectorPairs = Sequence[tuple[FockPolynomial, FockPolynomial]]


@dataclass
class OrthogonalityReport:
    block_a: tuple[int, int]
    block_b: tuple[int, int]
    normalized: list[float]
    tolerance: float
    passed: bool


def _tensor_on_sp(p: int, q: int, pairs: VectorPairs):
    def f(k1, l, k2):
        lam = principal_lift(k1, l, k2)
        s = compactify_coords(k1, l, k2)
        return tensor_from_parts(p, q, [lam * coefficient_on_s(a, b, s) for a, b in pairs])
    return f


def tensor_inner_product(block_a, pairs_a, block_b, pairs_b, n, cfg) -> tuple[complex, float, float]:
    """<F_a, F_b>, ||F_a||^2, ||F_b||^2 over Sp with Haar measure.

    Both factors use the same lift and the total lift degree is even, so the
    products descend from the double cover.
    """
    fa, fb = _tensor_on_sp(*block_a, pairs_a), _tensor_on_sp(*block_b, pairs_b)
    cross = integrate_sp(lambda *x: fa(*x) * np.conj(fb(*x)), n, cfg).value
    na = integrate_sp(lambda *x: np.abs(fa(*x)) ** 2, n, cfg).value.real
    nb = integrate_sp(lambda *x: np.abs(fb(*x)) ** 2, n, cfg).value.real
    return cross, na, nb


def orthogonality_check(block_a: tuple[int, int], block_b: tuple[int, int],
                        vector_sets: Sequence[tuple[VectorPairs, VectorPairs]], n: int = 1,
                        cfg: QuadratureConfig = QuadratureConfig(), tolerance: float = 1e-5) -> OrthogonalityReport:
    vals = []
    for pairs_a, pairs_b in vector_sets:
        cross, na, nb = tensor_inner_product(block_a, pairs_a, block_b, pairs_b, n, cfg)
        if na <= 1e-300 or nb <= 1e-300:
            raise QuadratureError("degenerate test vector: zero norm")
        vals.append(float(abs(cross) / math.sqrt(na * nb)))
    return OrthogonalityReport(block_a, block_b, vals, tolerance, max(vals) < tolerance)


def k_character(p: int, q: int, pairs: VectorPairs) -> tuple[float, float]:
    """Central U(n) x U(n) character (right, left) of a pure tensor of homogeneous vectors.

    A degree-d vector contributes d + n/2, with a minus sign on the
    contragredient factors. Tensors with different characters are
    orthogonal for trivial reasons, so meaningful comparisons match them.
    """
    if not all(a.is_homogeneous() and b.is_homogeneous() for a, b in pairs):
        raise ValidationError("character is defined here for homogeneous vectors only")
    n = pairs[0][0].n
    right = sum((1 if i < p else -1) * (a.degree + n / 2) for i, (a, _) in enumerate(pairs))
    left = sum((1 if i < p else -1) * (b.degree + n / 2) for i, (_, b) in enumerate(pairs))
    return right, left


def _pairs(degrees):
    mono = FockPolynomial.monomial
    return [(mono((a,)), mono((b,))) for a, b in degrees]


# degree pairs (deg phi, deg psi) chosen so both tensors carry the same character
_MATCHED_12_30 = [
    ([(2, 2), (0, 0), (0, 0)], [(0, 0)] * 3),
    ([(4, 4), (1, 1), (1, 1)], [(0, 0)] * 3),
    ([(5, 5), (1, 1), (0, 0)], [(1, 1), (1, 1), (0, 0)]),
    ([(6, 4), (2, 0), (0, 2)], [(2, 0), (0, 0), (0, 0)]),
    ([(3, 3), (1, 1), (0, 0)], [(0, 0)] * 3),
]


def default_vector_sets(block_a: tuple[int, int] = (1, 2), count: int = 4) -> list[tuple[VectorPairs, VectorPairs]]:
    """Character-matched n = 1 test tensors for (1,2) vs (3,0) or (2,1) vs (0,3)."""
    out = []
    for a, b in _MATCHED_12_30[:count]:
        if block_a == (1, 2):
            out.append((_pairs(a), _pairs(b)))
        elif block_a == (2, 1):
            # move the holomorphic factor last so it sits among the conjugated ones
            out.append((_pairs(a[1:] + a[:1]), _pairs(b)))
        else:
            raise ValidationError("default sets exist for blocks (1,2) and (2,1)")
    return out


@dataclass
class WeightTypeReport:
    degrees: list[int]
    phase_error: float
    cross_gram: float
    tolerance: float
    passed: bool


def homogeneous_basis(nvars: int, m: int) -> list[FockPolynomial]:
    from .fock import monomials

    return [f for f in monomials(nvars, m) if f.degree == m]


def weight_type_check(degrees: Sequence[int], n: int = 1, cfg: QuadratureConfig = QuadratureConfig(),
                      tolerance: float = 1e-5, seed: int = 0) -> WeightTypeReport:
    """Scalar-torus character of W on homogeneous inputs and L^2 orthogonality
    of images of different degrees.

    W(f)(e^{2i phi} s) = e^{i m phi} W(f)(s) for f homogeneous of degree m.
    """
    if any(m % 2 for m in degrees):
        raise ValidationError("degrees must be even")
    rng = np.random.default_rng(seed)
    from .quadrature import haar_unitary

    phase_err = 0.0
    for m in degrees:
        for f in homogeneous_basis(2 * n, m):
            u = haar_unitary(2 * n, rng)
            s = u @ u.T
            phi = rng.uniform(0, 2 * np.pi)
            lhs = gaussian_pairing(f, np.exp(2j * phi) * s)
            phase_err = max(phase_err, abs(lhs - np.exp(1j * m * phi) * gaussian_pairing(f, s)))

    images = {m: [lambda s, f=f: gaussian_pairing(f, s) for f in homogeneous_basis(2 * n, m)] for m in degrees}
    norms = {}
    for m, fns in images.items():
        norms[m] = [math.sqrt(integrate_s2n(lambda s, F=F: np.abs(F(s)) ** 2, n, cfg).value.real) for F in fns]
    worst = 0.0
    for i, m1 in enumerate(degrees):
        for m2 in degrees[:i]:
            if m1 == m2:
                continue
            for F1, n1 in zip(images[m1], norms[m1]):
                for F2, n2 in zip(images[m2], norms[m2]):
                    if n1 == 0 or n2 == 0:
                        continue
                    val = integrate_s2n(lambda s: F1(s) * np.conj(F2(s)), n, cfg).value
                    worst = max(worst, abs(val) / (n1 * n2))
    return WeightTypeReport(list(degrees), float(phase_err), worst, tolerance,
                            phase_err < 1e-10 and worst < tolerance)
