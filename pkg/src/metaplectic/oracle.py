"""Direct Gauss-Hermite evaluation of the oscillator integral kernel.

Independent of the closed form in ``fock``: the operator is applied by
integrating lam * exp((iz, conj w) H(g) (iz; conj w) / 4) f(w) against the
Gaussian measure, with H(g) taken from the KAK coordinates of g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from numpy.polynomial.hermite_e import hermegauss
from scipy import integrate

from .compactification import compactify_coords
from .errors import QuadratureError, ValidationError
from .fock import FockPolynomial
from .symplectic import MetaplecticElement, kak_decompose


@dataclass(frozen=True)
class HermiteConfig:
    """Node count per real dimension and the convergence probe."""

    nodes: int = 30
    check_nodes: int = 24
    tolerance: float = 1e-8
    chunk: int = 2048

    def __post_init__(self):
        if self.nodes < 2 or self.check_nodes < 2:
            raise ValidationError("node counts must be at least 2")


@lru_cache(maxsize=None)
def _complex_grid(n: int, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Points of C^n and weights for the normalized Gaussian measure."""
    x, w = hermegauss(nodes)
    w = w / math.sqrt(2 * math.pi)
    dims = 2 * n
    mesh = np.meshgrid(*([x] * dims), indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    wmesh = np.meshgrid(*([w] * dims), indexing="ij")
    wts = np.prod(np.stack([m.ravel() for m in wmesh], axis=-1), axis=-1)
    z = pts[:, :n] + 1j * pts[:, n:]
    return z, wts


class OscillatorImage:
    """omega(m) phi sampled at the quadrature nodes of C^n."""

    def __init__(self, z: np.ndarray, weights: np.ndarray, values: np.ndarray):
        self.z, self.weights, self.values = z, weights, values

    def pair(self, psi: FockPolynomial) -> complex:
        """(omega(m) phi, psi)."""
        return complex(np.sum(self.values * np.conj(psi(self.z)) * self.weights))

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2 * self.weights))


def oscillator_apply_many(m: MetaplecticElement, phis: Sequence[FockPolynomial],
                          cfg: HermiteConfig = HermiteConfig(), nodes: int | None = None) -> list[OscillatorImage]:
    """Images of several vectors under one group element; the kernel is built once."""
    n = m.n
    if any(phi.n != n for phi in phis):
        raise ValidationError("vector and group dimensions differ")
    f = kak_decompose(m.g)
    s = compactify_coords(f.k1, f.lambdas, f.k2)
    z, weights = _complex_grid(n, nodes or cfg.nodes)
    wbar = z.conj()
    phi_w = np.stack([phi(z) * weights for phi in phis], axis=-1)
    s11, s12, s22 = s[:n, :n], s[:n, n:], s[n:, n:]
    # Q(z, w) = (iz)^T s11 (iz) + 2 (iz)^T s12 wbar + wbar^T s22 wbar
    c_w = np.einsum("ki,ij,kj->k", wbar, s22, wbar)
    cross = wbar @ s12.T
    values = np.empty((len(z), len(phis)), dtype=complex)
    for start in range(0, len(z), cfg.chunk):
        zc = z[start:start + cfg.chunk]
        a_z = -np.einsum("ki,ij,kj->k", zc, s11, zc)
        q = a_z[:, None] + 2j * (zc @ cross.T) + c_w[None, :]
        values[start:start + cfg.chunk] = np.exp(q / 4) @ phi_w
    values *= m.lam
    return [OscillatorImage(z, weights, values[:, i]) for i in range(len(phis))]


def oscillator_apply_oracle(m: MetaplecticElement, phi: FockPolynomial, cfg: HermiteConfig = HermiteConfig()) -> OscillatorImage:
    return oscillator_apply_many(m, [phi], cfg)[0]


def oracle_coefficient(phi: FockPolynomial, psi: FockPolynomial, m: MetaplecticElement,
                       cfg: HermiteConfig = HermiteConfig()) -> complex:
    """(omega(m) phi, psi) by quadrature, cross-checked against a coarser rule."""
    fine = oscillator_apply_many(m, [phi], cfg)[0].pair(psi)
    coarse = oscillator_apply_many(m, [phi], cfg, cfg.check_nodes)[0].pair(psi)
    scale = max(1.0, abs(fine))
    if abs(fine - coarse) > cfg.tolerance * scale:
        raise QuadratureError(f"Gauss-Hermite estimate not converged: |fine - coarse| = {abs(fine - coarse):.3e}")
    return fine


def _sphere_area(n: int) -> float:
    return 2 * math.pi**n / math.gamma(n)


@lru_cache(maxsize=None)
def bound_constant(n: int) -> float:
    """(2 pi)^{-n} times the integral of (1 + |z|)^{-2n-2} over C^n."""
    radial, err = integrate.quad(lambda r: r ** (2 * n - 1) * (1 + r) ** (-2 * n - 2), 0, np.inf)
    if err > 1e-10 * radial:
        raise QuadratureError("radial integral for the bound constant did not converge")
    return (2 * math.pi) ** (-n) * _sphere_area(n) * radial


def weighted_norm(f: FockPolynomial, power: int) -> float:
    """|| f(z) (1 + |z|)^power || in L^2 of the Gaussian measure.

    Distinct monomials are orthogonal on every sphere, so the norm splits
    into radial integrals: the sphere average of |z^a|^2 at radius r is
    r^{2|a|} a! (n-1)! / (|a| + n - 1)!.
    """
    n = f.n
    total = 0.0
    for alpha, c in f.terms.items():
        m = sum(alpha)
        ang = math.prod(math.factorial(a) for a in alpha) * math.factorial(n - 1) / math.factorial(m + n - 1)
        radial, err = integrate.quad(lambda r: r ** (2 * m + 2 * n - 1) * (1 + r) ** (2 * power) * math.exp(-r * r / 2),
                                     0, np.inf, epsabs=0, epsrel=1e-12, limit=200)
        if err > 1e-8 * radial:
            raise QuadratureError("weighted norm integral did not converge")
        total += abs(c) ** 2 * ang * radial
    return math.sqrt((2 * math.pi) ** (-n) * _sphere_area(n) * total)


def coefficient_bound(phi: FockPolynomial, psi: FockPolynomial) -> float:
    """B with |(omega(m) phi, psi)| <= B |lam| for every m; Cauchy-Schwarz on the kernel."""
    if phi.n != psi.n:
        raise ValidationError("dimension mismatch")
    n = phi.n
    return bound_constant(n) * weighted_norm(phi, n + 1) * weighted_norm(psi, n + 1)
