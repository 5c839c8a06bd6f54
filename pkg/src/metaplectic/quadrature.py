"""Haar sampling and integration over Sp(n, R) and S_2n.

Sp(n, R) is integrated in KAK coordinates (k1, lambda, k2) against
sp_density; S_2n in generalized Cartan coordinates (h1, theta, h2) against
s2n_density. Haar measures on U(n) have mass 1. For n = 1 both integrals are
deterministic tensor grids (trapezoid on the circles, Gauss-Legendre in the
radial variable); otherwise Monte Carlo with per-block seeding.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .compactification import s2n_density, sp_density, torus_point, tau_action
from .errors import ValidationError

SpIntegrand = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
S2nIntegrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureConfig:
    mode: str = "auto"  # "deterministic", "monte-carlo" or "auto" (deterministic iff n == 1)
    grid_nodes: int = 64
    radial_nodes: int = 256
    mc_samples: int = 100_000
    mc_block: int = 50_000
    seed: int = 20240611
    radial_cutoff: float = 20.0
    tolerance: float = 1e-6
    check_cutoff: bool = True

    def __post_init__(self):
        if self.mode not in ("auto", "deterministic", "monte-carlo"):
            raise ValidationError(f"unknown quadrature mode {self.mode!r}")
        if self.grid_nodes < 2 or self.radial_nodes < 2:
            raise ValidationError("grid_nodes and radial_nodes must be at least 2")
        if self.mc_samples < 1 or self.mc_block < 1:
            raise ValidationError("mc_samples must be positive")
        if self.radial_cutoff <= 0:
            raise ValidationError("radial_cutoff must be positive")

    def resolved_mode(self, n: int) -> str:
        if self.mode == "auto":
            return "deterministic" if n == 1 else "monte-carlo"
        if self.mode == "deterministic" and n != 1:
            raise ValidationError("deterministic grids are implemented for n = 1 only")
        return self.mode

    @classmethod
    def from_dict(cls, d: dict) -> "QuadratureConfig":
        known = {k: v for k, v in d.items() if k in cls.__dataclass_fields__}
        return cls(**known)


@dataclass(frozen=True)
class IntegralEstimate:
    value: complex
    stderr: float
    samples_used: int


def haar_unitary(n: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar-distributed unitary (or a stack of `size` of them).

    QR of a complex Ginibre matrix, with the phases of diag(R) moved into Q.
    """
    shape = (n, n) if size is None else (size, n, n)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def block_rng(seed: int, block: int) -> np.random.Generator:
    """Generator for one MC block; depends only on (seed, block)."""
    return np.random.default_rng(np.random.SeedSequence([seed, block]))


def _circle(nodes: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(nodes) / nodes)


def _legendre(a: float, b: float, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    return (b - a) / 2 * x + (a + b) / 2, (b - a) / 2 * w


def _circle_pair(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Two 1x1 unitaries on a nodes x nodes product grid of the circle."""
    phases = _circle(nodes)
    a = np.broadcast_to(phases[:, None], (nodes, nodes))[..., None, None]
    b = np.broadcast_to(phases[None, :], (nodes, nodes))[..., None, None]
    return a, b


def _grid_sp(f: SpIntegrand, cfg: QuadratureConfig, a: float, b: float, nodes: int) -> complex:
    k1, k2 = _circle_pair(cfg.grid_nodes)
    lam, lw = _legendre(a, b, nodes)
    total = 0.0 + 0.0j
    for l, w in zip(lam, lw):
        lam_arr = np.full((cfg.grid_nodes, cfg.grid_nodes, 1), l)
        vals = f(k1, lam_arr, k2)
        total += w * sp_density(np.array([l]))[()] * np.mean(vals)
    return complex(total)


def _mc_sp(f: SpIntegrand, n: int, cfg: QuadratureConfig) -> IntegralEstimate:
    # lambda_i iid exponential(1) truncated to [0, cutoff]; dividing by n! maps the
    # full quadrant onto the Weyl chamber (Haar k's absorb coordinate permutations)
    mass = 1 - math.exp(-cfg.radial_cutoff)
    vals = []
    remaining, block = cfg.mc_samples, 0
    while remaining > 0:
        size = min(cfg.mc_block, remaining)
        rng = block_rng(cfg.seed, block)
        k1 = haar_unitary(n, rng, size)
        k2 = haar_unitary(n, rng, size)
        lam = -np.log1p(-mass * rng.uniform(size=(size, n)))
        pdf = np.prod(np.exp(-lam) / mass, axis=-1)
        vals.append(f(k1, lam, k2) * sp_density(lam) / pdf / math.factorial(n))
        remaining -= size
        block += 1
    v = np.concatenate(vals)
    return IntegralEstimate(complex(v.mean()), float(v.std(ddof=1) / math.sqrt(len(v))) if len(v) > 1 else 0.0, len(v))


def integrate_sp(f: SpIntegrand, n: int, cfg: QuadratureConfig = QuadratureConfig()) -> IntegralEstimate:
    """Integral of f(k1, lambdas, k2) sp_density(lambdas) over the chamber times U(n)^2.

    f receives stacked arrays k1 (..., n, n), lambdas (..., n), k2 (..., n, n).
    """
    if cfg.resolved_mode(n) == "monte-carlo":
        return _mc_sp(f, n, cfg)
    value = _grid_sp(f, cfg, 0.0, cfg.radial_cutoff, cfg.radial_nodes)
    if cfg.check_cutoff:
        tail = _grid_sp(f, cfg, cfg.radial_cutoff, 1.25 * cfg.radial_cutoff, max(16, cfg.radial_nodes // 4))
        if abs(tail) > cfg.tolerance * max(1.0, abs(value)):
            warnings.warn(f"extending the radial cutoff by 25% changes the integral by {abs(tail):.3e}",
                          RuntimeWarning, stacklevel=2)
    return IntegralEstimate(value, 0.0, cfg.grid_nodes**2 * cfg.radial_nodes)


def integrate_s2n(F: S2nIntegrand, n: int, cfg: QuadratureConfig = QuadratureConfig()) -> IntegralEstimate:
    """Integral of F(tau(h1, h2, t(theta))) s2n_density(theta) over [0, pi/2]^n times U(n)^2."""
    if cfg.resolved_mode(n) == "deterministic":
        h1, h2 = _circle_pair(cfg.grid_nodes)
        th, tw = _legendre(0.0, math.pi / 2, cfg.radial_nodes)
        total = 0.0 + 0.0j
        for t, w in zip(th, tw):
            s = tau_action(h1, h2, torus_point(np.array([t])))
            total += w * s2n_density(np.array([t]))[()] * np.mean(F(s))
        return IntegralEstimate(complex(total), 0.0, cfg.grid_nodes**2 * cfg.radial_nodes)

    vals = []
    remaining, block = cfg.mc_samples, 0
    vol = (math.pi / 2) ** n / math.factorial(n)
    while remaining > 0:
        size = min(cfg.mc_block, remaining)
        # offset keeps these streams disjoint from the Sp-side blocks
        rng = block_rng(cfg.seed, 1_000_000 + block)
        h1 = haar_unitary(n, rng, size)
        h2 = haar_unitary(n, rng, size)
        th = rng.uniform(0, math.pi / 2, size=(size, n))
        s = tau_action(h1, h2, torus_point(th))
        vals.append(F(s) * s2n_density(th) * vol)
        remaining -= size
        block += 1
    v = np.concatenate(vals)
    return IntegralEstimate(complex(v.mean()), float(v.std(ddof=1) / math.sqrt(len(v))) if len(v) > 1 else 0.0, len(v))


def with_samples(cfg: QuadratureConfig, samples: int) -> QuadratureConfig:
    return replace(cfg, mc_samples=samples)
