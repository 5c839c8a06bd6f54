"""Polynomials in the Bargmann-Segal Fock space and closed-form oscillator
matrix coefficients.

The Gaussian measure is normalized so that (1, 1) = 1 and
(z^a, z^b) = delta_ab 2^|a| a!.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .compactification import compactify_coords
from .errors import ValidationError
from .symplectic import MetaplecticElement, kak_decompose

MultiIndex = tuple[int, ...]


def _norm_sq(alpha: MultiIndex) -> int:
    return 2 ** sum(alpha) * math.prod(math.factorial(a) for a in alpha)


@dataclass(frozen=True)
class FockPolynomial:
    """Finitely supported map from multi-indices to complex coefficients."""

    n: int
    terms: Mapping[MultiIndex, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("number of variables must be positive")
        clean: dict[MultiIndex, complex] = {}
        for alpha, c in self.terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.n or any(a < 0 for a in alpha):
                raise ValidationError(f"bad multi-index {alpha} for n={self.n}")
            c = complex(c)
            if c != 0:
                clean[alpha] = clean.get(alpha, 0) + c
        object.__setattr__(self, "terms", {a: c for a, c in clean.items() if c != 0})

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff: complex = 1.0) -> "FockPolynomial":
        return cls(len(alpha), {tuple(alpha): coeff})

    @classmethod
    def constant(cls, n: int, value: complex = 1.0) -> "FockPolynomial":
        return cls(n, {(0,) * n: value})

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self.terms}) <= 1

    def conj(self) -> "FockPolynomial":
        """Conjugate coefficients (not the function values)."""
        return FockPolynomial(self.n, {a: np.conj(c) for a, c in self.terms.items()})

    def __add__(self, other: "FockPolynomial") -> "FockPolynomial":
        if other.n != self.n:
            raise ValidationError("dimension mismatch")
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return FockPolynomial(self.n, out)

    def __mul__(self, other):
        if isinstance(other, FockPolynomial):
            if other.n != self.n:
                raise ValidationError("dimension mismatch")
            out: dict[MultiIndex, complex] = {}
            for a, c in self.terms.items():
                for b, d in other.terms.items():
                    e = tuple(x + y for x, y in zip(a, b))
                    out[e] = out.get(e, 0) + c * d
            return FockPolynomial(self.n, out)
        return FockPolynomial(self.n, {a: c * other for a, c in self.terms.items()})

    __rmul__ = __mul__

    def __call__(self, z: np.ndarray) -> np.ndarray:
        """Evaluate at points z of shape (..., n)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape[:-1], dtype=complex)
        for alpha, c in self.terms.items():
            term = np.full(z.shape[:-1], c, dtype=complex)
            for i, e in enumerate(alpha):
                if e:
                    term = term * z[..., i] ** e
            out += term
        return out

    def substitute(self, a: np.ndarray) -> "FockPolynomial":
        """The polynomial u -> f(a u) for a square matrix a."""
        a = np.asarray(a, dtype=complex)
        if a.shape != (self.n, self.n):
            raise ValidationError("substitution matrix has the wrong shape")
        rows = [FockPolynomial(self.n, {tuple(int(k == j) for k in range(self.n)): a[i, j] for j in range(self.n)})
                for i in range(self.n)]
        out = FockPolynomial(self.n)
        for alpha, c in self.terms.items():
            term = FockPolynomial.constant(self.n, c)
            for i, e in enumerate(alpha):
                for _ in range(e):
                    term = term * rows[i]
            out = out + term
        return out

    def allclose(self, other: "FockPolynomial", atol: float = 1e-12) -> bool:
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.terms.get(k, 0) - other.terms.get(k, 0)) <= atol for k in keys)


def bargmann_inner(f: FockPolynomial, h: FockPolynomial) -> complex:
    """(f, h), linear in f and conjugate-linear in h."""
    if f.n != h.n:
        raise ValidationError("dimension mismatch")
    return complex(sum(c * np.conj(h.terms[a]) * _norm_sq(a) for a, c in f.terms.items() if a in h.terms))


def fock_norm(f: FockPolynomial) -> float:
    return math.sqrt(bargmann_inner(f, f).real)


def pair_embed(phi: FockPolynomial, psi: FockPolynomial) -> FockPolynomial:
    """phi(w) * conj-coefficient psi evaluated at i z, in variables u = (z, w)."""
    if phi.n != psi.n:
        raise ValidationError("dimension mismatch")
    out: dict[MultiIndex, complex] = {}
    for a, c in phi.terms.items():
        for b, d in psi.terms.items():
            e = tuple(b) + tuple(a)
            out[e] = out.get(e, 0) + c * np.conj(d) * 1j ** sum(b)
    return FockPolynomial(2 * phi.n, out)


@lru_cache(maxsize=None)
def _exp_quadratic_coefficient(alpha: MultiIndex) -> tuple[tuple[tuple[tuple[int, int], ...], float], ...]:
    """Coefficient of u^alpha in exp(u^T s u / 4) as a polynomial in the entries s_ij (i <= j).

    Returned as ((((i, j), power), ...), rational value) pairs; empty for odd degree.
    """
    nvar, deg = len(alpha), sum(alpha)
    if deg % 2:
        return ()
    k = deg // 2
    pairs = [(i, j) for i in range(nvar) for j in range(i, nvar)]
    # (u exponent, s-monomial exponent vector) -> coefficient of (u^T s u / 4)^k
    layer: dict[MultiIndex, dict[MultiIndex, Fraction]] = {(0,) * nvar: {(0,) * len(pairs): Fraction(1)}}
    for _ in range(k):
        nxt: dict[MultiIndex, dict[MultiIndex, Fraction]] = {}
        for uexp, smonos in layer.items():
            for pi, (i, j) in enumerate(pairs):
                e = list(uexp)
                e[i] += 1
                e[j] += 1
                if any(e[t] > alpha[t] for t in (i, j)):
                    continue
                weight = Fraction(1, 4) if i == j else Fraction(1, 2)
                bucket = nxt.setdefault(tuple(e), {})
                for sm, v in smonos.items():
                    sm2 = list(sm)
                    sm2[pi] += 1
                    key = tuple(sm2)
                    bucket[key] = bucket.get(key, Fraction(0)) + v * weight
        layer = nxt
    # (u^T s u)^k / k! -- the sequential products above count ordered choices
    result = layer.get(tuple(alpha), {})
    out = []
    for sm, v in result.items():
        powers = tuple((pairs[p], e) for p, e in enumerate(sm) if e)
        out.append((powers, float(v / math.factorial(k))))
    return tuple(out)


def gaussian_pairing(f: FockPolynomial, s: np.ndarray) -> np.ndarray:
    """W(f)(s) = integral of exp(ubar^T s ubar / 4) f(u) against the Gaussian measure.

    Closed form: W(u^a)(s) = 2^|a| a! [u^a] exp(u^T s u / 4). s may be any
    complex symmetric matrix, or a stack of them.
    """
    s = np.asarray(s, dtype=complex)
    if s.shape[-1] != f.n or s.shape[-2] != f.n:
        raise ValidationError(f"s must be {f.n}x{f.n}")
    out = np.zeros(s.shape[:-2], dtype=complex)
    for alpha, c in f.terms.items():
        table = _exp_quadratic_coefficient(alpha)
        if not table:
            continue
        acc = np.zeros(s.shape[:-2], dtype=complex)
        for powers, v in table:
            term = np.full(s.shape[:-2], v, dtype=complex)
            for (i, j), e in powers:
                term = term * s[..., i, j] ** e
            acc += term
        out += c * _norm_sq(alpha) * acc
    return out if out.ndim else complex(out)


def coefficient_on_s(phi: FockPolynomial, psi: FockPolynomial, s: np.ndarray) -> np.ndarray:
    """The matrix coefficient divided by its lift, as a function of s = H(g)."""
    return gaussian_pairing(pair_embed(phi, psi), s)


def matrix_coefficient(phi: FockPolynomial, psi: FockPolynomial, m: MetaplecticElement) -> complex:
    """(omega(m) phi, psi) = lam * W(j(phi (x) psi))(H(g))."""
    if phi.n != m.n or psi.n != m.n:
        raise ValidationError("vector and group dimensions differ")
    f = kak_decompose(m.g)
    s = compactify_coords(f.k1, f.lambdas, f.k2)
    return complex(m.lam * coefficient_on_s(phi, psi, s))


def tensor_from_parts(p: int, q: int, values: Sequence[np.ndarray]) -> np.ndarray:
    """Product of the first p values times the conjugates of the last q."""
    if len(values) != p + q:
        raise ValidationError(f"expected {p + q} factors, got {len(values)}")
    out = np.ones(np.shape(values[0]) if len(values) else (), dtype=complex)
    for i, v in enumerate(values):
        out = out * (v if i < p else np.conj(v))
    return out


def tensor_matrix_coefficient(p: int, q: int, pairs: Sequence[tuple[FockPolynomial, FockPolynomial]],
                              m: MetaplecticElement) -> complex:
    """Coefficient of omega^p (x) (omega^c)^q on the pure tensor built from pairs."""
    if len(pairs) != p + q:
        raise ValidationError(f"expected {p + q} vector pairs, got {len(pairs)}")
    return complex(tensor_from_parts(p, q, [matrix_coefficient(a, b, m) for a, b in pairs]))


def monomials(n: int, max_degree: int) -> Iterable[FockPolynomial]:
    for d in range(max_degree + 1):
        for alpha in itertools.product(range(d + 1), repeat=n):
            if sum(alpha) == d:
                yield FockPolynomial.monomial(alpha)
