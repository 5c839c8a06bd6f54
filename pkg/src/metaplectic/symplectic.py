"""Real symplectic matrices, the compact subgroup U(n), KAK factorization,
the Cayley block and the square-root function on the double cover.

Conventions: J = [[0, I], [-I, 0]] and a unitary k acts on R^{2n} through
``embed_unitary(k) = [[Re k, Im k], [-Im k, Re k]]`` so that ``embed(i) = J``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DecompositionError, ValidationError

TOL_GROUP = 1e-9


def standard_form(n: int) -> np.ndarray:
    """The matrix J of the symplectic form u^T J v."""
    z, e = np.zeros((n, n)), np.eye(n)
    return np.block([[z, e], [-e, z]])


def _half(a: np.ndarray) -> int:
    a = np.asarray(a)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] % 2:
        raise ValidationError(f"expected a square matrix of even size, got shape {a.shape}")
    return a.shape[-1] // 2


def is_unitary(k: np.ndarray, tol: float = TOL_GROUP) -> bool:
    k = np.asarray(k)
    if k.ndim != 2 or k.shape[0] != k.shape[1]:
        return False
    return bool(np.abs(k.conj().T @ k - np.eye(k.shape[0])).max() <= tol)


def is_symplectic(g: np.ndarray, tol: float = TOL_GROUP) -> bool:
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2 or np.iscomplexobj(g):
        return False
    j = standard_form(g.shape[0] // 2)
    scale = max(1.0, np.abs(g).max() ** 2)
    return bool(np.abs(g.T @ j @ g - j).max() <= tol * scale)


def check_symplectic(g, tol: float = TOL_GROUP) -> np.ndarray:
    g = np.asarray(g)
    if np.iscomplexobj(g):
        if np.abs(g.imag).max() > tol:
            raise ValidationError("symplectic matrix must be real")
        g = g.real
    g = g.astype(float)
    _half(g)
    if not is_symplectic(g, tol):
        raise ValidationError("matrix does not satisfy g^T J g = J within tolerance")
    return g


def embed_unitary(k: np.ndarray, tol: float = TOL_GROUP, check: bool = True) -> np.ndarray:
    """Real 2n x 2n image of an n x n unitary (works on stacks when check=False)."""
    k = np.asarray(k, dtype=complex)
    if check and not is_unitary(k, tol):
        raise ValidationError("embed_unitary requires a unitary matrix")
    re, im = k.real, k.imag
    top = np.concatenate([re, im], axis=-1)
    bot = np.concatenate([-im, re], axis=-1)
    return np.concatenate([top, bot], axis=-2)


def split_exp(lambdas: np.ndarray) -> np.ndarray:
    """exp(diag(lambda, -lambda))."""
    lam = np.asarray(lambdas, dtype=float)
    return np.diag(np.concatenate([np.exp(lam), np.exp(-lam)]))


@dataclass(frozen=True)
class CartanFactorization:
    """g = embed(k1) exp(diag(lambdas, -lambdas)) embed(k2), lambdas non-increasing."""

    k1: np.ndarray
    lambdas: np.ndarray
    k2: np.ndarray

    @property
    def n(self) -> int:
        return len(self.lambdas)

    def reassemble(self) -> np.ndarray:
        return embed_unitary(self.k1, check=False) @ split_exp(self.lambdas) @ embed_unitary(self.k2, check=False)

    def validate(self, tol: float = TOL_GROUP) -> None:
        lam = np.asarray(self.lambdas)
        if lam.ndim != 1 or np.any(lam < -tol) or np.any(np.diff(lam) > tol):
            raise ValidationError("lambdas must be non-negative and non-increasing")
        if not (is_unitary(self.k1, tol) and is_unitary(self.k2, tol)):
            raise ValidationError("k1 and k2 must be unitary")
        if self.k1.shape != (self.n, self.n) or self.k2.shape != (self.n, self.n):
            raise ValidationError("factor shapes do not match the number of lambdas")


def _symplectic_gram_schmidt(v: np.ndarray, basis: list[np.ndarray], j: np.ndarray) -> np.ndarray:
    # remove the components along x and Jx for every accepted x
    for x in basis:
        jx = j @ x
        v = v - (x @ v) * x - (jx @ v) * jx
    return v


def kak_decompose(g: np.ndarray, tol: float = TOL_GROUP, zero_tol: float = 1e-10) -> CartanFactorization:
    """KAK factorization of a real symplectic matrix.

    The right singular vectors of g belonging to the n largest singular
    values span a Lagrangian subspace when those values exceed 1; they are
    made J-orthonormal and completed inside the unit-singular-value cluster.
    """
    g = check_symplectic(g, tol)
    n = g.shape[0] // 2
    j = standard_form(n)
    _, sv, vt = np.linalg.svd(g)
    logs = np.log(sv)
    vecs = vt.T
    m = int(np.sum(logs[:n] > zero_tol))

    basis: list[np.ndarray] = []
    for col in range(m):
        v = _symplectic_gram_schmidt(vecs[:, col], basis, j)
        basis.append(v / np.linalg.norm(v))
    cluster = [vecs[:, col] for col in range(m, 2 * n - m)]
    for _ in range(n - m):
        cands = [_symplectic_gram_schmidt(c, basis, j) for c in cluster]
        norms = [np.linalg.norm(c) for c in cands]
        best = int(np.argmax(norms))
        basis.append(cands[best] / norms[best])

    x = np.array(basis).T
    lam = np.concatenate([logs[:m], np.zeros(n - m)])
    image = (g @ x) * np.exp(-lam)
    k1 = image[:n] - 1j * image[n:]
    k2 = (x[:n] - 1j * x[n:]).conj().T
    fac = CartanFactorization(k1, lam, k2)

    scale = max(1.0, np.abs(g).max())
    resid = np.abs(fac.reassemble() - g).max() / scale
    if not np.isfinite(resid) or resid > tol:
        raise DecompositionError(f"KAK reassembly residual {resid:.3e} exceeds {tol:.1e}")
    return fac


def cayley_block(g: np.ndarray) -> np.ndarray:
    """(A + D)/2 + i (B - C)/2 for g = [[A, B], [C, D]]; accepts stacks."""
    g = np.asarray(g)
    n = _half(g)
    a, b = g[..., :n, :n], g[..., :n, n:]
    c, d = g[..., n:, :n], g[..., n:, n:]
    return (a + d) / 2 + 1j * (b - c) / 2


def lambda_squared(g: np.ndarray) -> complex:
    """det(C_g)^{-1}; its modulus equals prod sech(lambda_i)."""
    return 1.0 / np.linalg.det(cayley_block(g))


@dataclass(frozen=True)
class MetaplecticElement:
    """A point (lam, g) of the double cover, lam^2 det C_g = 1."""

    lam: complex
    g: np.ndarray

    @property
    def n(self) -> int:
        return self.g.shape[0] // 2

    def validate(self, tol: float = TOL_GROUP) -> None:
        check_symplectic(self.g, tol)
        if abs(self.lam**2 * np.linalg.det(cayley_block(self.g)) - 1) > tol:
            raise ValidationError("lam^2 det(C_g) != 1")

    def flipped(self) -> "MetaplecticElement":
        return MetaplecticElement(-self.lam, self.g)


def principal_sqrt(z):
    """Square root with argument in (-pi/2, pi/2]."""
    r = np.sqrt(np.asarray(z, dtype=complex))
    # numpy's branch cut puts arg(-x) = +pi/2 for x>0 only with +0j imaginary part
    flip = (r.real == 0) & (r.imag < 0)
    return np.where(flip, -r, r)


def metaplectic_lifts(g: np.ndarray, tol: float = TOL_GROUP) -> tuple[MetaplecticElement, MetaplecticElement]:
    g = check_symplectic(g, tol)
    lam = complex(principal_sqrt(lambda_squared(g)))
    return MetaplecticElement(lam, g), MetaplecticElement(-lam, g)


def lift(g: np.ndarray, sign: int = 1, tol: float = TOL_GROUP) -> MetaplecticElement:
    if sign not in (1, -1):
        raise ValidationError("lift sign must be +1 or -1")
    first, second = metaplectic_lifts(g, tol)
    return first if sign == 1 else second


def random_symplectic(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """embed(u1) exp(diag(mu, -mu)) embed(u2) with Haar u's and mu ~ U[0, scale]."""
    from .quadrature import haar_unitary

    mu = rng.uniform(0, scale, n)
    return embed_unitary(haar_unitary(n, rng), check=False) @ split_exp(mu) @ embed_unitary(haar_unitary(n, rng), check=False)
