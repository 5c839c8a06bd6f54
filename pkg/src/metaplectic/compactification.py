"""The embedding of Sp(n, R) into symmetric unitary matrices S_2n and the
coordinates, densities and identities that live on S_2n."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import sqrtm

from .errors import DecompositionError, ValidationError
from .symplectic import TOL_GROUP, CartanFactorization


def is_symmetric_unitary(s: np.ndarray, tol: float = TOL_GROUP) -> bool:
    s = np.asarray(s)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
        return False
    eye = np.eye(s.shape[0])
    return bool(np.abs(s - s.T).max() <= tol and np.abs(s @ s.conj().T - eye).max() <= tol)


def check_symmetric_unitary(s, tol: float = TOL_GROUP) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    if not is_symmetric_unitary(s, tol):
        raise ValidationError("matrix is not a symmetric unitary of even size")
    return s


def torus_point(thetas: np.ndarray) -> np.ndarray:
    """[[cos t, -i sin t], [-i sin t, cos t]] with diagonal blocks; stacks over leading axes."""
    th = np.asarray(thetas, dtype=float)
    return _block_torus(np.cos(th).astype(complex), -1j * np.sin(th))


def _block_torus(diag: np.ndarray, off: np.ndarray) -> np.ndarray:
    n = diag.shape[-1]
    out = np.zeros(diag.shape[:-1] + (2 * n, 2 * n), dtype=complex)
    idx = np.arange(n)
    out[..., idx, idx] = diag
    out[..., idx + n, idx + n] = diag
    out[..., idx, idx + n] = off
    out[..., idx + n, idx] = off
    return out


def tau_action(k1: np.ndarray, k2: np.ndarray, s: np.ndarray) -> np.ndarray:
    """diag(k1, k2) s diag(k1, k2)^T; broadcasts over leading axes."""
    k1, k2, s = np.asarray(k1), np.asarray(k2), np.asarray(s)
    n = k1.shape[-1]
    a, b = s[..., :n, :n], s[..., :n, n:]
    c, d = s[..., n:, :n], s[..., n:, n:]
    k1t, k2t = np.swapaxes(k1, -1, -2), np.swapaxes(k2, -1, -2)
    top = np.concatenate([k1 @ a @ k1t, k1 @ b @ k2t], axis=-1)
    bot = np.concatenate([k2 @ c @ k1t, k2 @ d @ k2t], axis=-1)
    return np.concatenate([top, bot], axis=-2)


def compactify_coords(k1: np.ndarray, lambdas: np.ndarray, k2: np.ndarray) -> np.ndarray:
    """Image of embed(k1) exp(diag(l, -l)) embed(k2) in S_2n, vectorized.

    Equal to diag(conj k1, k2^H) T(l) diag(k1^{-1}, conj k2) with
    T = [[tanh, -i sech], [-i sech, tanh]]; since k1^{-1} = k1^H this is
    tau(conj k1, k2^H) applied to T.
    """
    lam = np.asarray(lambdas, dtype=float)
    mid = _block_torus(np.tanh(lam).astype(complex), -1j / np.cosh(lam))
    k1 = np.asarray(k1, dtype=complex)
    k2 = np.asarray(k2, dtype=complex)
    return tau_action(k1.conj(), np.swapaxes(k2.conj(), -1, -2), mid)


def compactify(f: CartanFactorization, tol: float = TOL_GROUP) -> np.ndarray:
    f.validate(tol)
    return compactify_coords(f.k1, f.lambdas, f.k2)


def compactify_matrix(g: np.ndarray, tol: float = TOL_GROUP) -> np.ndarray:
    from .symplectic import kak_decompose

    return compactify(kak_decompose(g, tol), tol)


@dataclass(frozen=True)
class GeneralizedCartanFactorization:
    """s = tau(h1, h2, torus_point(thetas)), sin(thetas) non-increasing."""

    h1: np.ndarray
    thetas: np.ndarray
    h2: np.ndarray

    def reassemble(self) -> np.ndarray:
        return tau_action(self.h1, self.h2, torus_point(self.thetas))


def _clusters(vals: np.ndarray, tol: float) -> list[slice]:
    out, i = [], 0
    while i < len(vals):
        j = i + 1
        while j < len(vals) and abs(vals[j] - vals[j - 1]) <= tol:
            j += 1
        out.append(slice(i, j))
        i = j
    return out


def _polar_unitary(a: np.ndarray) -> np.ndarray:
    x, _, yh = np.linalg.svd(a)
    return x @ yh


def takagi(m: np.ndarray, cluster_tol: float = 1e-9, zero_tol: float = 1e-13) -> tuple[np.ndarray, np.ndarray]:
    """Unitary w and sigma >= 0 (descending) with m = w diag(sigma) w^T for symmetric m."""
    m = (m + m.T) / 2
    x, sv, yh = np.linalg.svd(m)
    y = yh.conj().T
    w = np.zeros_like(x)
    for b in _clusters(sv, cluster_tol):
        xb, yb = x[:, b], y[:, b]
        if sv[b].max() <= zero_tol:
            w[:, b] = xb
            continue
        # on a singular cluster conj(y) = x z with z symmetric unitary; w = x z^{1/2}
        z = xb.conj().T @ yb.conj()
        z = (z + z.T) / 2
        w[:, b] = xb @ _polar_unitary(sqrtm(z))
    return w, sv


def _column_signs(h: np.ndarray) -> np.ndarray:
    # +-1 per column so that the leading nonzero entry has non-negative real part
    lead = np.argmax(np.abs(h) > 1e-8, axis=0)
    vals = h[lead, np.arange(h.shape[1])]
    return np.where(vals.real < 0, -1.0, 1.0)


def gc_decompose(s: np.ndarray, tol: float = TOL_GROUP) -> GeneralizedCartanFactorization:
    """Generalized Cartan coordinates of a symmetric unitary matrix.

    sin(theta) and the column spaces come from the SVD of i s12; within each
    cluster of equal sines the phases are fixed by a Takagi factorization of
    the compressed s11 block, and cos(theta) is read off from it.
    """
    s = check_symmetric_unitary(s, max(tol, 1e-8))
    n = s.shape[0] // 2
    s11, s12, s22 = s[:n, :n], s[:n, n:], s[n:, n:]
    u, sv, vh = np.linalg.svd(1j * s12)
    v = vh.conj().T
    h1 = np.zeros((n, n), dtype=complex)
    h2 = np.zeros((n, n), dtype=complex)
    thetas = np.zeros(n)
    for b in _clusters(sv, tol):
        ub, vb = u[:, b], v[:, b]
        w1, c = takagi(ub.conj().T @ s11 @ ub.conj(), tol)
        # pair the smallest cosine with the largest sine inside a cluster
        w1, c = w1[:, ::-1], c[::-1]
        h1[:, b] = ub @ w1
        if sv[b].max() <= tol:
            w2, _ = takagi(vb.T @ s22 @ vb, tol)
            h2[:, b] = vb.conj() @ w2[:, ::-1]
        else:
            h2[:, b] = (vb @ w1).conj()
        thetas[b] = np.arctan2(sv[b], c)
    # flipping matching columns of h1 and h2 together leaves s unchanged
    signs = _column_signs(h1)
    fac = GeneralizedCartanFactorization(h1 * signs, thetas, h2 * signs)
    resid = np.abs(fac.reassemble() - s).max()
    if resid > tol:
        raise DecompositionError(f"generalized Cartan reassembly residual {resid:.3e} exceeds {tol:.1e}")
    return fac


def det12(s: np.ndarray) -> complex:
    """Determinant of the upper-right n x n block; accepts stacks."""
    s = np.asarray(s)
    n = s.shape[-1] // 2
    return np.linalg.det(s[..., :n, n:])


def sp_density(lambdas: np.ndarray) -> np.ndarray:
    """|prod_{i>j} sinh(l_i - l_j) sinh(l_i + l_j) prod_i sinh(2 l_i)|; last axis is the index."""
    lam = np.asarray(lambdas, dtype=float)
    n = lam.shape[-1]
    out = np.prod(np.sinh(2 * lam), axis=-1)
    for i in range(n):
        for j in range(i):
            out = out * np.sinh(lam[..., i] - lam[..., j]) * np.sinh(lam[..., i] + lam[..., j])
    return np.abs(out)


def s2n_density(thetas: np.ndarray) -> np.ndarray:
    """|prod_{i>j} (cos 2t_i - cos 2t_j)| |prod_i cos t_i|, normalizing constant 1."""
    th = np.asarray(thetas, dtype=float)
    n = th.shape[-1]
    out = np.prod(np.cos(th), axis=-1)
    for i in range(n):
        for j in range(i):
            out = out * (np.cos(2 * th[..., i]) - np.cos(2 * th[..., j]))
    return np.abs(out)


def jacobian_u2n_density(thetas: np.ndarray) -> np.ndarray:
    """|prod_{i>j} (cos 4t_i - cos 4t_j)| |prod_i cos 2t_i|; equals s2n_density(2 t)."""
    th = np.asarray(thetas, dtype=float)
    n = th.shape[-1]
    out = np.prod(np.cos(2 * th), axis=-1)
    for i in range(n):
        for j in range(i):
            out = out * (np.cos(4 * th[..., i]) - np.cos(4 * th[..., j]))
    return np.abs(out)


def sech_weight(lambdas: np.ndarray, power: int) -> np.ndarray:
    if power < 0:
        raise ValidationError("power must be non-negative")
    lam = np.asarray(lambdas, dtype=float)
    return np.prod(1.0 / np.cosh(lam), axis=-1) ** power


def ratio_pushforward(q: int, s: np.ndarray) -> np.ndarray:
    """The function on S_2n whose pull-back is (conj(Lambda)/Lambda)^q.

    Because conj(Lambda^2)/Lambda^2 = det(s)^{-1}, this is (det s^{-1})^{q/2};
    q even keeps it single valued.
    """
    if q % 2:
        raise ValidationError("q must be even")
    return (1.0 / np.linalg.det(np.asarray(s))) ** (q // 2)


def angles_from_lambdas(lambdas: np.ndarray) -> np.ndarray:
    """theta with cos(theta) = tanh(lambda) and sin(theta) = sech(lambda)."""
    lam = np.asarray(lambdas, dtype=float)
    return np.arctan2(1.0 / np.cosh(lam), np.tanh(lam))

