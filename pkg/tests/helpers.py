import numpy as np

from metaplectic.quadrature import haar_unitary
from metaplectic.symplectic import embed_unitary, split_exp


def build(n, rng, mu):
    """embed(u1) exp(diag(mu, -mu)) embed(u2) with Haar u's; returns (g, u1, u2)."""
    u1, u2 = haar_unitary(n, rng), haar_unitary(n, rng)
    g = embed_unitary(u1, check=False) @ split_exp(mu) @ embed_unitary(u2, check=False)
    return g, u1, u2


def random_group_element(n, rng, scale=2.0, degenerate=False):
    mu = rng.uniform(0, scale, n)
    if degenerate and n > 1:
        mu[1:] = mu[0]
    return build(n, rng, mu)[0]
