import math

import numpy as np
import pytest
from scipy.special import beta

from metaplectic.errors import QuadratureError
from metaplectic.fock import FockPolynomial, fock_norm, matrix_coefficient
from metaplectic.oracle import (HermiteConfig, bound_constant, coefficient_bound, oracle_coefficient,
                                oscillator_apply_oracle, weighted_norm)
from metaplectic.symplectic import MetaplecticElement, lift

from helpers import random_group_element

mono = FockPolynomial.monomial


def test_oracle_identity():
    m = MetaplecticElement(1.0, np.eye(2))
    assert abs(oracle_coefficient(mono((0,)), mono((0,)), m) - 1) < 1e-8


def test_oracle_matches_closed_form_diagonal():
    m = lift(np.diag([np.e, 1 / np.e]))
    z = mono((1,))
    assert abs(oracle_coefficient(z, z, m) - matrix_coefficient(z, z, m)) < 1e-6


def test_oracle_matches_closed_form_random(rng):
    for _ in range(3):
        m = lift(random_group_element(1, rng, scale=2.0))
        phi = FockPolynomial(1, {(0,): 0.5, (2,): 1j, (3,): 0.25})
        psi = FockPolynomial(1, {(1,): 1, (2,): -0.3})
        o, c = oracle_coefficient(phi, psi, m), matrix_coefficient(phi, psi, m)
        assert abs(o - c) <= 1e-8 * max(1.0, abs(c))


def test_oracle_n2_small():
    rng = np.random.default_rng(8)
    m = lift(random_group_element(2, rng, scale=0.5))
    phi, psi = mono((1, 0)), mono((0, 1))
    cfg = HermiteConfig(nodes=10, check_nodes=8, tolerance=1e-6)
    assert abs(oracle_coefficient(phi, psi, m, cfg) - matrix_coefficient(phi, psi, m)) < 1e-6


def test_oracle_reports_nonconvergence():
    m = lift(np.diag([np.exp(3.0), np.exp(-3.0)]))
    with pytest.raises(QuadratureError):
        oracle_coefficient(mono((4,)), mono((4,)), m, HermiteConfig(nodes=6, check_nodes=4))


@pytest.mark.parametrize("t", [0.2, 0.8])
def test_unitarity_probe(t):
    m = lift(np.diag([np.exp(t), np.exp(-t)]))
    img = oscillator_apply_oracle(m, mono((1,)), HermiteConfig(nodes=80))
    assert abs(img.norm_sq() - 2) < 1e-8


def test_bound_constant_closed_form():
    for n in (1, 2, 3):
        closed = (2 * math.pi) ** (-n) * 2 * math.pi**n / math.gamma(n) * beta(2 * n, 2)
        assert math.isclose(bound_constant(n), closed, rel_tol=1e-10)


def test_weighted_norm_reduces_to_fock_norm():
    f = FockPolynomial(2, {(1, 0): 1, (2, 1): 0.5j, (0, 0): 2})
    assert math.isclose(weighted_norm(f, 0), fock_norm(f), rel_tol=1e-10)


def test_bound_examples(rng):
    one, z = mono((0,)), mono((1,))
    assert coefficient_bound(one, one) >= 1
    assert 0 < coefficient_bound(mono((2,)), one) < np.inf
    b = coefficient_bound(z, z)
    for _ in range(100):
        m = lift(random_group_element(1, rng, scale=4.0))
        assert abs(matrix_coefficient(z, z, m)) <= b * abs(m.lam)
