import numpy as np
import pytest
from hypothesis import given, strategies as st

from metaplectic.compactification import compactify_matrix
from metaplectic.errors import ValidationError
from metaplectic.fock import (FockPolynomial, bargmann_inner, gaussian_pairing, matrix_coefficient, monomials,
                              pair_embed, tensor_matrix_coefficient)
from metaplectic.quadrature import haar_unitary
from metaplectic.symplectic import MetaplecticElement, lift

from helpers import random_group_element

seeds = st.integers(0, 2**32 - 1)
mono = FockPolynomial.monomial


def random_symmetric_unitary(n2, rng):
    u = haar_unitary(n2, rng)
    return u @ u.T


def test_polynomial_drops_zero_terms():
    f = FockPolynomial(1, {(1,): 0, (2,): 3})
    assert f.terms == {(2,): 3}
    assert f.degree == 2
    with pytest.raises(ValidationError):
        FockPolynomial(2, {(1,): 1})


def test_inner_product_table():
    assert bargmann_inner(mono((0,)), mono((0,))) == 1
    assert bargmann_inner(mono((2,)), mono((2,))) == 8
    assert bargmann_inner(mono((1,)), mono((2,))) == 0
    assert bargmann_inner(mono((1, 2)), mono((1, 2))) == 2**3 * 1 * 2


def test_inner_product_sesquilinear():
    f = FockPolynomial(1, {(0,): 1, (1,): 2j})
    h = FockPolynomial(1, {(1,): 1 - 1j})
    assert np.isclose(bargmann_inner(1j * f, h), 1j * bargmann_inner(f, h))
    assert np.isclose(bargmann_inner(f, 1j * h), -1j * bargmann_inner(f, h))
    assert np.isclose(bargmann_inner(f, h), np.conj(bargmann_inner(h, f)))


def test_pair_embed_examples():
    one = mono((0,))
    assert pair_embed(one, one).terms == {(0, 0): 1}
    assert pair_embed(mono((1,)), mono((1,))).terms == {(1, 1): 1j}
    assert pair_embed(one, mono((2,))).terms == {(2, 0): -1}
    # conjugate-linear in the second slot
    assert pair_embed(one, 1j * mono((1,))).terms == {(1, 0): 1}


def test_gaussian_pairing_low_degree(rng):
    s = random_symmetric_unitary(2, rng)
    assert gaussian_pairing(FockPolynomial.constant(2), s) == 1
    for i in range(2):
        for j in range(2):
            alpha = [0, 0]
            alpha[i] += 1
            alpha[j] += 1
            assert np.isclose(gaussian_pairing(mono(alpha), s), 2 * s[i, j])
        alpha = [0, 0]
        alpha[i] = 1
        assert gaussian_pairing(mono(alpha), s) == 0


@given(seeds, st.integers(1, 4), st.integers(0, 6))
def test_odd_degree_is_exactly_zero(seed, nvars, half):
    rng = np.random.default_rng(seed)
    alpha = list(rng.multinomial(2 * half + 1, np.ones(nvars) / nvars))
    s = rng.standard_normal((nvars, nvars)) + 1j * rng.standard_normal((nvars, nvars))
    assert gaussian_pairing(mono(alpha), s + s.T) == 0


def test_quartic_moment():
    # W(u1^4) = 2^4 4! (s11/4)^2 / 2! = 12 s11^2
    s = np.array([[0.3 + 0.1j, 0.2], [0.2, -0.5j]])
    assert np.isclose(gaussian_pairing(mono((4, 0)), s), 12 * s[0, 0] ** 2)
    # W(u1^2 u2^2) = 2^4 2! 2! (s11 s22 / 16 + s12^2 / 8)
    assert np.isclose(gaussian_pairing(mono((2, 2)), s), 4 * s[0, 0] * s[1, 1] + 8 * s[0, 1] ** 2)


@given(seeds, st.integers(0, 6))
def test_equivariance_under_unitary(seed, deg):
    rng = np.random.default_rng(seed)
    g = haar_unitary(2, rng)
    s = random_symmetric_unitary(2, rng)
    alpha = rng.multinomial(deg, [0.5, 0.5])
    f = mono(alpha)
    gi = np.linalg.inv(g)
    lhs = gaussian_pairing(f, gi @ s @ gi.T)
    rhs = gaussian_pairing(f.substitute(gi), s)
    assert abs(lhs - rhs) < 1e-9


@given(seeds, st.integers(0, 3), st.floats(0, 2 * np.pi))
def test_scalar_phase(seed, half, phi):
    rng = np.random.default_rng(seed)
    m = 2 * half
    s = random_symmetric_unitary(2, rng)
    for f in monomials(2, m):
        if f.degree == m:
            lhs = gaussian_pairing(f, np.exp(2j * phi) * s)
            assert abs(lhs - np.exp(1j * m * phi) * gaussian_pairing(f, s)) < 1e-10


def test_batched_pairing(rng):
    stack = np.stack([random_symmetric_unitary(2, rng) for _ in range(4)])
    f = FockPolynomial(2, {(2, 0): 1, (1, 1): 2j, (0, 4): 0.5})
    batch = gaussian_pairing(f, stack)
    assert np.allclose(batch, [gaussian_pairing(f, s) for s in stack])


def test_coefficient_of_constants(rng):
    g = random_group_element(1, rng)
    m = lift(g)
    one = mono((0,))
    assert np.isclose(matrix_coefficient(one, one, m), m.lam)


@pytest.mark.parametrize("n", [1, 2])
def test_identity_reproduces_inner_product(n):
    m = MetaplecticElement(1.0, np.eye(2 * n))
    vecs = list(monomials(n, 3)) + [FockPolynomial(n, {(0,) * n: 1, (2,) + (0,) * (n - 1): 1j})]
    for a in vecs:
        for b in vecs:
            assert np.isclose(matrix_coefficient(a, b, m), bargmann_inner(a, b), atol=1e-12)


def test_coefficient_z_z_diagonal():
    t = 0.7
    m = lift(np.diag([np.exp(t), np.exp(-t)]))
    z = mono((1,))
    expect = np.sqrt(1 / np.cosh(t)) * 2 / np.cosh(t)
    assert np.isclose(matrix_coefficient(z, z, m), expect)


def test_tensor_coefficients(rng):
    g = random_group_element(1, rng)
    m = lift(g)
    one, z = mono((0,)), mono((1,))
    assert np.isclose(tensor_matrix_coefficient(1, 0, [(z, z)], m), matrix_coefficient(z, z, m))
    assert np.isclose(tensor_matrix_coefficient(0, 1, [(one, one)], m), np.conj(m.lam))
    assert np.isclose(tensor_matrix_coefficient(1, 1, [(one, one)] * 2, m), abs(m.lam) ** 2)
    assert np.isclose(abs(m.lam) ** 2, 1 / np.cosh(np.log(np.linalg.svd(g)[1][0])))
    with pytest.raises(ValidationError):
        tensor_matrix_coefficient(1, 1, [(one, one)], m)


@given(seeds)
def test_contragredient_is_conjugate(seed):
    rng = np.random.default_rng(seed)
    m = lift(random_group_element(1, rng))
    f, h = mono((2,)), FockPolynomial(1, {(0,): 1, (2,): 1j})
    assert np.isclose(tensor_matrix_coefficient(0, 1, [(f, h)], m), np.conj(tensor_matrix_coefficient(1, 0, [(f, h)], m)))


@given(seeds)
def test_lift_sign_flips_coefficient(seed):
    rng = np.random.default_rng(seed)
    g = random_group_element(1, rng)
    f = mono((1,))
    assert np.isclose(matrix_coefficient(f, f, lift(g, -1)), -matrix_coefficient(f, f, lift(g, 1)))


def test_substitute():
    f = FockPolynomial(2, {(1, 1): 1})
    a = np.array([[1, 1], [0, 2]])
    # (u1 + u2) * 2 u2
    assert f.substitute(a).allclose(FockPolynomial(2, {(1, 1): 2, (0, 2): 2}))


def test_evaluate():
    f = FockPolynomial(2, {(1, 0): 2, (0, 2): 1j})
    z = np.array([[1.0, 2.0], [1j, 0.0]])
    assert np.allclose(f(z), [2 + 4j, 2j])


def test_square_free_monomial_is_a_hafnian():
    # each perfect matching contributes (s_ij / 2)(s_kl / 2), times 2^4
    rng = np.random.default_rng(3)
    s = random_symmetric_unitary(4, rng)
    haf = s[0, 1] * s[2, 3] + s[0, 2] * s[1, 3] + s[0, 3] * s[1, 2]
    assert np.isclose(gaussian_pairing(mono((1, 1, 1, 1)), s), 4 * haf)
