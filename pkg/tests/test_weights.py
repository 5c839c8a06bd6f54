import pytest
from hypothesis import given, strategies as st

from metaplectic.errors import ValidationError
from metaplectic.weights import (SCHEMES, as_weight, assign_block, block_signature, candidate_blocks, certify, dual,
                                 even_dominant_weights, in_Spq, in_Spq_greedy, is_spherical, kv_parameters)


@st.composite
def even_weights(draw, max_n=3, bound=12):
    n = draw(st.integers(1, max_n))
    vals = draw(st.lists(st.integers(-bound // 2, bound // 2), min_size=2 * n, max_size=2 * n))
    return tuple(sorted((2 * v for v in vals), reverse=True))


def test_spherical():
    assert is_spherical((0, 0))
    assert is_spherical((2, -2)) and not is_spherical((1, 0))
    assert is_spherical((4, 2, 0, -2))
    with pytest.raises(ValidationError):
        is_spherical((0, 2))


def test_membership_examples():
    assert all(in_Spq((0, 0, 0, 0), 0, q) for q in range(7))
    assert in_Spq((2, 0), 1, 1)
    assert not in_Spq((2, 0), 0, 3)
    assert in_Spq((0, -2), 2, 1)
    assert not in_Spq((2, -2), 1, 0)


@given(even_weights(), st.integers(0, 7), st.integers(0, 7))
def test_greedy_matches_union(lam, p, q):
    assert in_Spq_greedy(lam, p, q) == in_Spq(lam, p, q)


def test_assign_examples():
    assert assign_block((0, 0), "odd-cover:+p").p == 0
    assert assign_block((0, 0, 0, 0), "odd-cover:+p").p == 0
    b = assign_block((2, 0), "odd-cover:+p")
    assert (b.p, b.q, b.shift) == (2, 1, 2)
    assert assign_block((4, 2), "half-cover:+2p").p == 1


@given(even_weights())
def test_every_scheme_has_exactly_one_block(lam):
    for scheme in SCHEMES:
        assert len(candidate_blocks(lam, scheme)) == 1
        assert candidate_blocks(lam, scheme) == candidate_blocks(lam, scheme, greedy=True)


@given(even_weights())
def test_duality_between_schemes(lam):
    a = assign_block(lam, "odd-cover:-p")
    b = assign_block(dual(lam), "odd-cover:+p")
    assert (a.p, a.q) == (b.p, b.q)
    c = assign_block(lam, "even-cover:+q")
    d = assign_block(dual(lam), "even-cover:-q")
    assert (c.p, c.q) == (d.p, d.q)


def test_literal_shift_reading_is_not_unique_at_zero():
    # lam - p in S_{p,q} with the shift subtracted: both p = 0 and p = 2n contain 0
    for n in (1, 2, 3):
        N = 2 * n
        hits = [p for p in range(0, N + 1, 2) if in_Spq(tuple([p] * N), p, N + 1 - p)]
        assert hits == [0, N]


def test_assign_rejects_odd_weights():
    with pytest.raises(ValidationError):
        assign_block((1, 0), "odd-cover:+p")
    with pytest.raises(ValidationError):
        assign_block((0, 0), "no-such-scheme")


def test_signature():
    assert block_signature((0, 0))[0] == 0
    assert block_signature((2, 0))[0] == 2
    n = 2
    big = (4 * n + 2,) * (2 * n)
    pe, qe, po, qo = block_signature(big)
    assert pe == 2 * n and po == 2 * n + 1
    assert pe + qe == po + qo == 2 * n + 1


def test_kv_parameters():
    assert kv_parameters(1, 0, 4, 1) == {(0, 0), (0, -2), (0, -4)}
    for p, q in [(0, 0), (1, 2), (3, 0)]:
        assert (0, 0) in kv_parameters(p, q, 4, 1)
    for p, q in [(1, 2), (2, 1), (1, 0), (3, 0)]:
        assert {dual(w) for w in kv_parameters(p, q, 6, 1)} == kv_parameters(q, p, 6, 1)


def test_enumeration_counts():
    # even values in [-10, 10]: 11 choices, multisets of size N
    assert sum(1 for _ in even_dominant_weights(2, 10)) == 66
    assert sum(1 for _ in even_dominant_weights(4, 10)) == 1001


def test_certificate_small():
    for scheme in SCHEMES:
        c = certify(1, 10, scheme)
        assert c.passed and len(c.rows) == 66


def test_as_weight_rejects_increasing():
    with pytest.raises(ValidationError):
        as_weight((0, 2))
