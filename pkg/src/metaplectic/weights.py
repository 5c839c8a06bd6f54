"""Integer combinatorics of dominant weights of U(N), N = 2n.

S_{p,q} holds the dominant weights with at most p positive and at most q
negative entries. For p + q <= N this is read directly off the definition;
for p + q > N it is the union of S_{s,t} over s <= p, t <= q, s + t <= N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ConsistencyError, ValidationError

Weight = tuple[int, ...]

SCHEMES = ("odd-cover:+p", "odd-cover:-p", "even-cover:-q", "even-cover:+q", "half-cover:+2p")


@dataclass(frozen=True)
class BlockAssignment:
    p: int
    q: int
    shift: int
    parity: str  # parity of p

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "shift": self.shift, "parity": self.parity}


def as_weight(lam: Sequence[int]) -> Weight:
    w = tuple(int(x) for x in lam)
    if any(a < b for a, b in zip(w, w[1:])):
        raise ValidationError(f"weight {w} is not dominant (non-increasing)")
    return w


def is_spherical(lam: Sequence[int]) -> bool:
    return all(x % 2 == 0 for x in as_weight(lam))


def _in_direct(lam: Weight, p: int, q: int) -> bool:
    # first p entries >= 0, last q entries <= 0, the middle N - p - q entries zero
    N = len(lam)
    head, mid, tail = lam[:p], lam[p:N - q], lam[N - q:]
    return all(x >= 0 for x in head) and all(x == 0 for x in mid) and all(x <= 0 for x in tail)


def in_Spq(lam: Sequence[int], p: int, q: int) -> bool:
    """Membership by the literal definition (union over smaller blocks when p + q > N)."""
    lam = as_weight(lam)
    if p < 0 or q < 0:
        raise ValidationError("p and q must be non-negative")
    N = len(lam)
    if p + q <= N:
        return _in_direct(lam, p, q)
    return any(_in_direct(lam, s, t) for s in range(min(p, N) + 1) for t in range(min(q, N - s) + 1))


def in_Spq_greedy(lam: Weight, p: int, q: int) -> bool:
    """Index criterion: lam_{p+1} <= 0 and lam_{N-q} >= 0 (1-based, out-of-range ignored)."""
    N = len(lam)
    ok = p >= N or lam[p] <= 0
    return ok and (q >= N or lam[N - q - 1] >= 0)


def _shift(lam: Weight, m: int) -> Weight:
    return tuple(x - m for x in lam)


def scheme_blocks(scheme: str, N: int) -> list[tuple[int, int, int, bool]]:
    """Candidate blocks (p, q, shift, swap) of a scheme; weight lam belongs to
    the block iff lam - shift lies in S_{q,p} when swap else S_{p,q}."""
    if N % 2:
        raise ValidationError("weights must have even length")
    if scheme == "odd-cover:+p":
        return [(p, N + 1 - p, p, False) for p in range(0, N + 1, 2)]
    if scheme == "odd-cover:-p":
        return [(p, N + 1 - p, -p, True) for p in range(0, N + 1, 2)]
    if scheme == "even-cover:-q":
        return [(N + 1 - q, q, -q, False) for q in range(0, N + 1, 2)]
    if scheme == "even-cover:+q":
        return [(N + 1 - q, q, q, True) for q in range(0, N + 1, 2)]
    if scheme == "half-cover:+2p":
        return [(p, N - p, 2 * p, False) for p in range(N + 1)]
    raise ValidationError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}")


def _member(lam: Weight, p: int, q: int, shift: int, swap: bool, greedy: bool) -> bool:
    mu = _shift(lam, shift)
    a, b = (q, p) if swap else (p, q)
    return in_Spq_greedy(mu, a, b) if greedy else in_Spq(mu, a, b)


def _check_even(lam: Sequence[int]) -> Weight:
    w = as_weight(lam)
    if not is_spherical(w):
        raise ValidationError(f"weight {w} is not even")
    if len(w) % 2:
        raise ValidationError("weights must have even length 2n")
    return w


def candidate_blocks(lam: Sequence[int], scheme: str, greedy: bool = False) -> list[BlockAssignment]:
    w = _check_even(lam)
    return [BlockAssignment(p, q, shift, "even" if p % 2 == 0 else "odd")
            for p, q, shift, swap in scheme_blocks(scheme, len(w)) if _member(w, p, q, shift, swap, greedy)]


def assign_block(lam: Sequence[int], scheme: str) -> BlockAssignment:
    """The unique block of the scheme containing lam (greedy scan, confirmed by membership)."""
    w = _check_even(lam)
    for p, q, shift, swap in scheme_blocks(scheme, len(w)):
        if _member(w, p, q, shift, swap, greedy=True):
            if not _member(w, p, q, shift, swap, greedy=False):
                raise ConsistencyError(f"greedy and union membership disagree for {w} in block ({p}, {q})")
            return BlockAssignment(p, q, shift, "even" if p % 2 == 0 else "odd")
    raise ConsistencyError(f"no block of scheme {scheme} contains {w}")


def block_signature(lam: Sequence[int]) -> tuple[int, int, int, int]:
    """(p_e, q_e, p_o, q_o) from the covers lam - p in S_{p,q} (p even) and
    lam + q in S_{p,q} (q even, so p odd)."""
    w = _check_even(lam)
    N = len(w)
    pe = assign_block(w, "odd-cover:+p").p
    po = assign_block(w, "even-cover:-q").p
    return pe, N + 1 - pe, po, N + 1 - po


def dual(lam: Sequence[int]) -> Weight:
    """lam -> -reverse(lam), the weight of the contragredient."""
    return tuple(-x for x in reversed(as_weight(lam)))


def even_dominant_weights(N: int, bound: int) -> Iterator[Weight]:
    """All even non-increasing N-tuples with entries in [-bound, bound]."""
    vals = list(range(bound - bound % 2, -bound - 1, -2))
    for combo in itertools.combinations_with_replacement(vals, N):
        yield tuple(combo)


def kv_parameters(p: int, q: int, bound: int, n: int) -> set[Weight]:
    """Even weights of S_{q,p} (note the swap) for U(2n) with entries bounded by `bound`."""
    if bound < 0:
        raise ValidationError("bound must be non-negative")
    return {w for w in even_dominant_weights(2 * n, bound) if in_Spq(w, q, p)}


@dataclass
class Certificate:
    N: int
    bound: int
    scheme: str
    rows: list[tuple[Weight, int]]
    failures: list[tuple[Weight, str]]

    @property
    def passed(self) -> bool:
        return not self.failures


def certify(n: int, bound: int, scheme: str) -> Certificate:
    """Exhaustive uniqueness check of one scheme on the bounded even lattice."""
    N = 2 * n
    rows, failures = [], []
    for w in even_dominant_weights(N, bound):
        union = candidate_blocks(w, scheme, greedy=False)
        greedy = candidate_blocks(w, scheme, greedy=True)
        if len(union) != 1:
            failures.append((w, f"{len(union)} blocks"))
            continue
        if greedy != union:
            failures.append((w, "greedy criterion disagrees with membership"))
            continue
        rows.append((w, union[0].p))
    return Certificate(N, bound, scheme, rows, failures)
