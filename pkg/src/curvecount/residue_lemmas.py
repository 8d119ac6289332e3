"""Residue censuses: the counting identities behind the closed-form N_p.

A census counts *distinct* square (or fourth-power) values t in Z_p^*,
not the y producing them; shifted values that land on 0 are excluded,
since 0 is neither a residue nor a nonresidue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import HypothesisError
from .modmath import (
    legendre_symbol,
    quadratic_residues,
    quartic_residues,
    require_odd_prime,
    sieve_primes,
    sqrt_of_minus_one,
)


@dataclass(frozen=True)
class ResidueCounts:
    """The three censuses at one prime p = 1 (mod 4)."""

    p: int
    lemma2_count: int
    n1: int
    n2: int


def count_lemma2(p: int) -> int:
    """Count distinct t = y^2 in Z_p^* with t - 1 a nonzero residue.

    For p = 1 (mod 4) the count is exactly (p - 5)/4; the sweep tests
    assert that identity wholesale.
    """
    require_odd_prime(p)
    if p % 4 != 1:
        raise HypothesisError(f"count_lemma2 needs p = 1 (mod 4), got {p}")
    qr = quadratic_residues(p)
    return sum(1 for t in qr if (t - 1) % p in qr)


@lru_cache(maxsize=8192)
def _quartic_census(p: int) -> tuple[int, int]:
    """(n1, n2): distinct fourth powers t with t - 1 resp. t + 1 in QR_p."""
    qr = quadratic_residues(p)
    n1 = n2 = 0
    for t in quartic_residues(p):
        if (t - 1) % p in qr:
            n1 += 1
        if (t + 1) % p in qr:
            n2 += 1
    return n1, n2


def count_quartic(p: int, shift: int) -> int:
    """Count distinct t = y^4 in Z_p^* with t + shift a nonzero residue.

    shift = -1 gives the census written n1 throughout, shift = +1 gives n2.
    """
    require_odd_prime(p)
    if shift not in (-1, 1):
        raise ValueError(f"shift must be -1 or +1, got {shift}")
    n1, n2 = _quartic_census(p)
    return n1 if shift == -1 else n2


def census(p: int) -> ResidueCounts:
    """All three counts at one p = 1 (mod 4)."""
    return ResidueCounts(p, count_lemma2(p), count_quartic(p, -1), count_quartic(p, 1))


@lru_cache(maxsize=8)
def _chord_values(p: int) -> frozenset[int]:
    """All r + 1/r mod p over units r outside {1, -1, eps, -eps}."""
    eps = sqrt_of_minus_one(p)
    excluded = {1, p - 1, eps, p - eps}
    return frozenset(
        (r + pow(r, -1, p)) % p for r in range(2, p - 1) if r not in excluded
    )


def lemma4_check(p: int, y: int) -> tuple[bool, bool]:
    """Evaluate both sides of the chord criterion for y^4 - 1 at one y.

    Left: y^4 - 1 is a nonzero residue mod p.  Right: some unit r outside
    {+-1, +-eps} satisfies 2 y^2 = r + 1/r mod p.  The excluded r are the
    degenerate chords (r = +-1 forces y^4 = 1, r = +-eps forces y = 0).
    The contract is lhs = rhs at every y; tests sweep it exhaustively.
    """
    require_odd_prime(p)
    if p % 4 != 1:
        raise HypothesisError(f"lemma4_check needs p = 1 (mod 4), got {p}")
    y %= p
    if y == 0:
        raise ValueError("y must be a unit mod p")
    lhs = (pow(y, 4, p) - 1) % p in quadratic_residues(p)
    rhs = 2 * y * y % p in _chord_values(p)
    return lhs, rhs


def lemma5_hit(p: int) -> bool:
    """Whether p falls in the class -1 in QR_p, 2 in QNR_p, eps in QR_p.

    Tests the three memberships directly rather than leaning on the
    mod-8 argument that predicts the class is empty.
    """
    require_odd_prime(p)
    if legendre_symbol(-1, p) != 1 or legendre_symbol(2, p) == 1:
        return False
    return legendre_symbol(sqrt_of_minus_one(p), p) == 1


def lemma5_scan(limit: int) -> list[int]:
    """Primes p <= limit hitting the lemma5_hit class; expected empty
    (eps lands in QR_p only at p = 1 mod 8, which puts 2 in QR_p too)."""
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    return [p for p in sieve_primes(limit) if p != 2 and lemma5_hit(p)]


def lemma6_check(p: int) -> tuple[int, int, bool]:
    """(n1, n2, n1 + n2 == (p-5)/4) at one p = 5 (mod 8).

    The identity is specific to -1 in QR_p with eps in QNR_p; at
    p = 1 (mod 8) it genuinely fails (p = 17 gives 1 + 1 = 2, not 3).
    """
    require_odd_prime(p)
    if p % 8 != 5:
        raise HypothesisError(f"lemma6_check needs p = 5 (mod 8), got {p}")
    n1, n2 = _quartic_census(p)
    return n1, n2, n1 + n2 == (p - 5) // 4


def lemma8_fraction(limit: int) -> tuple[int, int, Fraction]:
    """Split the odd primes <= limit by p mod 4.

    Returns (#p = 1 mod 4, #p = 3 mod 4, first count over the total) with
    the fraction exact.
    """
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    ones = threes = 0
    for p in sieve_primes(limit):
        if p == 2:
            continue
        if p % 4 == 1:
            ones += 1
        else:
            threes += 1
    return ones, threes, Fraction(ones, ones + threes)
