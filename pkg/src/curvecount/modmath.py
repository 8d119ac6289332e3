"""Modular arithmetic over odd prime fields.

All residues are normalized to {0, ..., p-1}.  Functions that take a
prime validate it on entry (deterministic Miller-Rabin), so a bad p
fails loudly instead of producing garbage counts downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import HypothesisError

QR = "QR"
QNR = "QNR"

# Deterministic witness set, valid far beyond any bound used here
# (covers n < 3.3 * 10^24).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending (sieve of Eratosthenes)."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(range(i * i, limit + 1, i))
    return [i for i in range(2, limit + 1) if flags[i]]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the sizes this package sweeps."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"expected an odd prime, got {p}")


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, +1}, by Euler's criterion."""
    require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def mod_inverse(a: int, p: int) -> int:
    """Inverse of a mod p, normalized to {1, ..., p-1}."""
    require_odd_prime(p)
    if a % p == 0:
        raise ZeroDivisionError(f"{a} is not invertible mod {p}")
    return pow(a, -1, p)


def sqrt_of_minus_one(p: int) -> int:
    """The canonical square root of -1 mod p, for p = 1 (mod 4).

    The two roots are eps and p - eps; the smaller one is returned so
    output is reproducible.  Every consumer must give the same answer
    for either choice, which the tests check separately.
    """
    require_odd_prime(p)
    if p % 4 != 1:
        raise HypothesisError(f"-1 is a nonresidue mod {p}; need p = 1 (mod 4)")
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:  # first quadratic nonresidue
        n += 1
    eps = pow(n, (p - 1) // 4, p)
    return min(eps, p - eps)


def _distinct_prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Smallest g >= 2 generating the multiplicative group mod p."""
    require_odd_prime(p)
    factors = _distinct_prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError(f"no primitive root below {p}; p is not prime")


@lru_cache(maxsize=8)
def quadratic_residues(p: int) -> frozenset[int]:
    """QR_p: the set of nonzero squares mod p."""
    require_odd_prime(p)
    return frozenset(y * y % p for y in range(1, (p + 1) // 2))


@lru_cache(maxsize=8)
def quartic_residues(p: int) -> frozenset[int]:
    """The set of nonzero fourth powers mod p (squares of QR_p)."""
    return frozenset(t * t % p for t in quadratic_residues(p))


@dataclass(frozen=True)
class PrimeProfile:
    """Residue classification of one prime, gating the lemma hypotheses."""

    p: int
    p_mod_8: int
    class_minus_one: str
    class_two: str
    epsilon: int | None
    class_epsilon: str | None


def prime_profile(p: int) -> PrimeProfile:
    """Classify -1, 2 and (when present) eps = sqrt(-1) mod p.

    The classes are computed from Legendre symbols, not read off p mod 8;
    the classical mod-8 shortcuts are asserted as a cross-check.
    """
    require_odd_prime(p)
    class_minus_one = QR if legendre_symbol(-1, p) == 1 else QNR
    class_two = QR if legendre_symbol(2, p) == 1 else QNR
    if p % 4 == 1:
        epsilon = sqrt_of_minus_one(p)
        class_epsilon = QR if legendre_symbol(epsilon, p) == 1 else QNR
    else:
        epsilon = None
        class_epsilon = None
    profile = PrimeProfile(p, p % 8, class_minus_one, class_two, epsilon, class_epsilon)
    _assert_profile_consistent(profile)
    return profile


def _assert_profile_consistent(profile: PrimeProfile) -> None:
    # Supplements to quadratic reciprocity, plus eps^((p-1)/2) = (-1)^((p-1)/4).
    p = profile.p
    assert (profile.class_minus_one == QR) == (p % 4 == 1)
    assert (profile.class_two == QR) == (profile.p_mod_8 in (1, 7))
    if profile.epsilon is not None:
        assert 1 <= profile.epsilon <= (p - 1) // 2
        assert (profile.epsilon * profile.epsilon + 1) % p == 0
        assert (profile.class_epsilon == QR) == (profile.p_mod_8 == 1)
