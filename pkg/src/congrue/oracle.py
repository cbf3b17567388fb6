"""Baseline primality machinery used as ground truth.

Nothing here depends on the congruence tests; every iff claim in the
package is checked against these functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import DomainError

# First twelve primes.  Strong-pseudoprime tests to all of these bases are
# conclusive for n < 3.3e24 (Sorenson & Webster, 2015), covering all of
# [2, 2**64).
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class FactorWitness:
    n: int
    smallest_prime_factor: int
    cofactor: int

    @property
    def is_prime(self) -> bool:
        return self.smallest_prime_factor == self.n


def _require_at_least_two(n: int, what: str) -> None:
    if n < 2:
        raise DomainError(f"{what} requires n >= 2, got {n}")


def smallest_prime_factor(n: int) -> FactorWitness:
    _require_at_least_two(n, "smallest_prime_factor")
    if n % 2 == 0:
        return FactorWitness(n, 2, n // 2)
    for q in range(3, isqrt(n) + 1, 2):
        if n % q == 0:
            return FactorWitness(n, q, n // q)
    return FactorWitness(n, n, 1)


def trial_division(n: int) -> bool:
    """True iff no integer in ``[2, isqrt(n)]`` divides ``n``."""
    _require_at_least_two(n, "trial_division")
    return smallest_prime_factor(n).is_prime


def sieve(limit: int) -> list[int]:
    """Primes up to and including ``limit`` (Eratosthenes)."""
    _require_at_least_two(limit, "sieve")
    flags = sieve_flags(limit)
    return [i for i in range(limit + 1) if flags[i]]


def sieve_flags(limit: int) -> bytearray:
    """``flags[i] == 1`` iff ``i`` is prime, for ``0 <= i <= limit``."""
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"[: min(2, limit + 1)]
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return flags


def miller_rabin_64(n: int) -> bool:
    """Deterministic Miller-Rabin for ``2 <= n < 2**64``."""
    if not 2 <= n < 1 << 64:
        raise DomainError(f"miller_rabin_64 requires 2 <= n < 2**64, got {n}")
    for p in MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power_base(n: int) -> int | None:
    """Return ``p`` if ``n == p**k`` for a prime ``p`` and ``k >= 1``, else None."""
    _require_at_least_two(n, "prime_power_base")
    p = smallest_prime_factor(n).smallest_prime_factor
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by repeated smallest-factor extraction (desk scale)."""
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    factors: dict[int, int] = {}
    while n > 1:
        q = smallest_prime_factor(n).smallest_prime_factor
        factors[q] = factors.get(q, 0) + 1
        n //= q
    return factors
