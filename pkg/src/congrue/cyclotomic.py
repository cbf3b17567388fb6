"""Cyclotomic polynomials and the polynomial identities built on them.

``cyclotomic(n)`` divides ``X**n - 1`` by every ``cyclotomic(d)`` with
``d | n, d < n``; all divisors are monic so the division stays in Z[X] and
a nonzero remainder is reported as an internal error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from . import oracle
from .errors import DomainError, InternalError
from .polynomial import ONE, BivariatePolynomial, IntPolynomial


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def moebius(n: int) -> int:
    if n < 1:
        raise DomainError(f"moebius requires n >= 1, got {n}")
    factors = oracle.factorize(n)
    if any(k > 1 for k in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def totient(n: int) -> int:
    if n < 1:
        raise DomainError(f"totient requires n >= 1, got {n}")
    return prod((p - 1) * p ** (k - 1) for p, k in oracle.factorize(n).items())


def cyclotomic(n: int) -> IntPolynomial:
    if n < 1:
        raise DomainError(f"cyclotomic requires n >= 1, got {n}")
    return _cyclotomic(n)


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> IntPolynomial:
    poly = IntPolynomial.x_pow_minus_one(n)
    for d in divisors(n)[:-1]:
        poly, rem = poly.divmod_monic(_cyclotomic(d))
        if not rem.is_zero():
            raise InternalError(f"X^{n}-1 not divisible by cyclotomic({d}): remainder {rem}")
    return poly


def cyclotomic_moebius(n: int) -> IntPolynomial:
    """``prod_{d|n} (X**(n/d) - 1)**mu(d)`` as a power series truncated at degree phi(n).

    Independent of :func:`cyclotomic`: no polynomial division, inverse
    factors are expanded as geometric series.
    """
    if n < 1:
        raise DomainError(f"cyclotomic_moebius requires n >= 1, got {n}")
    top = totient(n)
    series = [1] + [0] * top
    for d in divisors(n):
        mu, k = moebius(d), n // d
        if mu == 1:
            # multiply by X**k - 1
            series = [(series[i - k] if i >= k else 0) - series[i] for i in range(top + 1)]
        elif mu == -1:
            # multiply by 1/(X**k - 1) = -(1 + X**k + X**2k + ...)
            out = [0] * (top + 1)
            for i in range(top + 1):
                out[i] = -series[i] + (out[i - k] if i >= k else 0)
            series = out
    return IntPolynomial(series)


def lemma1_difference(m: int) -> BivariatePolynomial:
    """``prod_{1<=d<=m, gcd(d,m)=1} (X - Y**d) - Phi_m(X)`` in X-major form."""
    if m < 2:
        raise DomainError(f"lemma1 requires m >= 2, got {m}")
    product = BivariatePolynomial([ONE])
    for d in range(1, m + 1):
        if gcd(d, m) == 1:
            product = product * BivariatePolynomial.x_minus_y_pow(d)
    return product - BivariatePolynomial.from_x(cyclotomic(m))


def lemma1_remainders(m: int) -> list[IntPolynomial]:
    """Remainder of every X-coefficient ``f_i(Y)`` on division by ``Phi_m(Y)``."""
    phi = cyclotomic(m)
    return [f.divmod_monic(phi)[1] for f in lemma1_difference(m).x_coeffs]


def lemma1_check(m: int) -> bool:
    """Every X-coefficient of the difference vanishes modulo ``Phi_m(Y)``."""
    return all(r.is_zero() for r in lemma1_remainders(m))


def wilson_poly_F(m: int) -> IntPolynomial:
    """``prod_{1<=i<m, gcd(i,m)=1} (X - i - 1) + 1``."""
    if m < 3:
        raise DomainError(f"wilson_poly_F requires m >= 3, got {m}")
    poly = ONE
    for i in range(1, m):
        if gcd(i, m) == 1:
            poly = poly * IntPolynomial([-(i + 1), 1])
    return poly + ONE


def diamond_check(m: int) -> bool:
    """Whether ``Phi_m`` and ``wilson_poly_F(m)`` agree coefficientwise mod ``m``.

    Accepts composite ``m``; the answer is then expected to be False.
    """
    if m < 3:
        raise DomainError(f"diamond_check requires m >= 3, got {m}")
    a = cyclotomic(m).reduce_mod(m)
    b = wilson_poly_F(m).reduce_mod(m)
    width = max(len(a), len(b))
    return a + (0,) * (width - len(a)) == b + (0,) * (width - len(b))


@dataclass(frozen=True)
class DiamondProbe:
    m: int
    coeff_F: int
    expected: int

    @property
    def congruent(self) -> bool:
        return (self.coeff_F - self.expected) % self.m == 0


def diamond_coefficient_probe(m: int) -> DiamondProbe:
    """Coefficient of ``X**(phi(m)-1)`` in ``wilson_poly_F(m)`` versus ``-phi(m)``."""
    if m < 3:
        raise DomainError(f"diamond_coefficient_probe requires m >= 3, got {m}")
    phi = totient(m)
    probe = DiamondProbe(m, wilson_poly_F(m).coefficient(phi - 1), -phi)
    if not probe.congruent:
        raise InternalError(f"coefficient {probe.coeff_F} not congruent to {-phi} mod {m}")
    return probe


def gallot_identity_check(p: int, m: int) -> bool:
    """Check ``Phi_pm(x) = Phi_m(x**p)`` (p | m) or ``Phi_pm * Phi_m = Phi_m(x**p)``."""
    if p < 2 or not oracle.trial_division(p):
        raise DomainError(f"gallot_identity_check requires prime p, got {p}")
    if m < 1:
        raise DomainError(f"gallot_identity_check requires m >= 1, got {m}")
    composed = cyclotomic(m).compose_power(p)
    if m % p == 0:
        return cyclotomic(p * m) == composed
    return cyclotomic(p * m) * cyclotomic(m) == composed


def eval_at_one(n: int) -> int:
    """``Phi_n(1)`` by coefficient sum; checked against prime-power detection."""
    if n < 2:
        raise DomainError(f"eval_at_one requires n >= 2, got {n}")
    value = sum(cyclotomic(n).coeffs)
    p = oracle.prime_power_base(n)
    expected = p if p is not None else 1
    if value != expected:
        raise InternalError(f"Phi_{n}(1) = {value}, expected {expected}")
    return value
