"""Integer-level primality characterizations.

* generalized Vantieghem:  prod_{d=1}^{n-1} (1 - m**d) == n  (mod (m**n-1)/(m-1))
* Wilson:                  (n - 1)! == -1  (mod n)

plus the composite witness used to rule out the converse.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from math import prod

from .arith import Residue, fold, mod_reduce, repunit
from .errors import DomainError, InternalError
from . import oracle


class Method(str, enum.Enum):
    VANTIEGHEM = "vantieghem"
    WILSON = "wilson"
    TRIAL = "trial"
    MILLER_RABIN = "miller_rabin"

    def __str__(self) -> str:
        return self.value

    @property
    def uses_base(self) -> bool:
        return self is Method.VANTIEGHEM

    @property
    def min_n(self) -> int:
        return 3 if self is Method.VANTIEGHEM else 2


@dataclass(frozen=True)
class TestReport:
    """Outcome of one primality test.

    For the congruence methods ``verdict == (lhs_residue == rhs_residue)``.
    Trial division reports the smallest prime factor against ``n``; the
    Miller-Rabin report carries no residues.
    """

    __test__ = False  # keep pytest from collecting this class

    n: int
    m: int | None
    method: Method
    lhs_residue: int | None
    rhs_residue: int | None
    modulus_value: int
    verdict: bool
    elapsed_ns: int
    theorem: str = ""


@dataclass(frozen=True)
class ConverseWitness:
    n: int
    m: int
    q: int
    a: int
    repunit_a: int
    bound: int

    @property
    def exceptional(self) -> bool:
        return (self.m, self.a) == (3, 2)

    @property
    def contradiction(self) -> bool:
        return self.repunit_a > self.bound


def vantieghem_product(m: int, n: int) -> Residue:
    """``prod_{d=1}^{n-1} (1 - m**d)`` reduced mod ``repunit(m, n)``.

    Runs ``n - 1`` steps, carrying ``m**d mod M`` and the partial product,
    both canonical.
    """
    if m < 2 or n < 3:
        raise DomainError(f"vantieghem_product requires m >= 2 and n >= 3, got m={m}, n={n}")
    M = repunit(m, n)
    value = M.value
    step = m % value
    power, acc = step, 1 % value
    for _ in range(n - 1):
        # 1 - power is in (-M, 1]; shift into [0, M)
        factor = 1 - power if power <= 1 else value + 1 - power
        acc = fold(acc * factor, M)
        power = fold(power * step, M)
    return Residue(acc, M)


def _timed(fn, *args):
    t0 = time.perf_counter_ns()
    out = fn(*args)
    return out, time.perf_counter_ns() - t0


def is_prime_vantieghem(n: int, m: int = 2) -> TestReport:
    if n < 3:
        raise DomainError(f"vantieghem test requires n > 2, got n={n}")
    if m < 2:
        raise DomainError(f"vantieghem test requires base m >= 2, got m={m}")
    lhs, elapsed = _timed(vantieghem_product, m, n)
    rhs = mod_reduce(n, lhs.modulus)
    return TestReport(
        n=n,
        m=m,
        method=Method.VANTIEGHEM,
        lhs_residue=lhs.rep,
        rhs_residue=rhs.rep,
        modulus_value=lhs.modulus.value,
        verdict=lhs.rep == rhs.rep,
        elapsed_ns=elapsed,
        theorem="vantieghem (m=2)" if m == 2 else "generalized vantieghem (m>2)",
    )


def _wilson_factorial(n: int) -> int:
    acc = 1
    for k in range(2, n):
        acc = acc * k % n
        if acc == 0:
            break
    return acc % n


def is_prime_wilson(n: int) -> TestReport:
    if n < 2:
        raise DomainError(f"wilson test requires n >= 2, got n={n}")
    lhs, elapsed = _timed(_wilson_factorial, n)
    return TestReport(
        n=n,
        m=None,
        method=Method.WILSON,
        lhs_residue=lhs,
        rhs_residue=n - 1,
        modulus_value=n,
        verdict=lhs == n - 1,
        elapsed_ns=elapsed,
        theorem="wilson",
    )


def is_prime_trial(n: int) -> TestReport:
    witness, elapsed = _timed(oracle.smallest_prime_factor, n)
    return TestReport(
        n=n,
        m=None,
        method=Method.TRIAL,
        lhs_residue=witness.smallest_prime_factor,
        rhs_residue=n,
        modulus_value=n,
        verdict=witness.is_prime,
        elapsed_ns=elapsed,
        theorem="trial division",
    )


def is_prime_miller_rabin(n: int) -> TestReport:
    verdict, elapsed = _timed(oracle.miller_rabin_64, n)
    return TestReport(
        n=n,
        m=None,
        method=Method.MILLER_RABIN,
        lhs_residue=None,
        rhs_residue=None,
        modulus_value=n,
        verdict=verdict,
        elapsed_ns=elapsed,
        theorem="deterministic miller-rabin",
    )


def run_test(method: Method | str, n: int, m: int | None = None) -> TestReport:
    """Dispatch one test; ``m`` defaults to 2 for Vantieghem and is ignored otherwise."""
    method = Method(method)
    if method is Method.VANTIEGHEM:
        return is_prime_vantieghem(n, 2 if m is None else m)
    if method is Method.WILSON:
        return is_prime_wilson(n)
    if method is Method.TRIAL:
        return is_prime_trial(n)
    return is_prime_miller_rabin(n)


def converse_witness(n: int, m: int) -> ConverseWitness:
    """Instantiate the bound that makes the congruence fail for composite ``n``.

    With ``q`` the least prime factor and ``a = n // q``, a composite ``n``
    satisfying the congruence would force ``(m**a - 1)/(m - 1) <= n <= a**2``.
    Raises :class:`InternalError` if that bound is ever attainable outside
    ``(m, a) == (3, 2)``.
    """
    if m < 3:
        raise DomainError(f"converse_witness requires m >= 3, got m={m}")
    if n < 4:
        raise DomainError(f"converse_witness requires composite n >= 4, got n={n}")
    fw = oracle.smallest_prime_factor(n)
    if fw.is_prime:
        raise InternalError(f"converse_witness called with prime n={n}")
    q, a = fw.smallest_prime_factor, fw.cofactor
    w = ConverseWitness(n=n, m=m, q=q, a=a, repunit_a=repunit(m, a).value, bound=a * a)
    if not (q <= a and n <= w.bound):
        raise InternalError(f"least-factor bounds fail for n={n}: q={q}, a={a}")
    if not w.exceptional and not w.contradiction:
        raise InternalError(
            f"repunit({m},{a})={w.repunit_a} does not exceed a**2={w.bound} for n={n}"
        )
    return w


def converse_divides(n: int, m: int) -> bool:
    """Whether ``m**a - 1`` divides ``prod_{d=1}^{n-1} (m**d - 1)`` over the integers.

    ``a`` is ``n`` divided by its least prime factor.  Brute force; keep ``n``
    small.
    """
    a = oracle.smallest_prime_factor(n).cofactor
    return prod(m**d - 1 for d in range(1, n)) % (m**a - 1) == 0
