"""Property suites over parameter grids, as driven by ``congrue verify``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from . import oracle
from .congruence import converse_divides, converse_witness, is_prime_vantieghem
from .cyclotomic import (
    cyclotomic,
    diamond_check,
    diamond_coefficient_probe,
    divisors,
    eval_at_one,
    gallot_identity_check,
    lemma1_check,
)
from .errors import DomainError, InternalError
from .polynomial import ONE, IntPolynomial


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    passed: bool
    detail: str = ""


def _lemma1(bound: int) -> Iterator[CaseResult]:
    for m in range(2, bound + 1):
        ok = lemma1_check(m)
        yield CaseResult("lemma1", f"m={m}", ok, "all f_i(Y) vanish mod Phi_m(Y)" if ok else "nonzero remainder")


def _diamond(bound: int) -> Iterator[CaseResult]:
    for m in range(3, bound + 1):
        holds = diamond_check(m)
        prime = oracle.trial_division(m)
        kind = "prime" if prime else "composite"
        yield CaseResult(
            "diamond", f"m={m}", holds == prime, f"congruence {'holds' if holds else 'fails'}, m {kind}"
        )
        try:
            probe = diamond_coefficient_probe(m)
            yield CaseResult("diamond", f"probe m={m}", True, f"coeff {probe.coeff_F} == {probe.expected} mod {m}")
        except InternalError as exc:
            yield CaseResult("diamond", f"probe m={m}", False, str(exc))


def _gallot(bound: int) -> Iterator[CaseResult]:
    for p in (2, 3, 5, 7):
        for m in range(1, bound + 1):
            rel = "Phi_m(x^p)" if m % p == 0 else "Phi_m(x^p)/Phi_m(x)"
            yield CaseResult("gallot", f"p={p} m={m}", gallot_identity_check(p, m), f"Phi_pm = {rel}")
    for n in range(1, bound + 1):
        product = ONE
        for d in divisors(n):
            product = product * cyclotomic(d)
        ok = product == IntPolynomial.x_pow_minus_one(n)
        yield CaseResult("gallot", f"divisor product n={n}", ok, "prod_{d|n} Phi_d = X^n - 1")


def _eval1(bound: int) -> Iterator[CaseResult]:
    for n in range(2, bound + 1):
        try:
            value = eval_at_one(n)
            yield CaseResult("eval1", f"n={n}", True, f"Phi_n(1) = {value}")
        except InternalError as exc:
            yield CaseResult("eval1", f"n={n}", False, str(exc))


def _converse(bound: int) -> Iterator[CaseResult]:
    for n in range(4, bound + 1):
        if oracle.trial_division(n):
            continue
        for m in range(3, 11):
            try:
                w = converse_witness(n, m)
            except InternalError as exc:
                yield CaseResult("converse", f"n={n} m={m}", False, str(exc))
                continue
            if w.exceptional:
                # the bound is attainable here, so the congruence itself must fail
                ok = not is_prime_vantieghem(n, m).verdict
                detail = f"exception (m,a)=(3,2): {w.repunit_a} <= {w.bound}; congruence fails"
            else:
                ok = w.contradiction
                detail = f"q={w.q} a={w.a}: repunit {w.repunit_a} > a^2 = {w.bound}"
            yield CaseResult("converse", f"n={n} m={m}", ok, detail)
        if n <= 30:
            for m in (2, 3, 5):
                yield CaseResult(
                    "converse", f"divides n={n} m={m}", converse_divides(n, m), "m^a - 1 | prod (m^d - 1)"
                )


@dataclass(frozen=True)
class Suite:
    run: Callable[[int], Iterator[CaseResult]]
    default: int
    limit: int
    what: str


SUITES: dict[str, Suite] = {
    "lemma1": Suite(_lemma1, 40, 60, "m"),
    "diamond": Suite(_diamond, 100, 400, "m"),
    "gallot": Suite(_gallot, 30, 60, "m"),
    "eval1": Suite(_eval1, 300, 1000, "n"),
    "converse": Suite(_converse, 100, 2000, "n"),
}


def run_suite(name: str, bound: int | None = None) -> list[CaseResult]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    bound = suite.default if bound is None else bound
    if not 1 <= bound <= suite.limit:
        raise DomainError(f"suite {name} takes a bound in [1, {suite.limit}], got {bound}")
    return list(suite.run(bound))
