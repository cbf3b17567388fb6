from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from congrue import oracle
from congrue.cyclotomic import (
    cyclotomic,
    cyclotomic_moebius,
    diamond_check,
    diamond_coefficient_probe,
    divisors,
    eval_at_one,
    gallot_identity_check,
    lemma1_check,
    lemma1_difference,
    lemma1_remainders,
    moebius,
    totient,
    wilson_poly_F,
)
from congrue.errors import DomainError
from congrue.polynomial import ONE, IntPolynomial

X, Y = sympy.symbols("X Y")


def sympy_coeffs(expr, var=X):
    return list(reversed(sympy.Poly(expr, var).all_coeffs()))


@pytest.mark.parametrize("n, phi", [(1, 1), (12, 4), (7, 6), (30, 8), (64, 32)])
def test_totient(n, phi):
    assert totient(n) == phi


@pytest.mark.parametrize("n, mu", [(1, 1), (6, 1), (4, 0), (30, -1), (7, -1), (12, 0)])
def test_moebius(n, mu):
    assert moebius(n) == mu


def test_totient_and_moebius_brute_force():
    for n in range(1, 300):
        assert totient(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
        assert moebius(n) == sympy.mobius(n)


def test_arith_function_domains():
    for fn in (totient, moebius, cyclotomic):
        with pytest.raises(DomainError):
            fn(0)


@pytest.mark.parametrize("n, coeffs", [
    (1, [-1, 1]),
    (7, [1] * 7),
    (6, [1, -1, 1]),
    (4, [1, 0, 1]),
    (9, [1, 0, 0, 1, 0, 0, 1]),
])
def test_cyclotomic_examples(n, coeffs):
    assert cyclotomic(n).coeffs == tuple(coeffs)


def test_cyclotomic_matches_sympy():
    for n in range(1, 211):
        assert list(cyclotomic(n).coeffs) == sympy_coeffs(sympy.cyclotomic_poly(n, X)), n


def test_cyclotomic_matches_moebius_construction():
    for n in range(1, 61):
        assert cyclotomic(n) == cyclotomic_moebius(n), n


def test_divisor_product_identity():
    for n in range(1, 106):
        product = ONE
        for d in divisors(n):
            product = product * cyclotomic(d)
        assert product == IntPolynomial.x_pow_minus_one(n), n


def test_degree_is_totient():
    for n in range(1, 201):
        assert cyclotomic(n).degree == totient(n)


def brute_lemma1_difference(m):
    """Oracle: expand the product subset by subset, entirely in sympy."""
    ds = [d for d in range(1, m + 1) if gcd(d, m) == 1]
    k = len(ds)
    expr = 0
    for size in range(k + 1):
        for chosen in combinations(ds, size):
            # pick -Y**d from the chosen factors and X from the rest
            expr += (-1) ** size * Y ** sum(chosen) * X ** (k - size)
    return sympy.expand(expr - sympy.cyclotomic_poly(m, X))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13])
def test_lemma1_against_brute_force(m):
    brute = brute_lemma1_difference(m)
    by_power = list(reversed(sympy.Poly(brute, X).all_coeffs())) if brute != 0 else []
    ours = lemma1_difference(m).x_coeffs
    assert len(ours) == len(by_power)
    phi_y = sympy.cyclotomic_poly(m, Y)
    for f, expected in zip(ours, by_power):
        assert f.coeffs == tuple(IntPolynomial(sympy_coeffs(expected, Y)).coeffs)
        assert sympy.rem(expected, phi_y, Y) == 0
    assert all(r.is_zero() for r in lemma1_remainders(m))
    assert lemma1_check(m)


def test_lemma1_m3_hand_expansion():
    # (X - Y)(X - Y^2) - (X^2 + X + 1) = -(Y + Y^2 + 1) X + (Y^3 - 1)
    f0, f1 = lemma1_difference(3).x_coeffs
    assert f0.coeffs == (-1, 0, 0, 1)
    assert f1.coeffs == (-1, -1, -1)


def test_lemma1_grid():
    assert all(lemma1_check(m) for m in range(2, 41))


def test_lemma1_domain():
    with pytest.raises(DomainError):
        lemma1_check(1)


@pytest.mark.parametrize("m, coeffs", [(3, [7, -5, 1]), (4, [9, -6, 1])])
def test_wilson_poly_F_examples(m, coeffs):
    assert wilson_poly_F(m).coeffs == tuple(coeffs)


def test_wilson_poly_F_against_sympy():
    for m in range(3, 40):
        expr = sympy.prod([X - i - 1 for i in range(1, m) if gcd(i, m) == 1]) + 1
        F = wilson_poly_F(m)
        assert list(F.coeffs) == sympy_coeffs(sympy.expand(expr))
        assert F.degree == totient(m)


@pytest.mark.parametrize("m, expected", [(5, True), (4, False), (3, True), (9, False), (6, False), (13, True)])
def test_diamond_examples(m, expected):
    assert diamond_check(m) is expected


def test_diamond_holds_exactly_at_primes():
    for m in range(3, 101):
        assert diamond_check(m) == oracle.trial_division(m), m


@pytest.mark.parametrize("m, coeff", [(3, -5), (4, -6)])
def test_coefficient_probe_examples(m, coeff):
    p = diamond_coefficient_probe(m)
    assert (p.coeff_F, p.expected) == (coeff, -totient(m))
    assert p.congruent


def test_coefficient_probe_grid():
    for m in range(3, 201):
        p = diamond_coefficient_probe(m)
        # independent: coefficient is minus the sum of the roots i + 1
        assert p.coeff_F == -sum(i + 1 for i in range(1, m) if gcd(i, m) == 1)
        assert p.congruent


def test_diamond_domains():
    for fn in (wilson_poly_F, diamond_check, diamond_coefficient_probe):
        with pytest.raises(DomainError):
            fn(2)


@pytest.mark.parametrize("p, m, composed", [
    (2, 2, [1, 0, 1]),
    (2, 3, [1, 0, 1, 0, 1]),
    (3, 3, [1, 0, 0, 1, 0, 0, 1]),
])
def test_gallot_examples(p, m, composed):
    assert cyclotomic(m).compose_power(p).coeffs == tuple(composed)
    assert gallot_identity_check(p, m)


def test_gallot_grid():
    for p in (2, 3, 5, 7):
        for m in range(1, 31):
            assert gallot_identity_check(p, m), (p, m)


def test_gallot_rejects_composite_p():
    with pytest.raises(DomainError):
        gallot_identity_check(4, 3)


@pytest.mark.parametrize("n, value", [(8, 2), (6, 1), (49, 7), (2, 2), (30, 1), (81, 3)])
def test_eval_at_one_examples(n, value):
    assert eval_at_one(n) == value


def test_eval_at_one_grid():
    for n in range(2, 301):
        value = eval_at_one(n)
        assert value == sympy.cyclotomic_poly(n, 1)
        p = oracle.prime_power_base(n)
        assert value == (p if p else 1)


def test_eval_at_one_domain():
    with pytest.raises(DomainError):
        eval_at_one(1)


@given(st.integers(1, 120))
def test_cyclotomic_roots_are_primitive(n):
    # Phi_n divides X^n - 1 and is coprime to X^d - 1 for proper divisors d
    q, r = IntPolynomial.x_pow_minus_one(n).divmod_monic(cyclotomic(n))
    assert r.is_zero()
    for d in divisors(n)[:-1]:
        g = sympy.gcd(sympy.Poly(list(reversed(cyclotomic(n).coeffs)), X), sympy.Poly(X**d - 1, X))
        assert g.degree() == 0
