"""Dense integer polynomials, univariate and X-major bivariate."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients in ascending degree; the zero polynomial has none."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def x_pow_minus_one(cls, n: int) -> IntPolynomial:
        """``X**n - 1``."""
        return cls([-1] + [0] * (n - 1) + [1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Long division by a monic divisor; stays in Z[X]."""
        d = divisor.coeffs
        if not d or d[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = len(d) - 1
        if len(rem) <= dd:
            return IntPolynomial(), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                quot[k - dd] = c
                base = k - dd
                for i in range(dd + 1):
                    rem[base + i] -= c * d[i]
        return IntPolynomial(quot), IntPolynomial(rem[:dd])

    def compose_power(self, p: int) -> IntPolynomial:
        """Substitute ``X -> X**p``."""
        out = [0] * (p * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * p] = c
        return IntPolynomial(out)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reduce_mod(self, m: int) -> tuple[int, ...]:
        """Coefficients reduced into ``[0, m)``, untrimmed."""
        return tuple(c % m for c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = "X" if k == 1 else f"X^{k}" if k else ""
            if body and mag == 1:
                term = body
            elif body:
                term = f"{mag}*{body}"
            else:
                term = str(mag)
            terms.append((sign, term))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in terms[1:]:
            out += f" {sign} {term}"
        return out


ONE = IntPolynomial([1])
X = IntPolynomial([0, 1])


@dataclass(frozen=True)
class BivariatePolynomial:
    """Polynomial in X whose coefficients are polynomials in Y.

    ``x_coeffs[i]`` is the Y-polynomial multiplying ``X**i``.
    """

    x_coeffs: tuple[IntPolynomial, ...]

    def __init__(self, x_coeffs: Sequence[IntPolynomial] = ()) -> None:
        c = list(x_coeffs)
        while c and c[-1].is_zero():
            c.pop()
        object.__setattr__(self, "x_coeffs", tuple(c))

    @classmethod
    def from_x(cls, poly: IntPolynomial) -> BivariatePolynomial:
        """Embed a polynomial in X with constant Y-coefficients."""
        return cls([IntPolynomial([c]) for c in poly.coeffs])

    @classmethod
    def x_minus_y_pow(cls, d: int) -> BivariatePolynomial:
        """``X - Y**d``."""
        return cls([IntPolynomial.monomial(d, -1), ONE])

    def is_zero(self) -> bool:
        return not self.x_coeffs

    def __add__(self, other: BivariatePolynomial) -> BivariatePolynomial:
        a, b = self.x_coeffs, other.x_coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return BivariatePolynomial(out)

    def __neg__(self) -> BivariatePolynomial:
        return BivariatePolynomial([-c for c in self.x_coeffs])

    def __sub__(self, other: BivariatePolynomial) -> BivariatePolynomial:
        return self + (-other)

    def __mul__(self, other: BivariatePolynomial) -> BivariatePolynomial:
        a, b = self.x_coeffs, other.x_coeffs
        if not a or not b:
            return BivariatePolynomial()
        out = [IntPolynomial()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return BivariatePolynomial(out)
