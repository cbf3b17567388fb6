"""Exact modular arithmetic over repunit moduli (m**n - 1) / (m - 1).

Residues are always kept canonical in ``[0, M)``.  Reduction of products
exploits ``m**n == (m - 1) * M + 1``, so ``m**n`` is congruent to 1 and a
number can be folded at multiples of ``m**n`` by adding its high and low
parts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, ModulusMismatchError

__all__ = [
    "RepunitModulus",
    "Residue",
    "repunit",
    "mod_reduce",
    "fast_reduce",
    "fold",
    "mod_mul",
    "mod_pow",
]

# Above this many leftover multiples of M a single ``%`` is cheaper than
# repeated subtraction.
_MAX_SUBTRACTIONS = 4


@dataclass(frozen=True)
class RepunitModulus:
    base: int
    exponent: int
    value: int
    # base ** exponent, kept for folding
    power: int = field(init=False, repr=False, compare=False)
    # log2(power) when base is a power of two, else -1
    _shift: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.base < 2 or self.exponent < 1:
            raise DomainError(
                f"repunit modulus needs base >= 2 and exponent >= 1, "
                f"got base={self.base}, exponent={self.exponent}"
            )
        power = self.value * (self.base - 1) + 1
        if power != self.base**self.exponent:
            raise DomainError(
                f"value {self.value} is not (base**exponent - 1)/(base - 1) "
                f"for base={self.base}, exponent={self.exponent}"
            )
        object.__setattr__(self, "power", power)
        b = self.base
        shift = (b.bit_length() - 1) * self.exponent if b & (b - 1) == 0 else -1
        object.__setattr__(self, "_shift", shift)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class Residue:
    rep: int
    modulus: RepunitModulus

    def __post_init__(self) -> None:
        if not 0 <= self.rep < self.modulus.value:
            raise DomainError(
                f"residue {self.rep} not canonical in [0, {self.modulus.value})"
            )

    def __int__(self) -> int:
        return self.rep


def repunit(m: int, n: int) -> RepunitModulus:
    """Return the modulus ``(m**n - 1) // (m - 1)`` (n ones in base m)."""
    if m < 2 or n < 1:
        raise DomainError(f"repunit requires m >= 2 and n >= 1, got m={m}, n={n}")
    return RepunitModulus(m, n, (m**n - 1) // (m - 1))


def mod_reduce(x: int, M: RepunitModulus) -> Residue:
    """Canonical residue of any integer ``x`` (negative allowed)."""
    return Residue(x % M.value, M)


def fold(x: int, M: RepunitModulus) -> int:
    """Integer core of :func:`fast_reduce`, without the range check."""
    power = M.power
    if M._shift >= 0:
        shift, mask = M._shift, power - 1
        while x >= power:
            x = (x >> shift) + (x & mask)
    else:
        while x >= power:
            hi, lo = divmod(x, power)
            x = hi + lo
    # now x <= (base - 1) * value
    if M.base - 1 > _MAX_SUBTRACTIONS:
        return x % M.value
    while x >= M.value:
        x -= M.value
    return x


def fast_reduce(x: int, M: RepunitModulus) -> Residue:
    """Reduce ``0 <= x < M.value**2`` by folding at powers of ``base**exponent``.

    Same result as :func:`mod_reduce`, which remains the reference.
    """
    if not 0 <= x < M.value * M.value:
        raise DomainError(f"fast_reduce needs 0 <= x < M**2, got x={x}, M={M.value}")
    return Residue(fold(x, M), M)


def _check_same(a: Residue, b: Residue) -> None:
    if a.modulus != b.modulus:
        raise ModulusMismatchError(
            f"residues live modulo {a.modulus.value} and {b.modulus.value}"
        )


def mod_mul(a: Residue, b: Residue) -> Residue:
    _check_same(a, b)
    return Residue(fold(a.rep * b.rep, a.modulus), a.modulus)


def mod_pow(a: Residue, e: int) -> Residue:
    """Left-to-right square-and-multiply; ``a**0`` is 1 (0 when M == 1)."""
    if e < 0:
        raise DomainError(f"mod_pow exponent must be non-negative, got {e}")
    M = a.modulus
    result = 1 % M.value
    base = a.rep
    for bit in bin(e)[2:]:
        result = fold(result * result, M)
        if bit == "1":
            result = fold(result * base, M)
    return Residue(result, M)
