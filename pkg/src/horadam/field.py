"""Exact scalar arithmetic.

Three scalar realizations share one informal protocol (+, -, *, /, **, ==,
interop with small ints): arbitrary-precision rationals (`fractions.Fraction`,
re-exported as `Rational`), elements of the quadratic extension Q(sqrt(D))
(`QuadExt`), and residues modulo a prime (`ModInt`, benchmark mode only).
All values are immutable; every operation is pure.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import (
    CompositeModulus,
    DiscriminantMismatch,
    NegativeK,
    NonInvertible,
    ZeroToNegativePower,
)

# Canonical form (reduced, positive denominator) is guaranteed by Fraction
# itself, so equality is structural.
Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal: optional sign, integer, optional '/denominator'.

    Accepts e.g. '-3/7', '42', '+5'. Rejects denominator 0 and anything
    outside the literal grammar (no decimals, no whitespace).
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = s.partition("/")
    if den:
        if int(den) == 0:
            raise ValueError(f"zero denominator in rational literal: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_scalar(x) -> str:
    """Canonical rendering: 'num/den' with the denominator omitted when 1."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, ModInt):
        return str(x.value)
    return str(x)


def pow_int(x, e: int):
    """x**e for integer e, exact; negative exponents need x != 0."""
    if e < 0 and x == 0:
        raise ZeroToNegativePower(f"0 ** {e}")
    return x ** e


def binomial(k: int, j: int) -> int:
    """C(k, j) for k >= 0; zero when j is outside [0, k]."""
    if k < 0:
        raise NegativeK(f"binomial needs k >= 0, got k={k}")
    if j < 0 or j > k:
        return 0
    return math.comb(k, j)


class QuadExt:
    """Element c0 + c1*sqrt(d) of the quadratic extension Q(sqrt(d)).

    d is an arbitrary rational (negative d gives an imaginary extension,
    which stays exact). Elements interoperate only when their d agree.
    """

    __slots__ = ("c0", "c1", "d")

    def __init__(self, c0, c1, d):
        self.c0 = Fraction(c0)
        self.c1 = Fraction(c1)
        self.d = Fraction(d)

    def _check(self, other) -> "QuadExt":
        if not isinstance(other, QuadExt):
            return QuadExt(other, 0, self.d)
        if other.d != self.d:
            raise DiscriminantMismatch(f"{self.d} vs {other.d}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return QuadExt(self.c0 + other.c0, self.c1 + other.c1, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return QuadExt(self.c0 - other.c0, self.c1 - other.c1, self.d)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return QuadExt(-self.c0, -self.c1, self.d)

    def __mul__(self, other):
        other = self._check(other)
        return QuadExt(
            self.c0 * other.c0 + self.c1 * other.c1 * self.d,
            self.c0 * other.c1 + self.c1 * other.c0,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def norm(self) -> Fraction:
        return self.c0 * self.c0 - self.c1 * self.c1 * self.d

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise NonInvertible(f"zero-norm element {self}")
        return QuadExt(self.c0 / n, -self.c1 / n, self.d)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadExt(1, 0, self.d)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.d == other.d and self.c0 == other.c0 and self.c1 == other.c1
        return self.c1 == 0 and self.c0 == other

    def __hash__(self):
        return hash((self.c0, self.c1, self.d))

    def is_rational(self) -> bool:
        return self.c1 == 0

    def __repr__(self):
        return f"QuadExt({self.c0!r}, {self.c1!r}, d={self.d!r})"


def quad_mul(x: QuadExt, y: QuadExt) -> QuadExt:
    return x * y


def quad_inv(x: QuadExt) -> QuadExt:
    return x.inverse()


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ModInt:
    """Residue modulo a prime, supporting the same protocol as Fraction."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.value = value % modulus
        self.modulus = modulus

    def _lift(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def __add__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return ModInt(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return ModInt(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return ModInt(v - self.value, self.modulus)

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __mul__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return ModInt(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return ModInt(self.value * pow(v, -1, self.modulus), self.modulus)

    def __rtruediv__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return ModInt(v * pow(self.value, -1, self.modulus), self.modulus)

    def __pow__(self, e: int):
        if e < 0 and self.value == 0:
            raise ZeroToNegativePower(f"0 ** {e} (mod {self.modulus})")
        return ModInt(pow(self.value, e, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __repr__(self):
        return f"ModInt({self.value}, mod {self.modulus})"


class PrimeField:
    """GF(M) element factory for benchmark mode; M must be prime."""

    def __init__(self, modulus: int):
        if not is_prime(modulus):
            raise CompositeModulus(f"{modulus} is not prime")
        self.modulus = modulus

    def __call__(self, x) -> ModInt:
        if isinstance(x, Fraction):
            num = x.numerator % self.modulus
            den = pow(x.denominator, -1, self.modulus)
            return ModInt(num * den, self.modulus)
        return ModInt(int(x), self.modulus)
