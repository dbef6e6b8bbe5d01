"""Multiplier-system characters of even powers of eta and theta.

The even-power characters take values in the 24th roots of unity and are
evaluated exactly as integer exponents mod 24.  The weight-1/2 multipliers
(the square roots the characters come from) involve extended Jacobi symbols
and are returned as floating-point unit complex numbers; their conventions
are validated numerically by modmult.analytic.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .sl2z import MatZ, NotInGammaThetaError


@dataclass(frozen=True)
class Root24:
    """exp(2*pi*i*e/24), stored as the exponent e mod 24.

    Multiplication adds exponents, so equality of character values is an
    integer comparison with no floating-point error.
    """

    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", int(self.exponent) % 24)

    def __mul__(self, other: "Root24") -> "Root24":
        return Root24(self.exponent + other.exponent)

    def __pow__(self, n: int) -> "Root24":
        return Root24(self.exponent * n)

    def inverse(self) -> "Root24":
        return Root24(-self.exponent)

    @property
    def is_one(self) -> bool:
        return self.exponent == 0

    def to_complex(self) -> complex:
        return cmath.exp(1j * math.pi * self.exponent / 12)

    def __str__(self) -> str:
        return f"exp(2*pi*i*{self.exponent}/24)"


ONE = Root24(0)


def f(m: MatZ) -> int:
    """Integer exponent datum of the eta-power characters, branching on the
    parity of c."""
    a, b, c, d = m.entries()
    if c % 2 != 0:
        return (a + d) * c - b * d * (c * c - 1) - 3 * c
    return (a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d


def g(m: MatZ) -> int:
    """Integer exponent datum of the theta-power characters.

    The two parity branches cover exactly the theta group, so the branch test
    doubles as the membership check.
    """
    a, b, c, d = m.entries()
    if b % 2 == 1 and c % 2 == 1 and a % 2 == 0 and d % 2 == 0:
        return -c
    if a % 2 == 1 and d % 2 == 1 and b % 2 == 0 and c % 2 == 0:
        return d - 1
    raise NotInGammaThetaError(f"matrix {m} is not in Gamma_theta")


def nu_eta_pow2k(m: MatZ, k: int) -> Root24:
    """Character value of the 2k-th eta power: exp(k*pi*i*f(m)/6)."""
    return Root24(2 * k * f(m))


def nu_theta_pow2k(m: MatZ, k: int) -> Root24:
    """Character value of the 2k-th theta power: exp(k*pi*i*g(m)/2)."""
    return Root24(6 * k * g(m))


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, by quadratic reciprocity.

    (a/1) = 1 for every a (empty product); 0 when gcd(a, n) > 1.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("lower argument must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def symbol_star_upper(d: int, c: int) -> int:
    """The +-1 symbol used on the odd-c branch: the Jacobi symbol (d/|c|)."""
    if c % 2 == 0:
        raise ValueError("c must be odd")
    if math.gcd(c, d) != 1:
        raise ValueError(f"arguments must be coprime, got ({d}, {c})")
    return jacobi(d, abs(c))


def symbol_star_lower(c: int, d: int) -> int:
    """The +-1 symbol used on the even-c branch: (c/|d|), negated when both
    c and d are negative (sign 0 counts as positive)."""
    if d % 2 == 0:
        raise ValueError("d must be odd")
    if math.gcd(c, d) != 1:
        raise ValueError(f"arguments must be coprime, got ({c}, {d})")
    s = jacobi(c, abs(d))
    if c < 0 and d < 0:
        s = -s
    return s


def nu_eta_half(m: MatZ) -> complex:
    """Weight-1/2 eta multiplier: a +-1 symbol times exp(pi*i*f(m)/12)."""
    _, _, c, d = m.entries()
    sign = symbol_star_upper(d, c) if c % 2 != 0 else symbol_star_lower(c, d)
    return sign * cmath.exp(1j * math.pi * f(m) / 12)


def nu_theta_half(m: MatZ) -> complex:
    """Weight-1/2 theta multiplier: a +-1 symbol times exp(pi*i*g(m)/4)."""
    gv = g(m)
    _, _, c, d = m.entries()
    sign = symbol_star_upper(d, c) if c % 2 != 0 else symbol_star_lower(c, d)
    return sign * cmath.exp(1j * math.pi * gv / 4)


@dataclass(frozen=True)
class WeightedValue:
    """A unimodular multiplier value paired with the weight it belongs to."""

    root: Root24 | complex
    weight: Fraction

    def __post_init__(self):
        if abs(abs(self.value) - 1.0) > 1e-12:
            raise ValueError("multiplier values must have modulus 1")

    @property
    def value(self) -> complex:
        if isinstance(self.root, Root24):
            return self.root.to_complex()
        return self.root


def multiplier_value(m: MatZ, k: int, family: str) -> WeightedValue:
    """Exact character value of eta^(2k) or theta^(2k), weight k."""
    if family == "eta":
        return WeightedValue(nu_eta_pow2k(m, k), Fraction(k))
    if family == "theta":
        return WeightedValue(nu_theta_pow2k(m, k), Fraction(k))
    raise ValueError(f"unknown family {family!r}")


def multiplier_value_half(m: MatZ, family: str) -> WeightedValue:
    """Floating weight-1/2 multiplier of eta or theta."""
    if family == "eta":
        return WeightedValue(nu_eta_half(m), Fraction(1, 2))
    if family == "theta":
        return WeightedValue(nu_theta_half(m), Fraction(1, 2))
    raise ValueError(f"unknown family {family!r}")
