"""Exact arithmetic on SL(2,Z), its theta subgroup, and reductions mod N.

Everything here is an immutable value or a pure function, so the module is
safe to use from any number of threads.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

SUPPORTED_MODULI = (2, 3, 4, 12)

# Entries are kept inside a 64-bit budget so matrices round-trip losslessly
# through the int64 array kernels in modmult.batch.
ENTRY_LIMIT = 1 << 62

GAMMA1 = "gamma1"
GAMMA_THETA = "gamma_theta"
GROUPS = (GAMMA1, GAMMA_THETA)


class NotUnimodularError(ValueError):
    """Four integers that do not form a determinant-1 matrix."""


class NotInGammaThetaError(ValueError):
    """An operation required membership in the theta subgroup."""


@dataclass(frozen=True)
class MatZ:
    """Integer matrix (a, b; c, d) with determinant exactly 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for x in (self.a, self.b, self.c, self.d):
            if abs(x) >= ENTRY_LIMIT:
                raise OverflowError("entries exceed supported magnitude")
        if self.a * self.d - self.b * self.c != 1:
            raise NotUnimodularError(
                f"determinant of ({self.a}, {self.b}; {self.c}, {self.d}) is not 1"
            )

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "MatZ") -> "MatZ":
        return mat_mul(self, other)

    def __pow__(self, n: int) -> "MatZ":
        return mat_pow(self, n)

    def __neg__(self) -> "MatZ":
        return MatZ(-self.a, -self.b, -self.c, -self.d)

    def __str__(self) -> str:
        return format_matrix(self)


I = MatZ(1, 0, 0, 1)
S = MatZ(1, 1, 0, 1)
T = MatZ(0, -1, 1, 0)


def mat_mul(m1: MatZ, m2: MatZ) -> MatZ:
    """Matrix product; construction re-checks the determinant and entry bound."""
    return MatZ(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def mat_inv(m: MatZ) -> MatZ:
    """Inverse of (a, b; c, d), i.e. the adjugate (d, -b; -c, a)."""
    return MatZ(m.d, -m.b, -m.c, m.a)


def mat_pow(m: MatZ, n: int) -> MatZ:
    """m**n by binary exponentiation; negative n goes through the inverse."""
    if n < 0:
        return mat_pow(mat_inv(m), -n)
    result = I
    base = m
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base_needed = n >> 1
        if base_needed:
            base = mat_mul(base, base)
        n = base_needed
    return result


def in_gamma_theta(m: MatZ) -> bool:
    """True iff a = d and b = c modulo 2."""
    return (m.a - m.d) % 2 == 0 and (m.b - m.c) % 2 == 0


@dataclass(frozen=True)
class ResidueClass:
    """A 2x2 matrix over Z/NZ with determinant 1; entries canonical in [0, N)."""

    modulus: int
    entries: tuple[int, int, int, int]

    def __post_init__(self):
        if self.modulus not in SUPPORTED_MODULI:
            raise ValueError(f"unsupported modulus {self.modulus}")
        n = self.modulus
        entries = tuple(int(x) % n for x in self.entries)
        object.__setattr__(self, "entries", entries)
        a, b, c, d = entries
        if (a * d - b * c) % n != 1:
            raise NotUnimodularError(
                f"determinant of {entries} is not 1 mod {n}"
            )

    def reduce(self, n: int) -> "ResidueClass":
        """Push the class down to a divisor modulus."""
        if self.modulus % n != 0:
            raise ValueError(f"{n} does not divide modulus {self.modulus}")
        return ResidueClass(n, self.entries)

    def __str__(self) -> str:
        a, b, c, d = self.entries
        return f"{a} {b} {c} {d} (mod {self.modulus})"


def reduce_mod(m: MatZ, n: int) -> ResidueClass:
    """Entrywise reduction of a determinant-1 matrix mod n."""
    if n not in SUPPORTED_MODULI:
        raise ValueError(f"unsupported modulus {n}")
    return ResidueClass(n, (m.a % n, m.b % n, m.c % n, m.d % n))


@lru_cache(maxsize=None)
def enumerate_sl2_mod(n: int) -> tuple[ResidueClass, ...]:
    """All of SL(2, Z/nZ), duplicate-free, in lexicographic entry order."""
    if n not in SUPPORTED_MODULI:
        raise ValueError(f"unsupported modulus {n}")
    return tuple(
        ResidueClass(n, q)
        for q in product(range(n), repeat=4)
        if (q[0] * q[3] - q[1] * q[2]) % n == 1
    )


@lru_cache(maxsize=None)
def enumerate_gamma_theta_mod(n: int) -> tuple[ResidueClass, ...]:
    """Classes mod n that contain theta-group matrices (n must be even)."""
    if n % 2 != 0:
        raise ValueError("entry parity is not determined modulo an odd number")
    return tuple(
        r
        for r in enumerate_sl2_mod(n)
        if (r.entries[0] - r.entries[3]) % 2 == 0
        and (r.entries[1] - r.entries[2]) % 2 == 0
    )


@lru_cache(maxsize=None)
def lift_to_sl2z(r: ResidueClass) -> MatZ:
    """A small determinant-1 matrix reducing to r mod its modulus.

    Scans entry shifts by multiples of the modulus in growing shells and keeps
    the candidate with the smallest maximum entry, so the result is
    deterministic.  A shell always eventually contains a lift because
    SL(2,Z) -> SL(2,Z/NZ) is onto.
    """
    n = r.modulus
    a, b, c, d = r.entries
    radius = 1
    while True:
        best = None
        for sa, sb, sc, sd in product(range(-radius, radius + 1), repeat=4):
            ca = a + sa * n
            cb = b + sb * n
            cc = c + sc * n
            cd = d + sd * n
            if ca * cd - cb * cc == 1:
                cand = (ca, cb, cc, cd)
                key = (max(abs(ca), abs(cb), abs(cc), abs(cd)),
                       abs(ca) + abs(cb) + abs(cc) + abs(cd), cand)
                if best is None or key < best[0]:
                    best = (key, cand)
        if best is not None:
            return MatZ(*best[1])
        radius += 1


def independent_lifts(r: ResidueClass, count: int = 3) -> tuple[MatZ, ...]:
    """Distinct lifts of r, obtained by right-multiplying the base lift by
    matrices congruent to the identity mod the modulus."""
    n = r.modulus
    shifts = (
        I,
        MatZ(1, n, 0, 1),
        MatZ(1, 0, n, 1),
        MatZ(1 + n, n, -n, 1 - n),
        MatZ(1, 2 * n, 0, 1),
    )
    if not 1 <= count <= len(shifts):
        raise ValueError(f"count must be between 1 and {len(shifts)}")
    base = lift_to_sl2z(r)
    return tuple(mat_mul(base, w) for w in shifts[:count])


def generators(group: str) -> tuple[MatZ, ...]:
    """Word alphabet for a group: S, T and inverses, with S replaced by S^2
    for the theta subgroup."""
    if group == GAMMA1:
        return (S, T, mat_inv(S), mat_inv(T))
    if group == GAMMA_THETA:
        s2 = mat_mul(S, S)
        return (s2, T, mat_inv(s2), mat_inv(T))
    raise ValueError(f"unknown group {group!r}")


def random_word(group: str, length: int, seed: int) -> MatZ:
    """Product of `length` generators chosen by a seeded PRNG.

    The result is always a member of the requested group; the same seed gives
    the same matrix.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    gens = generators(group)
    rng = np.random.default_rng(seed)
    m = I
    for j in rng.integers(0, len(gens), size=int(length)):
        m = mat_mul(m, gens[j])
    return m


def parse_matrix(text: str) -> MatZ:
    """Parse the wire format: four whitespace-separated integers "a b c d"."""
    parts = text.split()
    if len(parts) != 4:
        raise ValueError('matrix text must be four integers "a b c d"')
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"matrix text has a non-integer token: {text!r}") from None
    return MatZ(*nums)


def format_matrix(m: MatZ) -> str:
    return f"{m.a} {m.b} {m.c} {m.d}"
