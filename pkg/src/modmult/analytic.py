"""Truncated q-series for eta and theta and numerical transformation checks.

This is the end-to-end oracle: the exact characters from modmult.multiplier
must reproduce how the actual functions transform under the group action.
Series are truncated against explicit tail bounds, so a returned value is
accurate to the requested tolerance or the call fails loudly.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .multiplier import (
    nu_eta_half,
    nu_eta_pow2k,
    nu_theta_half,
    nu_theta_pow2k,
)
from .sl2z import (
    GAMMA1,
    GAMMA_THETA,
    I,
    MatZ,
    NotInGammaThetaError,
    generators,
    in_gamma_theta,
    mat_mul,
)

# Denominator floor for relative errors, stops 0/0 without hiding real error.
REL_FLOOR = 1e-300

# Series longer than this lose too much float accuracy to be trusted at the
# default tolerances, so we refuse instead of returning a bad value.
MAX_TERMS = 50_000


class ConvergenceError(ValueError):
    """The truncation bound cannot reach the requested tolerance."""


def _require_upper_half(tau) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half plane")
    return tau


def _require_positive(tol: float) -> float:
    if not tol > 0:
        raise ValueError("tol must be positive")
    return float(tol)


def eta(tau: complex, tol: float = 1e-9) -> complex:
    """q^(1/24) * prod(1 - q^n) with q = exp(2*pi*i*tau), truncated once the
    geometric tail |q|^(N+1)/(1-|q|) drops below tol.

    The prefactor is exp(pi*i*tau/12) computed from tau itself, which keeps
    the 24th root on the correct branch for every real part.
    """
    tau = _require_upper_half(tau)
    tol = _require_positive(tol)
    q = cmath.exp(2j * math.pi * tau)
    terms = _geometric_terms(abs(q), tol)
    prod = 1.0 + 0.0j
    qn = 1.0 + 0.0j
    for _ in range(terms):
        qn *= q
        prod *= 1.0 - qn
    return cmath.exp(1j * math.pi * tau / 12) * prod


def theta(tau: complex, tol: float = 1e-9) -> complex:
    """1 + 2 * sum(p^(n^2)) with p = exp(pi*i*tau), truncated once the tail
    2*|p|^((N+1)^2)/(1-|p|) drops below tol."""
    tau = _require_upper_half(tau)
    tol = _require_positive(tol)
    p = cmath.exp(1j * math.pi * tau)
    ap = abs(p)
    if ap == 0.0:
        return 1.0 + 0.0j
    n = 0
    while 2.0 * ap ** ((n + 1) * (n + 1)) >= tol * (1.0 - ap):
        n += 1
        if n * n > MAX_TERMS:
            raise ConvergenceError(
                "convergence too slow: theta series needs too many terms "
                f"at Im tau = {tau.imag:g} for tol = {tol:g}"
            )
    total = 1.0 + 0.0j
    pk = 1.0 + 0.0j  # p^(n^2), maintained incrementally
    podd = p  # p^(2n-1)
    p2 = p * p
    for _ in range(n):
        pk *= podd
        podd *= p2
        total += 2.0 * pk
    return total


def _geometric_terms(aq: float, tol: float) -> int:
    if aq == 0.0:
        return 0
    if aq >= 1.0:
        raise ConvergenceError("series parameter is not inside the unit disk")
    needed = math.log(tol * (1.0 - aq)) / math.log(aq)
    if needed > MAX_TERMS:
        raise ConvergenceError(
            f"convergence too slow: series needs {needed:.0f} terms for tol = {tol:g}"
        )
    return max(0, math.ceil(needed))


def mobius(m: MatZ, tau: complex) -> complex:
    tau = complex(tau)
    return (m.a * tau + m.b) / (m.c * tau + m.d)


@dataclass(frozen=True)
class CheckResult:
    """Two evaluations of a transformation identity and their distance."""

    lhs: complex
    rhs: complex
    relative_error: float
    passed: bool
    tol: float


def _result(lhs: complex, rhs: complex, tol: float) -> CheckResult:
    rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs), REL_FLOOR)
    return CheckResult(lhs, rhs, rel, rel <= tol, tol)


def check_transformation(
    m: MatZ, k: int, family: str, tau: complex, tol: float = 1e-9
) -> CheckResult:
    """Compare F(m tau) against nu(m) * (c tau + d)^k * F(tau) for
    F = eta^(2k) or theta^(2k)."""
    tau = _require_upper_half(tau)
    tol = _require_positive(tol)
    series_tol = tol * 1e-3
    if family == "eta":
        series, nu = eta, nu_eta_pow2k(m, k)
    elif family == "theta":
        if not in_gamma_theta(m):
            raise NotInGammaThetaError(f"matrix {m} is not in Gamma_theta")
        series, nu = theta, nu_theta_pow2k(m, k)
    else:
        raise ValueError(f"unknown family {family!r}")
    lhs = series(mobius(m, tau), series_tol) ** (2 * k)
    rhs = nu.to_complex() * (m.c * tau + m.d) ** k * series(tau, series_tol) ** (2 * k)
    return _result(lhs, rhs, tol)


def check_transformation_half(
    m: MatZ, family: str, tau: complex, tol: float = 1e-9
) -> CheckResult:
    """Same identity at weight 1/2 with the principal square root, which is
    what pins down the +-1 symbol conventions."""
    tau = _require_upper_half(tau)
    tol = _require_positive(tol)
    series_tol = tol * 1e-3
    if family == "eta":
        series, nu = eta, nu_eta_half(m)
    elif family == "theta":
        if not in_gamma_theta(m):
            raise NotInGammaThetaError(f"matrix {m} is not in Gamma_theta")
        series, nu = theta, nu_theta_half(m)
    else:
        raise ValueError(f"unknown family {family!r}")
    lhs = series(mobius(m, tau), series_tol)
    rhs = nu * cmath.sqrt(m.c * tau + m.d) * series(tau, series_tol)
    return _result(lhs, rhs, tol)


# Sweep sampling: x uniform in (-1, 1), y log-uniform in (0.3, 3).  A word's
# image m(tau) may sit close to the real line; such draws are rejected and
# redrawn instead of degrading accuracy.
MIN_IMAGE_IM = 0.01


@dataclass
class SweepResult:
    """Aggregate of seeded transformation checks."""

    family: str
    weight: str
    checks: int
    passed: int
    worst_relative_error: float
    rejected: int
    failures: list

    @property
    def ok(self) -> bool:
        return self.passed == self.checks and not self.failures

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "weight": self.weight,
            "checks": self.checks,
            "passed": self.passed,
            "worst_relative_error": self.worst_relative_error,
            "rejected": self.rejected,
            "pass": self.ok,
            "failures": list(self.failures),
        }


def transformation_sweep(
    family: str,
    count: int = 100,
    seed: int = 0,
    tol: float = 1e-9,
    half: bool = False,
    max_word_length: int = 10,
) -> SweepResult:
    """Run `count` seeded transformation checks on random words and points."""
    group = GAMMA_THETA if family == "theta" else GAMMA1
    gens = generators(group)
    rng = np.random.default_rng(seed)
    done = 0
    passes = 0
    rejected = 0
    worst = 0.0
    failures = []
    attempts = 0
    max_attempts = 100 * count
    while done < count and attempts < max_attempts:
        attempts += 1
        m = I
        for j in rng.integers(0, len(gens), size=int(rng.integers(0, max_word_length + 1))):
            m = mat_mul(m, gens[j])
        k = int(rng.integers(1, 7)) * (1 if rng.integers(0, 2) else -1)
        x = float(rng.uniform(-1.0, 1.0))
        y = float(np.exp(rng.uniform(np.log(0.3), np.log(3.0))))
        tau = complex(x, y)
        if mobius(m, tau).imag < MIN_IMAGE_IM:
            rejected += 1
            continue
        try:
            if half:
                res = check_transformation_half(m, family, tau, tol)
            else:
                res = check_transformation(m, k, family, tau, tol)
        except ConvergenceError:
            rejected += 1
            continue
        done += 1
        worst = max(worst, res.relative_error)
        if res.passed:
            passes += 1
        else:
            failures.append(
                {"matrix": f"{m.a} {m.b} {m.c} {m.d}", "k": k,
                 "tau": [x, y], "relative_error": res.relative_error}
            )
    if done < count:
        failures.append({"error": f"only {done} of {count} checks completed"})
    return SweepResult(
        family=family,
        weight="half" if half else "even",
        checks=count,
        passed=passes,
        worst_relative_error=worst,
        rejected=rejected,
        failures=failures,
    )
