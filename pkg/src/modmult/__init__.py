"""Exact multiplier-system characters of eta and theta powers.

The even powers eta^(2k) and theta^(2k) carry genuine group characters on
SL(2,Z) and the theta subgroup.  This package evaluates them exactly as
24th-root-of-unity exponents, describes their kernels by congruence data,
resolves coset representatives, and verifies every stored description by
exhaustive enumeration plus numerical q-series cross-checks.
"""

from .analytic import (
    CheckResult,
    ConvergenceError,
    check_transformation,
    check_transformation_half,
    eta,
    mobius,
    theta,
    transformation_sweep,
)
from .kernels import (
    CASES,
    CosetResolution,
    KernelCase,
    Report,
    classify,
    coset_representatives,
    in_kernel_classes,
    in_kernel_formula,
    lift_mod2_to_mod4,
    materialize,
    resolve_coset,
    verify_case,
    verify_coset_claim,
    verify_lemma,
)
from .multiplier import (
    Root24,
    WeightedValue,
    f,
    g,
    jacobi,
    multiplier_value,
    multiplier_value_half,
    nu_eta_half,
    nu_eta_pow2k,
    nu_theta_half,
    nu_theta_pow2k,
    symbol_star_lower,
    symbol_star_upper,
)
from .sl2z import (
    GAMMA1,
    GAMMA_THETA,
    I,
    MatZ,
    NotInGammaThetaError,
    NotUnimodularError,
    ResidueClass,
    S,
    T,
    enumerate_gamma_theta_mod,
    enumerate_sl2_mod,
    format_matrix,
    in_gamma_theta,
    independent_lifts,
    lift_to_sl2z,
    mat_inv,
    mat_mul,
    mat_pow,
    parse_matrix,
    random_word,
    reduce_mod,
)

__version__ = "0.1.0"
