"""Kantorovich-Stancu variants of q-Beta operators: q-calculus primitives,
operators, closed-form moments, moduli of smoothness and an experiment harness."""

from .errors import DivergenceError, GrowthError, QDomainError, QRangeError, TruncationError
from .functions import (
    Bounded,
    FunctionCatalogEntry,
    TargetFunction,
    WeightDominated,
    build_catalog,
    monomial,
    polynomial,
)
from .operators import (
    OperatorSpec,
    StancuParams,
    basis_weight,
    basis_weight_ratio,
    discrete_beta_apply,
    kantorovich_apply,
    kantorovich_stancu_apply,
    stancu_shift,
)
from .qcore import QContext, QInterval, q_beta_int, q_factorial, q_integer, q_jackson_integral, q_pochhammer

__version__ = "0.1.0"
