"""Raw and central moments of the Kantorovich-Stancu operators, the second-moment
bound and the auxiliary quantities used by the error estimates.

Two families of formulas live here:

``*_closed``
    the published moment formulas, transcribed as stated. They describe an
    operator that reproduces ``x + q/([2][n+1])`` for ``e_1`` and are kept for
    comparison and errata reporting.

``*_exact``
    moments of the operators implemented in :mod:`qkantorovich.operators`,
    derived from the discrete q-Beta moments. For the ``aligned`` variant with
    cell width ``h = q/[n+1]_q``::

        K0 = 1
        K1 = (2x + h) / [2]_q
        K2 = (3 V2 + 3 h x + h**2) / [3]_q,   V2 = (1/(q[n+1]_q) + 1) x**2 + x/[n+1]_q

    and the Stancu moments follow from the affine shift ``c t + d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import QDomainError
from .functions import monomial
from .operators import OperatorSpec, kantorovich_stancu_apply
from .qcore import QContext, q_integer

__all__ = [
    "kantorovich_moment_closed",
    "stancu_moment_closed",
    "central_moment_closed",
    "discrete_moment_exact",
    "kantorovich_moment_exact",
    "stancu_moment_exact",
    "central_moment_exact",
    "second_moment_bound",
    "AuxQuantities",
    "aux_quantities",
    "MomentReport",
    "build_moment_report",
    "errata",
]


def _check_order(m: int, allowed=(0, 1, 2)) -> None:
    if m not in allowed:
        raise QDomainError(f"moment order must be one of {allowed}, got {m}")


def _brackets(n: int, ctx: QContext):
    return (
        q_integer(n, ctx),
        q_integer(n + 1, ctx),
        q_integer(n + 2, ctx),
        q_integer(2, ctx),
        q_integer(3, ctx),
    )


def _stancu_constant(spec: OperatorSpec) -> float:
    """``(q[n] + alpha [2][n+1]) / ([2]([n] + beta)[n+1])``, the published first-moment offset."""
    q = spec.q
    nq, n1, _, b2, _ = _brackets(spec.n, spec.ctx)
    a, b = spec.stancu.alpha, spec.stancu.beta
    return (q * nq + a * b2 * n1) / (b2 * (nq + b) * n1)


def kantorovich_moment_closed(m: int, n: int, ctx: QContext, x):
    """Published raw moments of the Kantorovich operator for ``e_0, e_1, e_2``."""
    _check_order(m)
    x = np.asarray(x, dtype=float)
    q = ctx.q
    _, n1, n2, b2, b3 = _brackets(n, ctx)
    if m == 0:
        out = np.ones_like(x)
    elif m == 1:
        out = x + q / (b2 * n1)
    else:
        out = (
            q ** (n - 2) * n2 / n1 * x**2
            + (q ** (n - 1) / n1 + (2 * q + 1) / (n1 * b3)) * x
            + q / (n1**2 * b3)
        )
    return float(out) if out.ndim == 0 else out


def stancu_moment_closed(m: int, spec: OperatorSpec, x):
    """Published raw moments of the Kantorovich-Stancu operator for ``e_0, e_1, e_2``."""
    _check_order(m)
    x = np.asarray(x, dtype=float)
    q = spec.q
    nq, n1, n2, b2, b3 = _brackets(spec.n, spec.ctx)
    a, b = spec.stancu.alpha, spec.stancu.beta
    D = nq + b
    if m == 0:
        out = np.ones_like(x)
    elif m == 1:
        out = nq * x / D + _stancu_constant(spec)
    else:
        c2 = nq**2 / D**2
        out = (
            c2 * q ** (spec.n - 2) * n2 / n1 * x**2
            + (c2 * (q ** (spec.n - 1) / n1 + (2 * q + 1) / (b3 * n1)) + 2 * nq * a / D**2) * x
            + c2 * q / (b3 * n1**2)
            + 2 * q * nq * a / (b2 * n1 * D**2)
            + a**2 / D**2
        )
    return float(out) if out.ndim == 0 else out


def central_moment_closed(m: int, spec: OperatorSpec, x):
    """Published central moments ``L((t - x)^m)`` for ``m = 1, 2``."""
    _check_order(m, (1, 2))
    x = np.asarray(x, dtype=float)
    q = spec.q
    nq, n1, n2, b2, b3 = _brackets(spec.n, spec.ctx)
    a, b = spec.stancu.alpha, spec.stancu.beta
    D = nq + b
    const1 = _stancu_constant(spec)
    if m == 1:
        out = (nq / D - 1.0) * x + const1
    else:
        c2 = nq**2 / D**2
        out = (
            (c2 * q ** (spec.n - 2) * n2 / n1 + 1.0 - 2.0 * nq / D) * x**2
            + (c2 * (q ** (spec.n - 1) / n1 + (2 * q + 1) / (b3 * n1)) + 2 * nq * a / D**2 - 2.0 * const1) * x
            + c2 * q / (b3 * n1**2)
            + 2 * q * nq * a / (b2 * n1 * D**2)
            + a**2 / D**2
        )
    return float(out) if out.ndim == 0 else out


def discrete_moment_exact(m: int, n: int, ctx: QContext, x):
    """Raw moments of the discrete q-Beta operator: ``1``, ``x`` and
    ``(1/(q[n+1]) + 1) x**2 + x/[n+1]``."""
    _check_order(m)
    x = np.asarray(x, dtype=float)
    n1 = q_integer(n + 1, ctx)
    if m == 0:
        out = np.ones_like(x)
    elif m == 1:
        out = x.copy()
    else:
        out = (1.0 / (ctx.q * n1) + 1.0) * x**2 + x / n1
    return float(out) if out.ndim == 0 else out


def kantorovich_moment_exact(m: int, spec: OperatorSpec, x):
    """Raw moments of the implemented Kantorovich operator (no Stancu shift).

    The ``literal`` variant has closed forms for ``m <= 1`` only.
    """
    _check_order(m)
    x = np.asarray(x, dtype=float)
    q = spec.q
    n1 = spec.n1q
    b2, b3 = q_integer(2, spec.ctx), q_integer(3, spec.ctx)
    if spec.variant == "aligned":
        h = q / n1
        if m == 0:
            out = np.ones_like(x)
        elif m == 1:
            out = (2.0 * x + h) / b2
        else:
            v2 = discrete_moment_exact(2, spec.n, spec.ctx, x)
            out = (3.0 * v2 + 3.0 * h * x + h * h) / b3
    else:
        if m == 0:
            out = q + (1.0 - q) * n1 * x
        elif m == 1:
            out = 2.0 * x / b2 + q / (b2 * n1)
        else:
            raise NotImplementedError("the literal variant has no closed-form second moment")
    return float(out) if np.ndim(out) == 0 else out


def _literal_prefactor(spec: OperatorSpec) -> float:
    b = spec.stancu.beta
    if spec.variant != "literal" or b == 0.0:
        return 1.0
    ctx = spec.ctx
    return (q_integer(spec.n + b + 1, ctx) / q_integer(spec.n + b, ctx)) / (spec.n1q / spec.nq)


def stancu_moment_exact(m: int, spec: OperatorSpec, x):
    """Raw moments of the implemented Kantorovich-Stancu operator."""
    _check_order(m)
    nq = spec.nq
    D = nq + spec.stancu.beta
    c, d = nq / D, spec.stancu.alpha / D
    k = [kantorovich_moment_exact(j, spec, x) for j in range(m + 1)]
    if m == 0:
        out = k[0]
    elif m == 1:
        out = c * k[1] + d * k[0]
    else:
        out = c * c * k[2] + 2.0 * c * d * k[1] + d * d * k[0]
    return _literal_prefactor(spec) * out


def central_moment_exact(m: int, spec: OperatorSpec, x):
    """``L((t - x)^m; x)`` of the implemented operator, ``m = 1, 2``."""
    _check_order(m, (1, 2))
    x = np.asarray(x, dtype=float)
    l0 = stancu_moment_exact(0, spec, x)
    l1 = stancu_moment_exact(1, spec, x)
    if m == 1:
        return l1 - x * l0
    l2 = stancu_moment_exact(2, spec, x)
    return l2 - 2.0 * x * l1 + x * x * l0


def second_moment_bound(spec: OperatorSpec, x):
    """``[n+1]_q / ([n]_q + beta)**2 * (x(1+x) + q/([3]_q [n+1]_q))``."""
    if spec.stancu.alpha > spec.stancu.beta:
        raise QDomainError("second_moment_bound needs alpha <= beta")
    x = np.asarray(x, dtype=float)
    n1 = spec.n1q
    D = spec.nq + spec.stancu.beta
    out = n1 / D**2 * (x * (1.0 + x) + spec.q / (q_integer(3, spec.ctx) * n1))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class AuxQuantities:
    """Quantities entering the local error estimate at one point ``x``.

    ``eta`` is the operator's actual first moment; ``eta_published`` keeps the
    published first-moment formula for comparison.
    """

    eta: float
    phi_sq: float
    delta_n_sq: float
    moment_bound: float
    eta_published: float


def aux_quantities(spec: OperatorSpec, x: float) -> AuxQuantities:
    phi_sq = x * (1.0 + x)
    return AuxQuantities(
        eta=float(stancu_moment_exact(1, spec, x)),
        phi_sq=phi_sq,
        delta_n_sq=phi_sq + spec.q / (q_integer(3, spec.ctx) * spec.n1q),
        moment_bound=float(second_moment_bound(spec, x)),
        eta_published=float(stancu_moment_closed(1, spec, x)),
    )


@dataclass(frozen=True)
class MomentReport:
    """Numeric moment against the published formula and the derived oracle.

    ``abs_diff``/``rel_diff`` compare with the published formula,
    ``oracle_abs_diff``/``oracle_rel_diff`` with the derived closed form.
    Relative differences are taken against ``max(1, |numeric|)``; the report
    passes when either relative difference is within ``tolerance``.
    """

    spec: OperatorSpec
    x: float
    order: int
    closed_form: float
    oracle: float
    numeric: float
    abs_diff: float
    rel_diff: float
    oracle_abs_diff: float
    oracle_rel_diff: float
    tolerance: float

    @property
    def matches_closed(self) -> bool:
        return self.rel_diff <= self.tolerance

    @property
    def matches_oracle(self) -> bool:
        return self.oracle_rel_diff <= self.tolerance

    @property
    def passed(self) -> bool:
        return self.matches_closed or self.matches_oracle


def build_moment_report(
    spec: OperatorSpec, x: float, m: int, numeric: Optional[float] = None, tolerance: float = 1e-9
) -> MomentReport:
    """Compare ``L(e_m; x)`` with both formula families.

    ``numeric`` may be supplied when the caller has already evaluated the
    operator (e.g. vectorised over a grid); otherwise it is computed here.
    """
    if numeric is None:
        numeric = float(kantorovich_stancu_apply(monomial(m), spec, x))
    closed = float(stancu_moment_closed(m, spec, x))
    try:
        oracle = float(stancu_moment_exact(m, spec, x))
    except NotImplementedError:
        oracle = float("nan")
    scale = max(1.0, abs(numeric))
    ad = abs(closed - numeric)
    oad = abs(oracle - numeric)
    return MomentReport(
        spec=spec,
        x=float(x),
        order=m,
        closed_form=closed,
        oracle=oracle,
        numeric=float(numeric),
        abs_diff=ad,
        rel_diff=ad / scale,
        oracle_abs_diff=oad,
        oracle_rel_diff=oad / scale if np.isfinite(oad) else float("inf"),
        tolerance=tolerance,
    )


def errata(reports: Iterable[MomentReport]) -> list:
    """Reports whose numeric value disagrees with the published formula."""
    return [r for r in reports if not r.matches_closed]
