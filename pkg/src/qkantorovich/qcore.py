"""Floating-point q-arithmetic: q-integers, q-factorials, q-Pochhammer symbols,
q-Gamma/q-Beta at integer arguments and q-Jackson integration.

All functions are pure; a :class:`QContext` carries the deformation parameter
and the truncation policy for the infinite q-series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergenceError, QDomainError, QRangeError, TruncationError

__all__ = [
    "QContext",
    "QInterval",
    "q_integer",
    "q_factorial",
    "log_q_factorial",
    "q_pochhammer",
    "log_q_pochhammer",
    "q_pochhammer_real",
    "q_gamma_int",
    "q_beta_int",
    "log_q_beta_int",
    "q_jackson_integral",
    "q_jackson_integral_many",
    "q_integral_on_interval",
    "q_improper_integral",
]


@dataclass(frozen=True)
class QContext:
    """Deformation parameter ``q`` plus truncation tolerances for q-series."""

    q: float
    series_tol: float = 1e-14
    max_terms: int = 1_000_000

    def __post_init__(self):
        if not (0.0 < self.q <= 1.0):
            raise QDomainError(f"q must lie in (0, 1], got {self.q!r}")
        if not self.series_tol > 0.0:
            raise QDomainError(f"series_tol must be positive, got {self.series_tol!r}")
        if self.max_terms < 1:
            raise QDomainError(f"max_terms must be >= 1, got {self.max_terms!r}")

    @property
    def classical(self) -> bool:
        return self.q == 1.0


@dataclass(frozen=True)
class QInterval:
    """Closed interval ``[a, b]`` with ``0 <= a <= b``."""

    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a <= self.b):
            raise QDomainError(f"need 0 <= a <= b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a


def _require_q_below_one(ctx: QContext) -> None:
    if ctx.q >= 1.0:
        raise QDomainError("q-integrals require q < 1; the Jackson sum is undefined at q = 1")


def q_integer(n, ctx: QContext):
    """Return ``[n]_q = (1 - q**n) / (1 - q)`` (``n`` at ``q = 1``).

    ``n`` may be a non-negative real or an array of them; the real extension
    is the one used for brackets such as ``[n + beta]_q``.
    """
    n_arr = np.asarray(n, dtype=float)
    if np.any(n_arr < 0):
        raise QDomainError(f"q_integer needs n >= 0, got {n!r}")
    if ctx.classical:
        out = n_arr
    else:
        lq = math.log(ctx.q)
        # expm1 keeps 1 - q**n accurate when q is close to 1
        out = -np.expm1(n_arr * lq) / (1.0 - ctx.q)
    return float(out) if out.ndim == 0 else out


def log_q_factorial(n: int, ctx: QContext) -> float:
    """Natural log of ``[n]_q!``; finite for arguments where the product overflows."""
    if n < 0:
        raise QDomainError(f"log_q_factorial needs n >= 0, got {n}")
    if n < 2:
        return 0.0
    return math.fsum(np.log(q_integer(np.arange(1, n + 1), ctx)))


def q_factorial(n: int, ctx: QContext) -> float:
    """``[n]_q [n-1]_q ... [1]_q`` with ``[0]_q! = 1``."""
    if n < 0:
        raise QDomainError(f"q_factorial needs n >= 0, got {n}")
    out = 1.0
    for j in range(2, n + 1):
        out *= q_integer(j, ctx)
    if not math.isfinite(out):
        raise QRangeError(f"[{n}]_q! overflows at q={ctx.q}; use log_q_factorial")
    return out


def log_q_pochhammer(x: float, n: int, ctx: QContext) -> float:
    """Natural log of ``(1 + x)_q^n``."""
    if x < 0 or n < 0:
        raise QDomainError(f"need x >= 0 and n >= 0, got x={x}, n={n}")
    if n == 0 or x == 0.0:
        return 0.0
    return math.fsum(np.log1p(ctx.q ** np.arange(n) * x))


def q_pochhammer(x: float, n: int, ctx: QContext) -> float:
    """Finite product ``(1 + x)(1 + q x) ... (1 + q**(n-1) x)``; ``1`` for ``n = 0``."""
    if x < 0 or n < 0:
        raise QDomainError(f"need x >= 0 and n >= 0, got x={x}, n={n}")
    out = 1.0
    qj = 1.0
    for _ in range(n):
        out *= 1.0 + qj * x
        qj *= ctx.q
    if not math.isfinite(out):
        raise QRangeError(f"(1+{x})_q^{n} overflows; use log_q_pochhammer")
    return out


def q_pochhammer_real(x: float, a: float, ctx: QContext) -> float:
    """``(1 + x)_q^a = (1 + x)_q^inf / (1 + q**a x)_q^inf`` for real ``a``.

    Both infinite products are truncated once ``q**j x`` and ``q**(j+a) x``
    drop below ``series_tol``.
    """
    _require_q_below_one(ctx)
    if x < 0:
        raise QDomainError(f"q_pochhammer_real needs x >= 0, got {x}")
    if x == 0.0:
        return 1.0
    q = ctx.q
    qa = q**a
    terms = []
    qj = 1.0
    for _ in range(ctx.max_terms):
        if qj * x < ctx.series_tol and qj * qa * x < ctx.series_tol:
            return math.exp(math.fsum(terms))
        terms.append(math.log1p(qj * x) - math.log1p(qj * qa * x))
        qj *= q
    raise TruncationError(f"(1+x)_q^a product did not converge in {ctx.max_terms} factors")


def q_gamma_int(n: int, ctx: QContext) -> float:
    """``Gamma_q(n) = [n-1]_q!`` for positive integers."""
    if n < 1:
        raise QDomainError(f"q_gamma_int needs n >= 1, got {n}")
    return q_factorial(n - 1, ctx)


def log_q_beta_int(m: int, n: int, ctx: QContext) -> float:
    if m < 1 or n < 1:
        raise QDomainError(f"q_beta_int needs m, n >= 1, got m={m}, n={n}")
    m, n = min(m, n), max(m, n)
    return log_q_factorial(m - 1, ctx) + log_q_factorial(n - 1, ctx) - log_q_factorial(m + n - 1, ctx)


def q_beta_int(m: int, n: int, ctx: QContext) -> float:
    """``B_q(m, n) = Gamma_q(m) Gamma_q(n) / Gamma_q(m + n)``, evaluated in log space."""
    return math.exp(log_q_beta_int(m, n, ctx))


def q_jackson_integral_many(f: Callable, upper, ctx: QContext) -> np.ndarray:
    """Vectorised ``int_0^a f d_q t = (1 - q) a sum_j f(a q**j) q**j`` for each ``a``.

    ``f`` must accept ndarrays of any shape. A row stops once its geometric
    tail mass ``a q**J`` times the largest ``|f|`` over its last five nodes is
    below ``series_tol`` and at least ten terms have been summed.
    """
    _require_q_below_one(ctx)
    upper = np.atleast_1d(np.asarray(upper, dtype=float))
    if np.any(upper < 0):
        raise QDomainError("q-Jackson integral needs a >= 0")
    q = ctx.q
    total = np.zeros_like(upper)
    active = upper > 0
    j0 = 0
    chunk = 64
    while active.any():
        if j0 >= ctx.max_terms:
            raise TruncationError(f"q-Jackson sum not converged after {ctx.max_terms} terms at q={q}")
        j = np.arange(j0, min(j0 + chunk, ctx.max_terms))
        qj = q ** j.astype(float)
        idx = np.flatnonzero(active)
        a = upper[idx]
        vals = np.asarray(f(a[:, None] * qj[None, :]), dtype=float)
        if vals.shape != (idx.size, j.size):
            vals = np.broadcast_to(vals, (idx.size, j.size))
        if not np.all(np.isfinite(vals)):
            raise QDomainError("integrand is not finite at a q-Jackson node")
        total[idx] += (1.0 - q) * a * (vals @ qj)
        j0 = int(j[-1]) + 1
        local = np.max(np.abs(vals[:, -5:]), axis=1)
        done = (a * q**j0 * local < ctx.series_tol) & (j0 >= 10)
        active[idx[done]] = False
        chunk = min(2 * chunk, 4096)
    return total


def q_jackson_integral(f: Callable, a: float, ctx: QContext) -> float:
    """q-Jackson integral of ``f`` over ``[0, a]``."""
    if a < 0:
        raise QDomainError(f"q-Jackson integral needs a >= 0, got {a}")
    return float(q_jackson_integral_many(f, [a], ctx)[0])


def q_integral_on_interval(f: Callable, iv: QInterval, ctx: QContext) -> float:
    """``int_a^b f d_q t = int_0^b - int_0^a``."""
    lo, hi = q_jackson_integral_many(f, [iv.a, iv.b], ctx)
    return float(hi - lo)


def q_improper_integral(f: Callable, A: float, ctx: QContext, magnitude_cap: float = 1e15) -> float:
    """Two-sided sum ``(1 - q) sum_{j in Z} f(q**j / A) q**j / A``.

    Each direction stops once the largest of its last five terms is below
    ``series_tol`` (after at least ten terms). Partial sums beyond
    ``magnitude_cap`` or non-finite terms raise :class:`DivergenceError`.
    """
    _require_q_below_one(ctx)
    if not A > 0:
        raise QDomainError(f"q_improper_integral needs A > 0, got {A}")
    q = ctx.q
    parts = []
    for sign in (1, -1):
        terms = []
        for j in range(ctx.max_terms):
            t = q ** (sign * j + (0 if sign == 1 else -1)) / A
            if not math.isfinite(t):
                raise DivergenceError("q-improper integral nodes overflowed")
            term = (1.0 - q) * float(f(np.asarray(t))) * t
            if not math.isfinite(term):
                raise DivergenceError(f"non-finite term at node {t}")
            terms.append(term)
            if abs(math.fsum(terms)) > magnitude_cap:
                raise DivergenceError(f"partial sum exceeded {magnitude_cap:g}")
            if len(terms) >= 10 and max(abs(v) for v in terms[-5:]) < ctx.series_tol:
                break
        else:
            raise TruncationError(f"q-improper integral not converged in {ctx.max_terms} terms")
        parts.extend(terms)
    return math.fsum(parts)
