"""Basis weights of the discrete q-Beta operator and the three operator families
built on them: discrete q-Beta, its Kantorovich modification and the
Kantorovich-Stancu generalisation.

Every operator is a weighted k-sum ``sum_k w_k(x) * m_k(f)`` where ``w_k`` are
the normalised basis weights ``p_{n,k}(q; x) / [n]_q`` (times a variant scale)
and ``m_k`` is a point value or a q-average of ``f`` over a cell. The k-sum is
generated by the forward ratio recurrence in log space and truncated once a
geometric majorant of the neglected terms drops below ``k_tail_tol``.

Two variants of the Kantorovich cells are available:

``aligned`` (default)
    cell ``[[k]_q, [k+1]_q] / ([n+1]_q q**(k-1))`` whose left end is the node
    of the discrete operator, weight ``1`` after normalisation. Equivalently the
    q-integral of ``f(q**(1-k) t)`` over ``[[k]_q, [k+1]_q] / [n+1]_q`` with
    weight ``q**-k``. Reproduces constants exactly.

``literal``
    cell ``[[k]_q, [k+1]_q] / [n+1]_q`` with weight ``q**(1-2k)`` and, for the
    Stancu form, the prefactor ``[n+beta+1]_q / [n+beta]_q``. Kept for
    comparison: it maps ``1`` to ``q + (1 - q**(n+1)) x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import QDomainError, TruncationError
from .functions import TargetFunction, compose_affine
from .qcore import (
    QContext,
    log_q_beta_int,
    log_q_pochhammer,
    q_integer,
    q_jackson_integral_many,
)

__all__ = [
    "VARIANTS",
    "StancuParams",
    "OperatorSpec",
    "basis_weight",
    "basis_weight_ratio",
    "stancu_shift",
    "discrete_beta_apply",
    "kantorovich_apply",
    "kantorovich_stancu_apply",
    "drifting_q",
]

VARIANTS = ("aligned", "literal")


@dataclass(frozen=True)
class StancuParams:
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.alpha <= self.beta):
            raise QDomainError(f"Stancu parameters need 0 <= alpha <= beta, got {self.alpha}, {self.beta}")


@dataclass(frozen=True)
class OperatorSpec:
    """Identifies one operator: order ``n``, q-context, Stancu shift, truncation policy."""

    n: int
    ctx: QContext
    stancu: StancuParams = field(default_factory=StancuParams)
    k_tail_tol: float = 1e-13
    k_max: int = 100_000
    variant: str = "aligned"

    def __post_init__(self):
        if self.n < 1:
            raise QDomainError(f"operator order n must be >= 1, got {self.n}")
        if not self.k_tail_tol > 0:
            raise QDomainError("k_tail_tol must be positive")
        if self.k_max < 1:
            raise QDomainError("k_max must be >= 1")
        if self.variant not in VARIANTS:
            raise QDomainError(f"variant must be one of {VARIANTS}, got {self.variant!r}")

    @property
    def q(self) -> float:
        return self.ctx.q

    @property
    def nq(self) -> float:
        return q_integer(self.n, self.ctx)

    @property
    def n1q(self) -> float:
        return q_integer(self.n + 1, self.ctx)


def drifting_q(n: int) -> float:
    """Default convergence schedule ``q_n = 1 - 1/n``."""
    return 1.0 - 1.0 / n


def basis_weight(n: int, k: int, x: float, ctx: QContext) -> float:
    """``p_{n,k}(q; x) = q**(k(k-1)/2) / B_q(k+1, n) * x**k / (1+x)_q^(n+k+1)``, in log space."""
    if x < 0:
        raise QDomainError(f"basis_weight needs x >= 0, got {x}")
    if x == 0.0:
        return q_integer(n, ctx) if k == 0 else 0.0
    log_p = (
        0.5 * k * (k - 1) * math.log(ctx.q)
        - log_q_beta_int(k + 1, n, ctx)
        + k * math.log(x)
        - log_q_pochhammer(x, n + k + 1, ctx)
    )
    return math.exp(log_p)


def basis_weight_ratio(n: int, k: int, x: float, ctx: QContext) -> float:
    """``p_{n,k+1} / p_{n,k} = q**k [n+k+1]_q x / ([k+1]_q (1 + q**(n+k+1) x))``."""
    if not x > 0:
        raise QDomainError(f"basis_weight_ratio needs x > 0, got {x}")
    q = ctx.q
    return q**k * q_integer(n + k + 1, ctx) * x / (q_integer(k + 1, ctx) * (1.0 + q ** (n + k + 1) * x))


def stancu_shift(t, n: int, stancu: StancuParams, ctx: QContext):
    """``([n]_q t + alpha) / ([n]_q + beta)``."""
    nq = q_integer(n, ctx)
    return (nq * np.asarray(t, dtype=float) + stancu.alpha) / (nq + stancu.beta)


def _require_operator_q(spec: OperatorSpec) -> None:
    if spec.q >= 1.0:
        raise QDomainError("operators are defined for 0 < q < 1")


def _log_weights(spec: OperatorSpec, x: np.ndarray, K: int) -> np.ndarray:
    """``log(p_{n,k}(q; x) / [n]_q)`` for ``k < K``, one row per ``x``."""
    q, n = spec.q, spec.n
    lq = math.log(q)
    out = np.full((x.size, K), -np.inf)
    pos = x > 0
    out[~pos, 0] = 0.0
    if not pos.any():
        return out
    xp = x[pos]
    j = np.arange(n + 1)
    log_w0 = -np.sum(np.log1p(np.outer(xp, q ** j.astype(float))), axis=1)
    if K > 1:
        k = np.arange(K - 1, dtype=float)
        const = k * lq + np.log(q_integer(n + k + 1, spec.ctx)) - np.log(q_integer(k + 1, spec.ctx))
        log_r = const[None, :] + np.log(xp)[:, None] - np.log1p(np.outer(xp, q ** (n + k + 1)))
        out[pos, 1:] = log_w0[:, None] + np.cumsum(log_r, axis=1)
    out[pos, 0] = log_w0
    return out


class _Cells:
    """Per-k geometry of one operator: log scale of the weight, cell ends or nodes."""

    def __init__(self, spec: OperatorSpec, kind: str, K: int):
        q = spec.q
        k = np.arange(K, dtype=float)
        n1 = spec.n1q
        qk = q_integer(k, spec.ctx)
        qk1 = q_integer(k + 1, spec.ctx)
        with np.errstate(over="ignore"):
            if kind == "discrete":
                self.u = qk * q ** (1.0 - k) / n1
                self.v = self.u
                self.width = None
                self.log_scale = np.zeros(K)
            elif spec.variant == "aligned":
                s = q ** (1.0 - k)
                self.u = qk * s / n1
                self.v = qk1 * s / n1
                self.width = np.full(K, q / n1)
                self.log_scale = np.zeros(K)
            else:
                self.u = qk / n1
                self.v = qk1 / n1
                self.width = q**k / n1
                self.log_scale = (1.0 - k) * math.log(q)
        self.K = K


def _poly_cell_means(coeffs, u, v, ctx: QContext, absolute=False) -> np.ndarray:
    """q-average over ``[u, v]`` of a polynomial, via ``sum_i v**i u**(m-i) / [m+1]_q``."""
    out = np.zeros_like(u)
    power_sum = np.zeros_like(u)  # sum_{i<=m} v^i u^(m-i), built incrementally
    u_pow = np.ones_like(u)
    for m, c in enumerate(coeffs):
        power_sum = power_sum * v + u_pow
        u_pow = u_pow * u
        if c != 0.0:
            coef = abs(c) if absolute else c
            out += coef * power_sum / q_integer(m + 1, ctx)
    return out


def _shift_params(spec: OperatorSpec, kind: str):
    if kind != "stancu":
        return 1.0, 0.0
    nq = spec.nq
    return nq / (nq + spec.stancu.beta), spec.stancu.alpha / (nq + spec.stancu.beta)


def _prefactor(spec: OperatorSpec, kind: str) -> float:
    if kind == "stancu" and spec.variant == "literal" and spec.stancu.beta != 0.0:
        b = spec.stancu.beta
        ctx = spec.ctx
        printed = q_integer(spec.n + b + 1, ctx) / q_integer(spec.n + b, ctx)
        return printed / (spec.n1q / spec.nq)
    return 1.0


def _envelope_bound(f: TargetFunction, cells: _Cells, scale: float, shift: float, ctx: QContext) -> np.ndarray:
    """Upper bound on ``|m_k(f)|`` used only to size the neglected tail."""
    if f.coeffs is not None:
        g = compose_affine(f.coeffs, scale, shift)
        if cells.width is None:
            return np.abs(np.polyval(np.abs(g)[::-1], cells.u))
        return _poly_cell_means(g, cells.u, cells.v, ctx, absolute=True)
    env = f.envelope(scale * cells.v + shift)
    if cells.width is None:
        return env
    return env * (cells.u + cells.v) / cells.width


def _cell_means(f: TargetFunction, cells: _Cells, scale: float, shift: float, ctx: QContext) -> np.ndarray:
    if cells.width is None:
        nodes = scale * cells.u + shift
        f.check_growth(nodes)
        return f(nodes)
    if f.coeffs is not None:
        return _poly_cell_means(compose_affine(f.coeffs, scale, shift), cells.u, cells.v, ctx)
    f.check_growth(scale * cells.v + shift)

    def g(t):
        return f(scale * t + shift)

    ends = np.concatenate([cells.u, cells.v])
    uniq, inv = np.unique(ends, return_inverse=True)
    integrals = q_jackson_integral_many(g, uniq, ctx)[inv]
    lo, hi = integrals[: cells.K], integrals[cells.K:]
    return (hi - lo) / cells.width


def _tail_ok(log_terms: np.ndarray, tol: float) -> np.ndarray:
    """Rows whose neglected tail beyond the last column is provably below ``tol``.

    The last three term ratios must be < 1 and non-increasing; the tail is then
    majorised by ``T_last * rho / (1 - rho)`` with ``rho`` the last ratio.
    """
    last = log_terms[:, -4:]
    with np.errstate(invalid="ignore"):
        log_ratios = np.diff(last, axis=1)
    zero_tail = np.isneginf(last[:, -1])
    decreasing = np.all(log_ratios < 0, axis=1) & np.all(np.diff(log_ratios, axis=1) <= 1e-12, axis=1)
    rho = np.exp(np.where(decreasing, log_ratios[:, -1], 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        tail = np.exp(last[:, -1]) * rho / (1.0 - rho)
    return zero_tail | (decreasing & (tail < tol))


def _apply(f: TargetFunction, spec: OperatorSpec, x, kind: str):
    _require_operator_q(spec)
    x_arr = np.asarray(x, dtype=float).ravel()
    if np.any(x_arr < 0) or not np.all(np.isfinite(x_arr)):
        raise QDomainError("operators are evaluated at finite x >= 0")
    scale, shift = _shift_params(spec, kind)
    K = 32
    while True:
        if K > spec.k_max:
            raise TruncationError(f"k-sum not converged within k_max={spec.k_max} terms")
        cells = _Cells(spec, kind if kind == "discrete" else "kantorovich", K)
        log_w = _log_weights(spec, x_arr, K) + (cells.log_scale if kind != "discrete" else 0.0)
        with np.errstate(divide="ignore"):
            log_env = np.log(_envelope_bound(f, cells, scale, shift, spec.ctx))
        if not np.all(np.isfinite(cells.v)):
            raise TruncationError("cell endpoints overflowed before the k-sum converged")
        if np.all(_tail_ok(log_w + log_env[None, :], spec.k_tail_tol)):
            break
        K *= 2
    means = _cell_means(f, cells, scale, shift, spec.ctx)
    out = (np.exp(log_w) @ means) * _prefactor(spec, kind)
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def discrete_beta_apply(f: TargetFunction, spec: OperatorSpec, x):
    """Discrete q-Beta operator ``(1/[n]_q) sum_k p_{n,k}(q;x) f([k]_q / ([n+1]_q q**(k-1)))``."""
    return _apply(f, spec, x, "discrete")


def kantorovich_apply(f: TargetFunction, spec: OperatorSpec, x):
    """Kantorovich modification (no Stancu shift) in the variant selected by ``spec``."""
    return _apply(f, spec, x, "kantorovich")


def kantorovich_stancu_apply(f: TargetFunction, spec: OperatorSpec, x):
    """Kantorovich-Stancu operator: the Kantorovich operator applied to ``f`` composed
    with ``t -> ([n]_q t + alpha) / ([n]_q + beta)``."""
    return _apply(f, spec, x, "stancu")
