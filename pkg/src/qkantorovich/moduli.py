"""Grid estimators for moduli of continuity and smoothness.

Every modulus is a maximum over a uniform x-grid and the step grid
``h = delta * j / H`` (``j = 1..H``), so it is a lower bound of the true
supremum that tightens as the grids are refined.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import QDomainError
from .functions import TargetFunction
from .qcore import QInterval

__all__ = [
    "ModulusQuery",
    "modulus_omega",
    "modulus_omega2",
    "modulus_weighted",
    "modulus_ditzian_totik_1",
    "modulus_ditzian_totik_2",
    "step_grid",
]


@dataclass(frozen=True)
class ModulusQuery:
    f: TargetFunction
    delta: float
    domain: QInterval
    grid_points: int = 2001
    h_subdivisions: int = 64

    def __post_init__(self):
        if not self.delta > 0:
            raise QDomainError(f"delta must be positive, got {self.delta}")
        if self.grid_points < 3:
            raise QDomainError("grid_points must be >= 3")
        if self.h_subdivisions < 1:
            raise QDomainError("h_subdivisions must be >= 1")
        if not self.domain.b > self.domain.a:
            raise QDomainError("modulus domain must have positive length")


def step_grid(delta: float, h_subdivisions: int) -> np.ndarray:
    """``delta * j / H`` for ``j = 1..H``; the last step is exactly ``delta``."""
    return delta * np.arange(1, h_subdivisions + 1) / h_subdivisions


def _masked_max(values: np.ndarray, mask: np.ndarray) -> float:
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(values[mask])))


def modulus_omega(qry: ModulusQuery) -> float:
    """``sup |f(x+h) - f(x)|`` over ``0 < h <= delta`` with ``x, x+h`` in the domain."""
    a, b = qry.domain.a, qry.domain.b
    xs = np.linspace(a, b, qry.grid_points)
    hs = step_grid(qry.delta, qry.h_subdivisions)
    shifted = xs[None, :] + hs[:, None]
    mask = shifted <= b
    diff = qry.f(np.minimum(shifted, b)) - qry.f(xs)[None, :]
    return _masked_max(diff, mask)


def modulus_omega2(qry: ModulusQuery) -> float:
    """``sup |f(x+2h) - 2f(x+h) + f(x)|`` with ``x + 2h`` in the domain."""
    a, b = qry.domain.a, qry.domain.b
    xs = np.linspace(a, b, qry.grid_points)
    hs = step_grid(qry.delta, qry.h_subdivisions)
    x1 = xs[None, :] + hs[:, None]
    x2 = xs[None, :] + 2.0 * hs[:, None]
    mask = x2 <= b
    diff = qry.f(np.minimum(x2, b)) - 2.0 * qry.f(np.minimum(x1, b)) + qry.f(xs)[None, :]
    return _masked_max(diff, mask)


def modulus_weighted(
    f: TargetFunction,
    delta: float,
    gamma: float,
    x_max: float = 10.0,
    grid_points: int = 2001,
    h_subdivisions: int = 64,
) -> float:
    """``sup |f(x+h) - f(x)| / (1 + (x+h)**(2+gamma))`` over ``x in [0, x_max]``, ``0 < h <= delta``."""
    if not delta > 0 or gamma < 0 or not x_max > 0:
        raise QDomainError("need delta > 0, gamma >= 0 and x_max > 0")
    xs = np.linspace(0.0, x_max, grid_points)
    hs = step_grid(delta, h_subdivisions)
    shifted = xs[None, :] + hs[:, None]
    diff = np.abs(f(shifted) - f(xs)[None, :]) / (1.0 + shifted ** (2.0 + gamma))
    return float(np.max(diff))


def _unit(x):
    return np.ones_like(x)


def modulus_ditzian_totik_1(
    f: TargetFunction,
    delta: float,
    psi: Optional[Callable] = None,
    domain: QInterval = QInterval(0.0, 2.0),
    grid_points: int = 2001,
    h_subdivisions: int = 64,
) -> float:
    """First-order modulus with step weight ``psi``: ``sup |f(x + h psi(x)) - f(x)|``,
    ``0 < h <= sqrt(delta)``, ``x + h psi(x)`` in the domain. ``psi`` defaults to ``1``."""
    if not delta > 0:
        raise QDomainError(f"delta must be positive, got {delta}")
    psi = psi or _unit
    a, b = domain.a, domain.b
    xs = np.linspace(a, b, grid_points)
    w = np.asarray(psi(xs), dtype=float)
    if np.any(w < 0):
        raise QDomainError("step weight must be non-negative on the domain")
    hs = step_grid(np.sqrt(delta), h_subdivisions)
    shifted = xs[None, :] + hs[:, None] * w[None, :]
    mask = (shifted >= a) & (shifted <= b)
    diff = f(np.clip(shifted, a, b)) - f(xs)[None, :]
    return _masked_max(diff, mask)


def modulus_ditzian_totik_2(
    f: TargetFunction,
    delta: float,
    phi: Optional[Callable] = None,
    domain: QInterval = QInterval(0.0, 2.0),
    grid_points: int = 2001,
    h_subdivisions: int = 64,
) -> float:
    """Second-order modulus with step weight ``phi``:
    ``sup |f(x + h phi(x)) - 2 f(x) + f(x - h phi(x))|``, ``0 < h <= sqrt(delta)``,
    both ``x +- h phi(x)`` in the domain. ``phi`` defaults to ``1``."""
    if not delta > 0:
        raise QDomainError(f"delta must be positive, got {delta}")
    phi = phi or _unit
    a, b = domain.a, domain.b
    xs = np.linspace(a, b, grid_points)
    w = np.asarray(phi(xs), dtype=float)
    if np.any(w < 0):
        raise QDomainError("step weight must be non-negative on the domain")
    hs = step_grid(np.sqrt(delta), h_subdivisions)
    step = hs[:, None] * w[None, :]
    up = xs[None, :] + step
    lo = xs[None, :] - step
    mask = (lo >= a) & (up <= b)
    diff = f(np.clip(up, a, b)) - 2.0 * f(xs)[None, :] + f(np.clip(lo, a, b))
    return _masked_max(diff, mask)
