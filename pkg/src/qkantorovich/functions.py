"""Target functions with declared growth classes, and the test-function catalog."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional, Union

import numpy as np

from .errors import GrowthError

__all__ = [
    "Bounded",
    "WeightDominated",
    "TargetFunction",
    "FunctionCatalogEntry",
    "polynomial",
    "monomial",
    "compose_affine",
    "build_catalog",
]


@dataclass(frozen=True)
class Bounded:
    """``|f(x)| <= M`` on ``[0, inf)``."""

    M: float

    def envelope(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.M)


@dataclass(frozen=True)
class WeightDominated:
    """``|f(x)| <= M (1 + x**(2 + gamma))`` on ``[0, inf)``."""

    M: float
    gamma: float = 0.0

    def envelope(self, t):
        t = np.asarray(t, dtype=float)
        return self.M * (1.0 + t ** (2.0 + self.gamma))


Growth = Union[Bounded, WeightDominated]


@dataclass(frozen=True)
class TargetFunction:
    """A vectorised real function on ``[0, inf)`` plus its growth metadata.

    ``coeffs`` (ascending powers) marks a polynomial; the operators then use
    exact monomial q-integrals instead of Jackson sums.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    growth: Growth
    nondecreasing: bool = False
    coeffs: Optional[tuple] = None
    name: str = "f"

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return np.asarray(self.fn(t), dtype=float) * np.ones_like(t)

    def envelope(self, t):
        return self.growth.envelope(t)

    def check_growth(self, t, rtol: float = 1e-12) -> None:
        t = np.asarray(t, dtype=float)
        vals = np.abs(self(t))
        env = self.envelope(t)
        bad = vals > env * (1.0 + rtol) + 1e-300
        if np.any(bad):
            i = np.flatnonzero(bad.ravel())[0]
            raise GrowthError(
                f"{self.name}: |f({t.ravel()[i]:.6g})| = {vals.ravel()[i]:.6g} exceeds "
                f"declared envelope {env.ravel()[i]:.6g}"
            )


def _poly_eval(coeffs):
    c = np.asarray(coeffs, dtype=float)[::-1]
    return lambda t: np.polyval(c, t)


def _poly_growth(coeffs) -> Growth:
    c = np.abs(np.asarray(coeffs, dtype=float))
    deg = len(c) - 1
    if deg == 0:
        return Bounded(float(c[0]))
    # |sum c_m t^m| <= sum |c_m| (1 + t^2) for deg <= 2, else use t^deg
    if deg <= 2:
        return WeightDominated(float(c.sum()), 0.0)
    return WeightDominated(float(c.sum()), float(deg - 2))


def polynomial(coeffs, name: Optional[str] = None, nondecreasing: Optional[bool] = None) -> TargetFunction:
    """Polynomial target with ascending coefficients ``coeffs``."""
    coeffs = tuple(float(c) for c in coeffs)
    if nondecreasing is None:
        # all non-negative coefficients is a sufficient condition on [0, inf)
        nondecreasing = all(c >= 0 for c in coeffs[1:])
    return TargetFunction(
        fn=_poly_eval(coeffs),
        growth=_poly_growth(coeffs),
        nondecreasing=nondecreasing,
        coeffs=coeffs,
        name=name or f"poly{coeffs}",
    )


def monomial(m: int) -> TargetFunction:
    return polynomial([0.0] * m + [1.0], name=f"e{m}", nondecreasing=True)


def compose_affine(coeffs, scale: float, shift: float) -> tuple:
    """Coefficients of ``p(scale * t + shift)`` given those of ``p``."""
    out = [0.0] * len(coeffs)
    for m, c in enumerate(coeffs):
        if c == 0.0:
            continue
        for i in range(m + 1):
            out[i] += c * comb(m, i) * scale**i * shift ** (m - i)
    return tuple(out)


@dataclass(frozen=True)
class FunctionCatalogEntry:
    name: str
    f: TargetFunction
    lipschitz: Optional[tuple] = None  # (exponent, constant) when f is in Lip_L(exponent)
    linear: bool = False
    analytic_moduli: dict = field(default_factory=dict)


def build_catalog(x_max: float = 10.0, samples: int = 10_000) -> dict:
    """Catalog of test functions, growth metadata verified on ``[0, x_max]``."""
    entries = [
        FunctionCatalogEntry("e0", monomial(0), lipschitz=(1.0, 0.0), linear=True,
                             analytic_moduli={"omega": lambda d: 0.0, "omega2": lambda d: 0.0}),
        FunctionCatalogEntry("e1", monomial(1), lipschitz=(1.0, 1.0), linear=True,
                             analytic_moduli={"omega": lambda d: d, "omega2": lambda d: 0.0}),
        FunctionCatalogEntry("e2", monomial(2), analytic_moduli={"omega2": lambda d: 2.0 * d * d}),
        FunctionCatalogEntry(
            "x_over_1px",
            TargetFunction(lambda t: t / (1.0 + t), Bounded(1.0), nondecreasing=True, name="x_over_1px"),
            lipschitz=(1.0, 1.0),
        ),
        FunctionCatalogEntry(
            "x2_over_1px",
            TargetFunction(lambda t: t * t / (1.0 + t), WeightDominated(1.0, 0.0), nondecreasing=True,
                           name="x2_over_1px"),
        ),
        FunctionCatalogEntry(
            "abs_half",
            TargetFunction(lambda t: np.abs(t - 0.5), WeightDominated(1.0, 0.0), name="abs_half"),
            lipschitz=(1.0, 1.0),
        ),
        FunctionCatalogEntry(
            "abs_half_clipped",
            TargetFunction(lambda t: np.minimum(np.abs(t - 0.5), 1.0), Bounded(1.0), name="abs_half_clipped"),
            lipschitz=(1.0, 1.0),
        ),
        FunctionCatalogEntry(
            "sqrt_clipped",
            TargetFunction(lambda t: np.sqrt(np.minimum(t, 1.0)), Bounded(1.0), nondecreasing=True,
                           name="sqrt_clipped"),
            lipschitz=(0.5, 1.0),
        ),
        FunctionCatalogEntry(
            "sigmoid",
            TargetFunction(np.tanh, Bounded(1.0), nondecreasing=True, name="sigmoid"),
            lipschitz=(1.0, 1.0),
        ),
    ]
    t = np.linspace(0.0, x_max, samples)
    for e in entries:
        e.f.check_growth(t)
        if e.f.nondecreasing and np.any(np.diff(e.f(t)) < -1e-15):
            raise GrowthError(f"{e.name} is flagged nondecreasing but decreases on [0, {x_max}]")
    return {e.name: e for e in entries}
