"""Domain types for the operator layer.

``ScalarFunction`` carries the time function together with its frozen
parameter sigma, an optional analytic first derivative (central finite
differences otherwise, flagged so reports can tell), an optional
exponential-order certificate and an optional leading power at the
origin.  ``OrderFunction`` enforces the open-interval order constraint on
every evaluation.  ``ScaleFunction`` validates monotonicity and the
nonvanishing derivative on each working interval it is used with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import OrderRangeError, ValidationError

__all__ = ["Interval", "ScalarFunction", "OrderFunction", "ScaleFunction"]


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a < self.b < math.inf):
            raise ValidationError(f"interval must satisfy 0 <= a < b < inf, got [{self.a}, {self.b}]")


@dataclass
class ScalarFunction:
    """Real function of t with frozen parameter sigma.

    ``origin_power`` declares the leading behaviour psi(t) ~ c * t**p near
    t=0; p <= -1 marks the function as not locally integrable, which the
    classical transform refuses.  ``growth_bound`` = (C, rate) certifies
    |psi(t)| <= C exp(rate * t).
    """

    eval: Callable[[np.ndarray], np.ndarray]
    deriv: Optional[Callable[[np.ndarray], np.ndarray]] = None
    sigma: float = 0.0
    growth_bound: Optional[tuple[float, float]] = None
    origin_power: Optional[float] = None
    fd_step: float = 1e-6
    name: str = ""

    @property
    def uses_fd_derivative(self) -> bool:
        return self.deriv is None

    def __call__(self, t):
        return self.eval(t)

    def derivative(self, t):
        if self.deriv is not None:
            return self.deriv(t)
        t = np.asarray(t, dtype=float)
        h = np.maximum(self.fd_step, self.fd_step * np.abs(t))
        return (self.eval(t + h) - self.eval(t - h)) / (2.0 * h)

    def check_growth_bound(self, iv: Interval) -> None:
        """Spot-check the exponential-order certificate on a 50-point grid."""
        if self.growth_bound is None:
            return
        c, rate = self.growth_bound
        ts = np.linspace(iv.a, iv.b, 50)
        vals = np.abs(np.asarray(self.eval(ts), dtype=float))
        bound = c * np.exp(rate * ts)
        if np.any(vals > bound * (1.0 + 1e-9)):
            raise ValidationError(f"growth bound (C={c}, rate={rate}) violated for {self.name or 'function'}")


@dataclass
class OrderFunction:
    """Variable order xi(sigma, t), constrained to the open interval (0, 1)."""

    eval: Callable[[float, float], float]
    name: str = ""

    def __call__(self, sigma: float, t: float) -> float:
        v = float(self.eval(sigma, t))
        if not 0.0 < v < 1.0:
            raise OrderRangeError(f"order {v} at (sigma={sigma}, t={t}) is outside (0, 1)")
        return v

    def is_constant(self, sigma: float, ts) -> bool:
        vals = [float(self.eval(sigma, float(t))) for t in ts]
        return max(vals) - min(vals) <= 1e-14


@dataclass
class ScaleFunction:
    """Monotone C^1 scale phi with nonvanishing first derivative."""

    eval: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    name: str = ""
    _checked: set = field(default_factory=set, repr=False, compare=False)

    def ensure_valid(self, iv: Interval) -> None:
        """Check monotonicity and deriv != 0 on a 100-point interior grid.

        Endpoints are excluded so scales like t**2 on [0, b] pass; the
        kernels only ever evaluate phi at interior points.
        """
        key = (iv.a, iv.b)
        if key in self._checked:
            return
        ts = np.linspace(iv.a, iv.b, 102)[1:-1]
        d = np.asarray(self.deriv(ts), dtype=float)
        if np.any(d == 0.0) or np.any(~np.isfinite(d)):
            raise ValidationError(f"scale derivative vanishes on [{iv.a}, {iv.b}]")
        v = np.asarray(self.eval(ts), dtype=float)
        dv = np.diff(v)
        if not (np.all(dv > 0) or np.all(dv < 0)):
            raise ValidationError(f"scale is not strictly monotone on [{iv.a}, {iv.b}]")
        self._checked.add(key)
