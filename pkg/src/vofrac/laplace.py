"""Laplace transform engine.

Forward transforms are computed as two real half-line quadratures per
grid point (real and imaginary parts of exp(-s t) psi(t)), with a
Gauss-Jacobi head when psi carries a fractional power at the origin.
The regularized (finite-part) transform gives meaning to powers t**mu
with mu <= -1, where the classical integral diverges: the divergent part
of the integrand is modelled by its leading power and replaced by the
analytic continuation of its primitive, which is what makes the
frozen-order symbol well defined.  Inversion uses the fixed-Talbot
contour.

The frozen evaluation point of a variable order is a distinct piece of
state (``FrozenOrder``) from the transform's own time variable; the API
never lets the two be conflated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import AbscissaError, ContourError, DomainError, SingularAtOrigin, ValidationError
from .functions import ScalarFunction
from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    integrate_endpoint_singular,
    integrate_halfline,
    integrate_smooth,
)
from .special import cpow, is_gamma_pole, rgamma

__all__ = [
    "ComplexGrid",
    "TransformSample",
    "FrozenOrder",
    "default_grid",
    "forward_lt",
    "regularized_power_lt",
    "finite_part_lt",
    "coimbra_symbol",
    "inverse_lt",
    "lt_of_derivative",
]


@dataclass(frozen=True)
class ComplexGrid:
    """Finite set of transform sample points right of the abscissa."""

    points: tuple
    abscissa: float

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if self.abscissa <= 0:
            raise ValidationError("abscissa must be positive")
        if not pts:
            raise ValidationError("grid must be nonempty")
        if len(set(pts)) != len(pts):
            raise ValidationError("grid points must be distinct")
        if any(p.real < self.abscissa - 1e-12 for p in pts):
            raise ValidationError("all points must satisfy Re(s) >= abscissa")


def default_grid() -> ComplexGrid:
    """Eight points: the ray Re(s)=2 with Im in {0,+-1,+-2} plus {3, 5, 9}."""
    pts = (2 + 0j, 2 + 1j, 2 - 1j, 2 + 2j, 2 - 2j, 3 + 0j, 5 + 0j, 9 + 0j)
    return ComplexGrid(points=pts, abscissa=2.0)


@dataclass(frozen=True)
class TransformSample:
    grid: ComplexGrid
    values: tuple
    method: str
    converged: Optional[tuple] = None

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(self.grid.points):
            raise ValidationError("values must align with grid points")


@dataclass(frozen=True)
class FrozenOrder:
    """A variable order evaluated and held fixed at t_prime.

    t_prime is bookkeeping for where the order was frozen; it is distinct
    from, and never substituted for, the transform's integration variable.
    """

    t_prime: float
    sigma: float
    value: float

    def __post_init__(self):
        if not 0.0 < self.value < 1.0:
            raise ValidationError(f"frozen order {self.value} outside (0, 1)")


def _growth(psi: ScalarFunction) -> tuple[float, float]:
    return psi.growth_bound if psi.growth_bound is not None else (1.0, 0.0)


def _halfline_parts(f, start: float, decay: float, cfg: QuadConfig, c: float):
    re = integrate_halfline(lambda t: float(np.real(f(t))), start, decay, cfg, c)
    im = integrate_halfline(lambda t: float(np.imag(f(t))), start, decay, cfg, c)
    return re.value + 1j * im.value, re.converged and im.converged


def forward_lt(
    psi: ScalarFunction, grid: ComplexGrid, cfg: QuadConfig = DEFAULT_CONFIG
) -> TransformSample:
    """Classical transform: integral of exp(-s t) psi(t) over [0, inf)."""
    c, rate = _growth(psi)
    if rate >= grid.abscissa:
        raise AbscissaError(f"growth rate {rate} is not below abscissa {grid.abscissa}")
    p = psi.origin_power
    if p is not None and p <= -1.0:
        raise SingularAtOrigin(
            f"t**{p} is not locally integrable at 0; use the regularized transform"
        )
    fractional_head = p is not None and p < 1.0 and abs(p - round(p)) > 1e-12
    vals = []
    flags = []
    for s in grid.points:
        decay = s.real - rate
        if fractional_head:
            # split at t=1: Jacobi head absorbs t**p, adaptive tail beyond

            def g_re(u, s=s):
                return np.real(psi.eval(u) * u ** (-p) * np.exp(-s * u))

            def g_im(u, s=s):
                return np.imag(psi.eval(u) * u ** (-p) * np.exp(-s * u))

            h_re = integrate_endpoint_singular(g_re, 0.0, 1.0, p, at_upper=False, cfg=cfg)
            h_im = integrate_endpoint_singular(g_im, 0.0, 1.0, p, at_upper=False, cfg=cfg)
            tail, tail_ok = _halfline_parts(
                lambda t, s=s: psi.eval(t) * np.exp(-s * t), 1.0, decay, cfg, c
            )
            vals.append(h_re.value + 1j * h_im.value + tail)
            flags.append(h_re.converged and h_im.converged and tail_ok)
        else:
            val, ok = _halfline_parts(
                lambda t, s=s: psi.eval(t) * np.exp(-s * t), 0.0, decay, cfg, c
            )
            vals.append(val)
            flags.append(ok)
    return TransformSample(
        grid=grid, values=tuple(vals), method="classical_quadrature", converged=tuple(flags)
    )


def regularized_power_lt(mu: float, grid: ComplexGrid) -> TransformSample:
    """Analytic-continuation transform of t**mu: Gamma(mu+1) * s**(-mu-1).

    Entire in mu after reciprocal-gamma normalization; at the poles of
    Gamma(mu+1) the normalized family member vanishes and 0 is returned.
    """
    g = rgamma(mu + 1.0)
    if g == 0.0:
        vals = tuple(0j for _ in grid.points)
    else:
        vals = tuple(cpow(s, -(mu + 1.0)) / g for s in grid.points)
    return TransformSample(grid=grid, values=vals, method="regularized_power")


def finite_part_lt(
    f: Callable[[float], complex],
    lead_coeff: float,
    lead_exponent: float,
    grid: ComplexGrid,
    cfg: QuadConfig = DEFAULT_CONFIG,
    eps: float = 1e-4,
    decay_rate_margin: float = 0.0,
) -> TransformSample:
    """Hadamard finite-part transform of f, with f(t) ~ lead_coeff * t**mu near 0.

    The counterterm on [0, eps] is the analytic continuation of the
    leading power's primitive (expanded against the exponential kernel);
    the difference f - model is integrated numerically on (0, eps], and
    the classical tail covers [eps, inf).  Exact when f is the model
    itself, which is every closed-form case in scope.
    """
    mu = lead_exponent
    if mu > -1.0:
        raise DomainError("lead exponent > -1 is classically integrable; use forward_lt")
    if is_gamma_pole(mu + 1.0):
        raise DomainError(f"integer lead exponent {mu} is outside the power family")
    n_terms = 24
    vals = []
    flags = []
    for s in grid.points:
        model = 0j
        for k in range(n_terms):
            pk = mu + k + 1.0
            model += (-s) ** k / math.factorial(k) * eps**pk / pk
        model *= lead_coeff

        def diff(t, s=s):
            return (f(t) - lead_coeff * t**mu) * np.exp(-s * t)

        d_re = integrate_smooth(lambda t: float(np.real(diff(t))), 1e-12, eps, cfg)
        d_im = integrate_smooth(lambda t: float(np.imag(diff(t))), 1e-12, eps, cfg)
        decay = s.real - decay_rate_margin
        tail, tail_ok = _halfline_parts(lambda t, s=s: f(t) * np.exp(-s * t), eps, decay, cfg, 1.0)
        vals.append(model + d_re.value + 1j * d_im.value + tail)
        flags.append(tail_ok)
    return TransformSample(
        grid=grid, values=tuple(vals), method="regularized_power", converged=tuple(flags)
    )


def coimbra_symbol(frozen: FrozenOrder, grid: ComplexGrid) -> TransformSample:
    """The frozen-order symbol s**xi(sigma, t_prime), constant in time."""
    vals = tuple(cpow(s, frozen.value) for s in grid.points)
    return TransformSample(grid=grid, values=vals, method="closed_form")


def inverse_lt(F: Callable[[complex], complex], t: float, talbot_nodes: int = 32) -> float:
    """Fixed-Talbot approximation of the Bromwich inversion integral at t > 0.

    Accuracy is not certified -- inversion is ill-posed; use known pairs
    to validate a given F.
    """
    if t <= 0:
        raise DomainError("inverse transform requires t > 0")
    if talbot_nodes < 16:
        raise DomainError("talbot_nodes must be >= 16")
    m = talbot_nodes
    r = 2.0 * m / (5.0 * t)
    theta = np.pi * np.arange(1, m) / m
    cot = np.cos(theta) / np.sin(theta)
    s_nodes = r * theta * (cot + 1j)
    sigma = theta + (theta * cot - 1.0) * cot
    try:
        f0 = complex(F(complex(r)))
        fs = np.array([complex(F(complex(sn))) for sn in s_nodes])
    except Exception as exc:
        raise ContourError(f"transform evaluation failed on the Talbot contour: {exc}") from exc
    terms = np.exp(t * s_nodes) * fs * (1.0 + 1j * sigma)
    return float((r / m) * (0.5 * math.exp(r * t) * f0.real + np.sum(terms.real)))


def lt_of_derivative(
    psi: ScalarFunction,
    grid: ComplexGrid,
    cfg: QuadConfig = DEFAULT_CONFIG,
    mode: str = "rule",
) -> TransformSample:
    """Transform of psi' -- either s*Psi(s) - psi(0) or a direct quadrature.

    mode="rule" applies the classical first-derivative rule; mode="direct"
    transforms the derivative itself so the two can be compared.
    """
    if mode == "rule":
        base = forward_lt(psi, grid, cfg)
        psi0 = float(psi.eval(0.0))
        vals = tuple(s * v - psi0 for s, v in zip(grid.points, base.values))
        return TransformSample(
            grid=grid, values=vals, method="closed_form", converged=base.converged
        )
    if mode == "direct":
        dpsi = ScalarFunction(
            eval=psi.derivative,
            sigma=psi.sigma,
            growth_bound=psi.growth_bound,
            name=f"d/dt {psi.name}" if psi.name else "",
        )
        return forward_lt(dpsi, grid, cfg)
    raise DomainError(f"unknown mode {mode!r}")
