"""Variable-order fractional integrals and Caputo-type derivatives.

The kernel (phi(t) - phi(s))**p is rewritten as (t-s)**p * w(s)**p with
w(s) = (phi(t) - phi(s)) / (t - s), which is smooth and bounded away from
zero for a monotone scale, so every integral reduces to the Gauss-Jacobi
endpoint-singular form.  The order is frozen at the outer evaluation
point t throughout the inner integration; sigma rides along inside the
function objects and is never integrated over.

The derivative kernels are implemented exactly as defined, with no extra
scale-derivative factor inside the integrand.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, OrderRangeError
from .functions import Interval, OrderFunction, ScalarFunction, ScaleFunction
from .quadrature import DEFAULT_CONFIG, QuadConfig, integrate_endpoint_singular
from .special import rgamma

__all__ = [
    "vo_integral_left",
    "vo_integral_right",
    "vo_caputo_left",
    "vo_caputo_right",
    "caputo_const_left",
]


def _check_left_point(iv: Interval, t: float) -> None:
    if not iv.a <= t <= iv.b:
        raise DomainError(f"t={t} outside [{iv.a}, {iv.b}]")


def _check_right_point(iv: Interval, t: float) -> None:
    if not iv.a <= t <= iv.b:
        raise DomainError(f"t={t} outside [{iv.a}, {iv.b}]")


def _ratio_left(phi: ScaleFunction, t: float, s: np.ndarray) -> np.ndarray:
    # (phi(t)-phi(s))/(t-s); nodes are strictly interior so t-s never vanishes
    return (phi.eval(t) - np.asarray(phi.eval(s), dtype=float)) / (t - s)


def _ratio_right(phi: ScaleFunction, t: float, s: np.ndarray) -> np.ndarray:
    return (np.asarray(phi.eval(s), dtype=float) - phi.eval(t)) / (s - t)


def vo_integral_left(
    psi: ScalarFunction,
    xi: OrderFunction,
    phi: ScaleFunction,
    iv: Interval,
    t: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> float:
    """Left fractional integral of variable order with respect to phi."""
    _check_left_point(iv, t)
    phi.ensure_valid(iv)
    order = xi(psi.sigma, t)
    if t == iv.a:  # empty integral, value 0 by continuity
        return 0.0

    def g(s):
        return _ratio_left(phi, t, s) ** (order - 1.0) * phi.deriv(s) * psi.eval(s)

    r = integrate_endpoint_singular(g, iv.a, t, order - 1.0, at_upper=True, cfg=cfg)
    return r.value * rgamma(order)


def vo_integral_right(
    psi: ScalarFunction,
    xi: OrderFunction,
    phi: ScaleFunction,
    iv: Interval,
    t: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> float:
    """Right fractional integral, kernel (phi(s) - phi(t))**(order-1) on [t, b]."""
    _check_right_point(iv, t)
    phi.ensure_valid(iv)
    order = xi(psi.sigma, t)
    if t == iv.b:
        return 0.0

    def g(s):
        return _ratio_right(phi, t, s) ** (order - 1.0) * phi.deriv(s) * psi.eval(s)

    r = integrate_endpoint_singular(g, t, iv.b, order - 1.0, at_upper=False, cfg=cfg)
    return r.value * rgamma(order)


def vo_caputo_left(
    psi: ScalarFunction,
    xi: OrderFunction,
    phi: ScaleFunction,
    iv: Interval,
    t: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> float:
    """Left Caputo-type derivative of variable order with respect to phi."""
    _check_left_point(iv, t)
    phi.ensure_valid(iv)
    order = xi(psi.sigma, t)
    if t == iv.a:
        return 0.0

    def g(s):
        return _ratio_left(phi, t, s) ** (-order) * psi.derivative(s)

    r = integrate_endpoint_singular(g, iv.a, t, -order, at_upper=True, cfg=cfg)
    return r.value * rgamma(1.0 - order)


def vo_caputo_right(
    psi: ScalarFunction,
    xi: OrderFunction,
    phi: ScaleFunction,
    iv: Interval,
    t: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> float:
    """Right Caputo-type derivative; carries the leading -1 factor."""
    _check_right_point(iv, t)
    phi.ensure_valid(iv)
    order = xi(psi.sigma, t)
    if t == iv.b:
        return 0.0

    def g(s):
        return _ratio_right(phi, t, s) ** (-order) * psi.derivative(s)

    r = integrate_endpoint_singular(g, t, iv.b, -order, at_upper=False, cfg=cfg)
    return -r.value * rgamma(1.0 - order)


def caputo_const_left(
    psi: ScalarFunction,
    xi_const: float,
    iv: Interval,
    t: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> float:
    """Constant-order left Caputo derivative, identity scale.

    Kept as an independent code path (plain (t-s)**(-xi) kernel, no scale
    ratio) so the variable-order reduction can be tested against it.
    """
    if not 0.0 < xi_const < 1.0:
        raise OrderRangeError(f"order {xi_const} is outside (0, 1)")
    _check_left_point(iv, t)
    if t == iv.a:
        return 0.0

    def g(s):
        return np.asarray(psi.derivative(s), dtype=float)

    r = integrate_endpoint_singular(g, iv.a, t, -xi_const, at_upper=True, cfg=cfg)
    return r.value * rgamma(1.0 - xi_const)
