"""Gamma, reciprocal gamma and principal-branch powers.

Every kernel in the package is a product of a power function and a
reciprocal gamma factor, so these three primitives are kept together and
kept strict: ``gamma`` refuses poles, ``rgamma`` is entire (exactly zero
at the poles of gamma), ``cpow`` always stays on the principal branch.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from scipy import special as _sp

from .errors import DomainError, PoleError

POLE_TOL = 1e-12


@dataclass(frozen=True)
class GammaResult:
    """Gamma value together with an explicit pole flag."""

    value: float
    at_pole: bool


def is_gamma_pole(x: float) -> bool:
    """True when x is within POLE_TOL of a non-positive integer."""
    if x > 0.5:
        return False
    n = round(x)
    return n <= 0 and abs(x - n) <= POLE_TOL


def gamma_info(x: float) -> GammaResult:
    if is_gamma_pole(x):
        return GammaResult(value=float("inf"), at_pole=True)
    return GammaResult(value=float(_sp.gamma(x)), at_pole=False)


def gamma(x: float) -> float:
    """Gamma function; raises PoleError at non-positive integers."""
    if is_gamma_pole(x):
        raise PoleError(f"gamma pole at x={x!r}")
    return float(_sp.gamma(x))


def rgamma(x: float) -> float:
    """Reciprocal gamma, entire in x; exactly 0 at non-positive integers."""
    if is_gamma_pole(x):
        return 0.0
    return float(_sp.rgamma(x))


def cpow(s: complex, q: float) -> complex:
    """Principal-branch power s**q, argument of s taken in (-pi, pi]."""
    s = complex(s)
    if s == 0:
        if q > 0:
            return 0j
        raise DomainError(f"0**{q} is undefined for q <= 0")
    return cmath.exp(q * cmath.log(s))
