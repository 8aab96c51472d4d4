"""Case definitions: the declarative function catalog and the case-file parser.

Case files are JSON.  Functions, orders and scales are chosen from a
fixed catalog of named forms with numeric parameters -- no expression
interpreter, no code execution -- so files stay portable and safe.  The
default verification battery is itself expressed in this format and
parsed through the same code path.
"""

from __future__ import annotations

import json

from typing import Optional

import numpy as np

from .checker import DEFAULT_T_EVAL, IdentityCase
from .errors import ParseError, ValidationError
from .functions import Interval, OrderFunction, ScalarFunction, ScaleFunction
from .laplace import ComplexGrid, default_grid

__all__ = [
    "make_function",
    "make_order",
    "make_scale",
    "make_grid",
    "parse_case_file",
    "parse_cases",
    "default_battery",
    "DEFAULT_BATTERY_SPEC",
]


def _probe_growth(fn, rate: float = 0.5, t_max: float = 80.0) -> tuple[float, float]:
    ts = np.linspace(1e-6, t_max, 400)
    c = float(np.max(np.abs(fn(ts)) * np.exp(-rate * ts)))
    return (1.5 * max(c, 1.0), rate)


def _need(spec: dict, key: str, where: str):
    if key not in spec:
        raise ParseError(f"{where}: missing field {key!r}")
    return spec[key]


def make_scale(spec: dict) -> ScaleFunction:
    form = _need(spec, "form", "scale")
    if form == "identity":
        return ScaleFunction(eval=lambda t: np.asarray(t, dtype=float), deriv=lambda t: np.ones_like(np.asarray(t, dtype=float)), name="t")
    if form == "linear":
        c = float(_need(spec, "c", "scale.linear"))
        if c == 0:
            raise ValidationError("linear scale requires c != 0")
        return ScaleFunction(eval=lambda t: c * np.asarray(t, dtype=float), deriv=lambda t: c * np.ones_like(np.asarray(t, dtype=float)), name=f"{c}*t")
    if form == "power":
        k = float(_need(spec, "k", "scale.power"))
        if k < 1:
            raise ValidationError("power scale requires k >= 1")
        return ScaleFunction(eval=lambda t: np.asarray(t, dtype=float) ** k, deriv=lambda t: k * np.asarray(t, dtype=float) ** (k - 1.0), name=f"t**{k}")
    if form == "quadratic":
        a = float(spec.get("a", 1.0))
        b = float(spec.get("b", 0.5))
        return ScaleFunction(
            eval=lambda t: a * np.asarray(t, dtype=float) + b * np.asarray(t, dtype=float) ** 2,
            deriv=lambda t: a + 2.0 * b * np.asarray(t, dtype=float),
            name=f"{a}*t+{b}*t**2",
        )
    if form == "exp":
        c = float(_need(spec, "c", "scale.exp"))
        if c == 0:
            raise ValidationError("exp scale requires c != 0")
        return ScaleFunction(
            eval=lambda t: np.exp(c * np.asarray(t, dtype=float)),
            deriv=lambda t: c * np.exp(c * np.asarray(t, dtype=float)),
            name=f"exp({c}*t)",
        )
    raise ParseError(f"unknown scale form {form!r}")


def make_order(spec: dict, iv: Optional[Interval] = None) -> OrderFunction:
    form = _need(spec, "form", "order")
    if form == "constant":
        v = float(_need(spec, "value", "order.constant"))
        fn = OrderFunction(eval=lambda sigma, t: np.full_like(np.asarray(t, dtype=float), v) if np.ndim(t) else v, name=f"{v}")
    elif form == "mobius":
        a = float(_need(spec, "a", "order.mobius"))
        b = float(_need(spec, "b", "order.mobius"))
        fn = OrderFunction(eval=lambda sigma, t: a + b * np.asarray(t, dtype=float) / (1.0 + np.asarray(t, dtype=float)), name=f"{a}+{b}*t/(1+t)")
    elif form == "sinusoid":
        a = float(_need(spec, "a", "order.sinusoid"))
        b = float(_need(spec, "b", "order.sinusoid"))
        fn = OrderFunction(eval=lambda sigma, t: a + b * np.sin(np.asarray(t, dtype=float)), name=f"{a}+{b}*sin(t)")
    elif form == "affine":
        a = float(_need(spec, "a", "order.affine"))
        b = float(_need(spec, "b", "order.affine"))
        fn = OrderFunction(eval=lambda sigma, t: a + b * np.asarray(t, dtype=float), name=f"{a}+{b}*t")
    else:
        raise ParseError(f"unknown order form {form!r}")
    # dense range check mirrors the 0 < xi(sigma, t) < 1 hypothesis
    lo, hi = (iv.a, iv.b) if iv is not None else (0.0, 60.0)
    ts = np.linspace(lo, hi, 2001)
    vals = np.asarray(fn.eval(0.0, ts), dtype=float)
    if np.any(vals <= 0.0) or np.any(vals >= 1.0):
        raise ValidationError(
            f"order form {fn.name} leaves (0, 1) on [{lo}, {hi}] "
            f"(range [{vals.min():.4g}, {vals.max():.4g}])"
        )
    return fn


def make_function(spec: dict, scale: Optional[ScaleFunction] = None, sigma: float = 0.0) -> ScalarFunction:
    form = _need(spec, "form", "function")
    if form == "poly":
        coeffs = np.asarray(_need(spec, "coeffs", "function.poly"), dtype=float)
        dcoeffs = np.polynomial.polynomial.polyder(coeffs) if len(coeffs) > 1 else np.zeros(1)
        ev = lambda t: np.polynomial.polynomial.polyval(np.asarray(t, dtype=float), coeffs)
        dv = lambda t: np.polynomial.polynomial.polyval(np.asarray(t, dtype=float), dcoeffs)
        return ScalarFunction(eval=ev, deriv=dv, sigma=sigma, growth_bound=_probe_growth(ev), name=f"poly{list(coeffs)}")
    if form == "exp":
        a = float(spec.get("amplitude", 1.0))
        r = float(_need(spec, "rate", "function.exp"))
        c = float(spec.get("offset", 0.0))
        ev = lambda t: a * np.exp(r * np.asarray(t, dtype=float)) + c
        dv = lambda t: a * r * np.exp(r * np.asarray(t, dtype=float))
        return ScalarFunction(
            eval=ev, deriv=dv, sigma=sigma,
            growth_bound=(abs(a) + abs(c) + 1.0, max(r, 0.0)),
            name=f"{a}*exp({r}*t)+{c}",
        )
    if form == "sin":
        a = float(spec.get("amplitude", 1.0))
        w = float(spec.get("omega", 1.0))
        c = float(spec.get("offset", 0.0))
        ev = lambda t: a * np.sin(w * np.asarray(t, dtype=float)) + c
        dv = lambda t: a * w * np.cos(w * np.asarray(t, dtype=float))
        return ScalarFunction(eval=ev, deriv=dv, sigma=sigma, growth_bound=(abs(a) + abs(c) + 1.0, 0.0), name=f"{a}*sin({w}*t)+{c}")
    if form == "power":
        c = float(spec.get("coeff", 1.0))
        p = float(_need(spec, "exponent", "function.power"))
        ev = lambda t: c * np.asarray(t, dtype=float) ** p
        dv = None if p < 1.0 else (lambda t: c * p * np.asarray(t, dtype=float) ** (p - 1.0))
        growth = _probe_growth(ev) if p > 0 else (abs(c) + 1.0, 0.0)
        return ScalarFunction(eval=ev, deriv=dv, sigma=sigma, growth_bound=growth, origin_power=p, name=f"{c}*t**{p}")
    if form == "phi_power":
        if scale is None:
            raise ParseError("phi_power function needs the case scale")
        beta = float(_need(spec, "beta", "function.phi_power"))
        a0 = float(spec.get("a", 0.0))
        base = float(scale.eval(a0))
        ev = lambda t: (np.asarray(scale.eval(t), dtype=float) - base) ** beta
        dv = lambda t: beta * (np.asarray(scale.eval(t), dtype=float) - base) ** (beta - 1.0) * np.asarray(scale.deriv(t), dtype=float)
        return ScalarFunction(eval=ev, deriv=dv, sigma=sigma, growth_bound=_probe_growth(ev), name=f"(phi-phi(a))**{beta}")
    raise ParseError(f"unknown function form {form!r}")


def make_grid(spec: Optional[dict]) -> ComplexGrid:
    if spec is None:
        return default_grid()
    pts = _need(spec, "points", "grid")
    try:
        points = tuple(complex(float(p[0]), float(p[1])) for p in pts)
    except (TypeError, IndexError) as exc:
        raise ParseError(f"grid.points must be [re, im] pairs: {exc}") from exc
    return ComplexGrid(points=points, abscissa=float(_need(spec, "abscissa", "grid")))


def parse_cases(doc: dict, where: str = "<case data>") -> list:
    if not isinstance(doc, dict) or "cases" not in doc:
        raise ParseError(f"{where}: top level must be an object with a 'cases' list")
    out = []
    for i, cs in enumerate(doc["cases"]):
        ctx = f"{where}: cases[{i}]"
        name = _need(cs, "name", ctx)
        iv_raw = cs.get("interval", [0.0, 30.0])
        iv = Interval(float(iv_raw[0]), float(iv_raw[1]))
        sigma = float(cs.get("sigma", 0.0))
        scale = make_scale(_need(cs, "scale", ctx))
        order = make_order(_need(cs, "order", ctx), iv)
        fn = make_function(_need(cs, "function", ctx), scale, sigma)
        grid = make_grid(cs.get("grid"))
        out.append(
            IdentityCase(
                name=str(name),
                psi=fn,
                xi=order,
                phi=scale,
                iv=iv,
                grid=grid,
                t_eval_points=tuple(cs.get("t_eval", DEFAULT_T_EVAL)),
                checks=tuple(cs.get("checks", ())),
                params=dict(cs.get("params", {})),
            )
        )
    return out


def parse_case_file(path) -> list:
    """Load and validate a JSON case file into IdentityCase records."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read case file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_cases(doc, where=str(path))


_IDENTITY = {"form": "identity"}
_XI_HALF = {"form": "constant", "value": 0.5}
_PSI_T = {"form": "poly", "coeffs": [0.0, 1.0]}

DEFAULT_BATTERY_SPEC = {
    "cases": [
        {"name": "eq7_control", "scale": _IDENTITY, "order": _XI_HALF, "function": _PSI_T,
         "checks": ["eq7"], "params": {"xi_const": 0.5}},
        {"name": "eq7_discriminator", "scale": _IDENTITY, "order": _XI_HALF,
         "function": {"form": "poly", "coeffs": [1.0, 1.0]},
         "checks": ["eq7"], "params": {"xi_const": 0.5}},
        {"name": "frozen_variable", "scale": _IDENTITY,
         "order": {"form": "mobius", "a": 0.3, "b": 0.4}, "function": _PSI_T,
         "checks": ["frozen_vs_unfrozen"], "params": {"t_prime": 1.0}},
        {"name": "frozen_constant", "scale": _IDENTITY, "order": _XI_HALF, "function": _PSI_T,
         "checks": ["frozen_vs_unfrozen"], "params": {"t_prime": 1.0}},
        {"name": "phi_scaled_identity", "scale": _IDENTITY, "order": _XI_HALF, "function": _PSI_T,
         "checks": ["eq12"], "params": {"t_prime": 1.0}},
        {"name": "phi_scaled_2t", "scale": {"form": "linear", "c": 2.0}, "order": _XI_HALF,
         "function": _PSI_T, "checks": ["eq12"], "params": {"t_prime": 1.0}},
        {"name": "conv_control", "scale": _IDENTITY, "order": _XI_HALF, "function": _PSI_T,
         "checks": ["eq15"]},
        {"name": "conv_variable", "scale": _IDENTITY,
         "order": {"form": "mobius", "a": 0.15, "b": 0.8}, "function": _PSI_T,
         "checks": ["eq15"]},
        {"name": "eq22_control", "scale": _IDENTITY, "order": _XI_HALF, "function": _PSI_T,
         "checks": ["eq22"]},
        {"name": "eq22_quadratic_scale", "scale": {"form": "power", "k": 2.0}, "order": _XI_HALF,
         "function": _PSI_T, "checks": ["eq22"]},
        {"name": "eq22_variable_order", "scale": {"form": "quadratic", "a": 1.0, "b": 0.5},
         "order": {"form": "mobius", "a": 0.3, "b": 0.4}, "function": _PSI_T,
         "checks": ["eq22"]},
        {"name": "eq22_sin_order_exp_scale", "scale": {"form": "exp", "c": 0.5},
         "order": {"form": "sinusoid", "a": 0.4, "b": 0.2}, "function": _PSI_T,
         "checks": ["eq22"]},
    ]
}


def default_battery() -> list:
    """The self-contained battery behind `verify --case default`."""
    return parse_cases(json.loads(json.dumps(DEFAULT_BATTERY_SPEC)), where="default battery")
