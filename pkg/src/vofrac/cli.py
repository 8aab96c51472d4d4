"""Command-line front end.

Subcommands: deriv | integral | laplace | invlaplace | verify.  Case
definitions come from JSON case files (or the embedded default battery);
results go to CSV or JSON tables, with `verify` additionally printing a
one-line verdict summary per identity.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cases import default_battery, parse_case_file
from .checker import run_suite
from .errors import VofracError
from .laplace import forward_lt, inverse_lt
from .operators import vo_caputo_left, vo_integral_left
from .quadrature import QuadConfig
from .report import emit_report, emit_table

__all__ = ["RunConfig", "main", "entry"]


@dataclass
class RunConfig:
    command: str
    case_file: Optional[str] = None
    output_path: str = "report.csv"
    output_format: str = "csv"
    rel_tol: Optional[float] = None
    abs_tol: Optional[float] = None
    talbot_nodes: int = 32
    seed: int = 42

    def quad_config(self) -> QuadConfig:
        base = QuadConfig()
        return QuadConfig(
            rel_tol=self.rel_tol if self.rel_tol is not None else base.rel_tol,
            abs_tol=self.abs_tol if self.abs_tol is not None else base.abs_tol,
        )


def _load_cases(ref: str):
    if ref == "default":
        return default_battery()
    return parse_case_file(ref)


def _pick_case(cases, name: Optional[str]):
    if name is None:
        return cases[0]
    for c in cases:
        if c.name == name:
            return c
    raise VofracError(f"no case named {name!r} (have: {', '.join(c.name for c in cases)})")


def _t_points(args) -> np.ndarray:
    if args.t:
        return np.array([float(x) for x in args.t.split(",")])
    return np.linspace(args.t_min, args.t_max, args.t_num)


def _add_common(p):
    p.add_argument("--out", default=None, help="output file path")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--abs-tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=42)


def _add_case_and_t(p):
    p.add_argument("--case", required=True, help="case file path, or 'default'")
    p.add_argument("--name", default=None, help="case name within the file")
    p.add_argument("--t", default=None, help="comma-separated evaluation times")
    p.add_argument("--t-min", type=float, default=0.1)
    p.add_argument("--t-max", type=float, default=2.0)
    p.add_argument("--t-num", type=int, default=20)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vofrac", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deriv", help="evaluate the variable-order derivative on a time grid")
    _add_case_and_t(p)
    _add_common(p)

    p = sub.add_parser("integral", help="evaluate the variable-order integral on a time grid")
    _add_case_and_t(p)
    _add_common(p)

    p = sub.add_parser("laplace", help="forward transform of a case function on its grid")
    p.add_argument("--case", required=True)
    p.add_argument("--name", default=None)
    _add_common(p)

    p = sub.add_parser("invlaplace", help="fixed-Talbot inversion of a catalog transform")
    p.add_argument("--transform", choices=("s_power", "shifted_inverse"), required=True)
    p.add_argument("--exponent", type=float, default=-1.0, help="s_power: F(s) = s**exponent")
    p.add_argument("--shift", type=float, default=1.0, help="shifted_inverse: F(s) = 1/(s+shift)")
    p.add_argument("--t", default=None)
    p.add_argument("--t-min", type=float, default=0.1)
    p.add_argument("--t-max", type=float, default=2.0)
    p.add_argument("--t-num", type=int, default=20)
    p.add_argument("--talbot-nodes", type=int, default=32)
    _add_common(p)

    p = sub.add_parser("verify", help="run the identity verification suite")
    p.add_argument("--case", required=True, help="case file path, or 'default'")
    p.add_argument("--which", default=None, help="comma-separated identity names to run")
    p.add_argument("--talbot-nodes", type=int, default=32)
    _add_common(p)
    return ap


def _cmd_operator(args, kind: str) -> int:
    cfg = RunConfig(command=kind, case_file=args.case, seed=args.seed,
                    rel_tol=args.rel_tol, abs_tol=args.abs_tol).quad_config()
    case = _pick_case(_load_cases(args.case), args.name)
    op = vo_caputo_left if kind == "deriv" else vo_integral_left
    rows = []
    for t in _t_points(args):
        rows.append([float(t), float(op(case.psi, case.xi, case.phi, case.iv, float(t), cfg))])
    out = args.out or f"{kind}.{args.format}"
    emit_table(rows, ["t", "value"], args.format, out)
    print(f"{kind}: case {case.name}, {len(rows)} points -> {out}")
    return 0


def _cmd_laplace(args) -> int:
    cfg = RunConfig(command="laplace", case_file=args.case, seed=args.seed,
                    rel_tol=args.rel_tol, abs_tol=args.abs_tol).quad_config()
    case = _pick_case(_load_cases(args.case), args.name)
    sample = forward_lt(case.psi, case.grid, cfg)
    rows = [
        [s.real, s.imag, v.real, v.imag]
        for s, v in zip(sample.grid.points, sample.values)
    ]
    out = args.out or f"laplace.{args.format}"
    emit_table(rows, ["s_real", "s_imag", "value_real", "value_imag"], args.format, out)
    print(f"laplace: case {case.name}, {len(rows)} grid points -> {out}")
    return 0


def _cmd_invlaplace(args) -> int:
    if args.transform == "s_power":
        exponent = args.exponent
        F = lambda s: s**exponent
        label = f"s**{exponent}"
    else:
        shift = args.shift
        F = lambda s: 1.0 / (s + shift)
        label = f"1/(s+{shift})"
    rows = [[float(t), inverse_lt(F, float(t), args.talbot_nodes)] for t in _t_points(args)]
    out = args.out or f"invlaplace.{args.format}"
    emit_table(rows, ["t", "value"], args.format, out)
    print(f"invlaplace: {label}, {len(rows)} points -> {out}")
    return 0


def _cmd_verify(args) -> int:
    cfg = RunConfig(command="verify", case_file=args.case, seed=args.seed,
                    rel_tol=args.rel_tol, abs_tol=args.abs_tol).quad_config()
    cases = _load_cases(args.case)
    which = set(args.which.split(",")) if args.which else None
    reports = run_suite(cases, which, cfg)
    out = args.out or f"report.{args.format}"
    emit_report(reports, args.format, out)
    worst = 0
    for rep in reports:
        if rep.rhs_variants:
            for var in rep.rhs_variants:
                print(
                    f"{rep.case_name}/{rep.identity} [{var.label}] {var.verdict} "
                    f"residual={var.rel_residual:.3e}"
                )
        else:
            print(f"{rep.case_name}/{rep.identity} {rep.verdict} {rep.notes}")
        if rep.verdict == "ERROR":
            worst = 1
    print(f"verify: {len(reports)} reports -> {out}")
    return worst


def main(argv=None) -> int:
    """Entry point; returns 0 on success, 1 on diagnostics, 2 on usage errors."""
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command in ("deriv", "integral"):
            return _cmd_operator(args, args.command)
        if args.command == "laplace":
            return _cmd_laplace(args)
        if args.command == "invlaplace":
            return _cmd_invlaplace(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return 2
    except VofracError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
