"""Command-line interface.

    nullgauge el EXPR
    nullgauge null EXPR
    nullgauge gauge EXPR
    nullgauge boost EXPR [--v0 Q]
    nullgauge solve [--v0 Q --u0 Q --x0 Q] [NAME=VALUE ...] [--strict-offshell]
    nullgauge verify [EXPR] [--v0 Q --u0 Q --x0 Q] [NAME=VALUE ...]
    nullgauge reproduce

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import numeric_verify as nv
from .expr_core import ExprError, Polynomial, parse
from .galilean import BoostContext, InducedGaugeError, decompose
from .invariance_solver import (
    OnShellSolution, build_invariant_lagrangian, general_null_lagrangian,
    on_shell_substitute, solve_constancy, solve_offshell, standard_lagrangian,
    verify_invariance,
)
from .reproduction import run as run_reproduction
from .variational import (
    NotNullError, euler_lagrange, gauge_from_null, is_null, null_conditions,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

BINDABLE = ("C0", "C1", "C6", "u0", "x0", "v0")


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    input: dict = field(default_factory=dict)
    symbolic: dict = field(default_factory=dict)
    constraints: dict = field(default_factory=dict)
    numeric: dict = field(default_factory=dict)
    verdict: bool = True
    lines: list = field(default_factory=list)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "input": self.input,
            "symbolic": self.symbolic,
            "constraints": self.constraints,
            "numeric": self.numeric,
            "verdict": "pass" if self.verdict else "fail",
        }
        return json.dumps(payload, indent=2)

    def to_text(self) -> str:
        out = [f"$ nullgauge {self.command}"]
        out.extend(self.lines)
        out.append(f"verdict: {'PASS' if self.verdict else 'FAIL'}")
        return "\n".join(out)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_bindings(items) -> dict[str, Fraction]:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        name = name.strip()
        if name not in BINDABLE:
            raise UsageError(f"cannot bind {name!r}; choose from {', '.join(BINDABLE)}")
        out[name] = parse_rational(value)
    return out


def _collect_values(args) -> dict[str, Fraction]:
    values = parse_bindings(getattr(args, "bindings", ()))
    for name in ("v0", "u0", "x0"):
        v = getattr(args, name, None)
        if v is not None:
            values[name] = parse_rational(v)
    return values


# ---------------------------------------------------------------------------
# commands

def cmd_el(args) -> RunReport:
    L = parse(args.expr)
    el = euler_lagrange(L)
    r = RunReport(f"el {args.expr}", {"expr": args.expr})
    r.symbolic = {"lagrangian": str(L), "euler_lagrange": str(el)}
    r.lines = [f"L          = {L}", f"EL(L)      = {el}"]
    return r


def cmd_null(args) -> RunReport:
    L = parse(args.expr)
    check = is_null(L)
    r = RunReport(f"null {args.expr}", {"expr": args.expr})
    r.symbolic = {"lagrangian": str(L), "residual": str(check.residual), "is_null": check.null}
    r.lines = [f"L          = {L}", f"EL(L)      = {check.residual}",
               f"null       : {'yes' if check.null else 'no'}"]
    try:
        cs = null_conditions(L)
    except NotNullError as exc:
        r.constraints = {"nullable": False, "reason": str(exc)}
        r.lines.append(f"conditions : not nullable ({exc})")
        r.verdict = False
        return r
    r.constraints = {"nullable": True, "solved": cs.as_strings(),
                     "equations": [f"{e} = 0" for e in cs.equations]}
    r.lines.append(f"conditions : {cs}")
    r.lines.append(f"null form  = {cs.substitute_into(L)}")
    return r


def cmd_gauge(args) -> RunReport:
    L = parse(args.expr)
    r = RunReport(f"gauge {args.expr}", {"expr": args.expr})
    try:
        phi = gauge_from_null(L)
    except NotNullError as exc:
        r.symbolic = {"lagrangian": str(L), "gauge": None, "error": str(exc)}
        r.lines = [f"L          = {L}", f"no gauge function: {exc}"]
        r.verdict = False
        return r
    r.symbolic = {"lagrangian": str(L), "gauge": str(phi)}
    r.verdict = phi.lagrangian() == L
    r.lines = [f"L          = {L}", f"Phi        = {phi}"]
    return r


def cmd_boost(args) -> RunReport:
    L = parse(args.expr)
    values = _collect_values(args)
    ctx = BoostContext(values.get("v0", "v0"))
    r = RunReport(f"boost {args.expr}" + (f" --v0 {args.v0}" if args.v0 else ""),
                  {"expr": args.expr, "v0": str(ctx.v0)})
    try:
        dec = decompose(L, ctx)
    except InducedGaugeError as exc:
        r.symbolic = {"lagrangian": str(L), "error": str(exc)}
        r.lines = [f"L          = {L}", f"decomposition failed: {exc}"]
        r.verdict = False
        return r
    r.symbolic = {
        "lagrangian": str(L), "boosted": str(dec.boosted), "same_form": str(dec.same_form),
        "induced_null": str(dec.induced_null), "induced_gauge": str(dec.induced_gauge),
    }
    r.verdict = dec.exact()
    r.lines = [f"L          = {L}", f"L'         = {dec.boosted}",
               f"same form  = {dec.same_form}", f"induced    = {dec.induced_null}",
               f"Phi_G      = {dec.induced_gauge}"]
    return r


def cmd_solve(args) -> RunReport:
    values = _collect_values(args)
    r = RunReport("solve" + _echo_values(values, args.strict_offshell), _str_values(values))
    base = standard_lagrangian() + general_null_lagrangian()
    dec = decompose(base, BoostContext())
    gauge = dec.induced_gauge.phi
    if args.strict_offshell:
        cs = solve_offshell(gauge)
        on_shell = None
    else:
        on_shell = on_shell_substitute(gauge, OnShellSolution())
        cs = solve_constancy(on_shell)
    sol = build_invariant_lagrangian(strict=args.strict_offshell, **values)
    r.symbolic = {
        "induced_gauge": str(gauge),
        "on_shell_gauge": None if on_shell is None else str(on_shell),
        "invariant_lagrangian": str(sol.invariant_L),
        "free_constants": list(sol.free_constants),
    }
    r.constraints = {
        "mode": "off-shell" if args.strict_offshell else "on-shell",
        "general": cs.as_strings(),
        "bound": sol.constraints.as_strings(),
        "assumptions": [f"{a} != 0" for a in cs.assumptions],
    }
    r.lines = [f"Phi_Gs' + Phi_Gn' = {gauge}"]
    if on_shell is not None:
        r.lines.append(f"on-shell          = {on_shell}")
    r.lines += [f"{k:<17} = {v}" for k, v in cs.as_strings().items()]
    if cs.assumptions:
        r.lines.append("assuming          " + ", ".join(f"{a} != 0" for a in cs.assumptions))
    if values:
        r.lines += [f"bound {k:<11} = {v}" for k, v in sol.constraints.as_strings().items()]
    r.lines.append(f"L                 = {sol.invariant_L}")
    return r


def _echo_values(values, strict=False) -> str:
    s = "".join(f" {k}={v}" for k, v in values.items())
    return s + (" --strict-offshell" if strict else "")


def _str_values(values) -> dict:
    return {k: str(v) for k, v in values.items()}


def _small_rational(rng: np.random.Generator) -> Fraction:
    q = int(rng.integers(1, 17))
    return Fraction(int(rng.integers(-q, q + 1)), q)


def cmd_verify(args) -> RunReport:
    values = _collect_values(args)
    rng = np.random.default_rng(args.seed)
    for name in BINDABLE:
        values.setdefault(name, _small_rational(rng))
    tol = args.tol
    strict = args.strict_offshell

    if args.expr:
        L = parse(args.expr)
        L = L.subs({k: v for k, v in values.items() if k in L.free_symbols()})
        label = args.expr
    else:
        L = build_invariant_lagrangian(**values).invariant_L
        label = "invariant Lagrangian"
    ctx = BoostContext(values["v0"])
    sol = OnShellSolution(values["u0"], values["x0"], "primed", values["v0"])

    r = RunReport(f"verify {label}{_echo_values(values, strict)} --seed {args.seed}",
                  {"expr": label, **_str_values(values)})
    report = verify_invariance(L, ctx, sol, strict=strict)
    r.symbolic = {"lagrangian": str(L), "invariance": report.to_dict()}
    r.lines = [f"L = {L}", str(report)]

    numeric = {}
    path = nv.Path(tuple(float(_small_rational(rng)) for _ in range(5)))
    t0 = float(_small_rational(rng))
    t1 = t0 + 1.0
    floats = {k: float(v) for k, v in values.items()}
    try:
        dec = decompose(L, ctx)
        numeric["boost_action"] = nv.check_boost_action(L, ctx, path, floats, t0, t1, tol).to_dict()
        primed = path.boosted(floats["v0"])
        numeric["null_action"] = nv.check_null_action(
            dec.induced_null, dec.induced_gauge, primed, floats, t0, t1, tol).to_dict()
    except InducedGaugeError as exc:
        numeric["boost_action"] = {"passed": False, "residual": None, "tol": tol, "detail": str(exc)}
    except nv.UnboundSymbolError as exc:
        raise UsageError(f"{exc.args[0]}; bind them with NAME=VALUE") from None
    numeric["fd_euler_lagrange"] = nv.fd_check_el(
        L, path, floats, np.linspace(t0, t1, 7), 1e-5, 1e-6).to_dict()
    r.numeric = numeric
    for name, res in numeric.items():
        state = "PASS" if res["passed"] else "FAIL"
        r.lines.append(f"numeric {name:<18}: {state} residual={res['residual']!r} tol={res['tol']!r}")
    r.verdict = report.passed and all(res["passed"] for res in numeric.values())
    return r


def cmd_reproduce(args) -> RunReport:
    steps = run_reproduction()
    r = RunReport("reproduce")
    r.symbolic = {"steps": [s.to_dict() for s in steps]}
    for s in steps:
        r.lines.append(f"[{s.number:2d}] {'PASS' if s.passed else 'FAIL'}  {s.title}: {s.claim}")
        r.lines.append(f"            {s.result}")
    r.verdict = all(s.passed for s in steps)
    return r


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=nv.DEFAULT_TOL,
                        help="absolute tolerance for numeric checks")
    common.add_argument("--seed", type=int, default=0, help="seed for random numeric inputs")
    common.add_argument("--strict-offshell", action="store_true",
                        help="require a constant gauge for every path, not only free motion")

    values = argparse.ArgumentParser(add_help=False)
    for name in ("v0", "u0", "x0"):
        values.add_argument(f"--{name}", default=None, help="rational value, e.g. 3/2")

    parser = argparse.ArgumentParser(prog="nullgauge", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("el", parents=[common], help="Euler-Lagrange expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_el)

    p = sub.add_parser("null", parents=[common], help="null test and conditions")
    p.add_argument("expr")
    p.set_defaults(func=cmd_null)

    p = sub.add_parser("gauge", parents=[common], help="gauge function of a null Lagrangian")
    p.add_argument("expr")
    p.set_defaults(func=cmd_gauge)

    p = sub.add_parser("boost", parents=[common, values], help="boost and decompose")
    p.add_argument("expr")
    p.set_defaults(func=cmd_boost)

    p = sub.add_parser("solve", parents=[common, values], help="solve the constancy condition")
    p.add_argument("bindings", nargs="*", metavar="NAME=VALUE")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common, values], help="symbolic and numeric invariance checks")
    p.add_argument("expr", nargs="?", default=None)
    p.add_argument("bindings", nargs="*", metavar="NAME=VALUE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", aliases=["paper"], parents=[common],
                       help="run the full derivation step by step")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "verify" and args.expr and "=" in args.expr:
        # bindings given without an expression
        args.bindings = [args.expr] + list(getattr(args, "bindings", []))
        args.expr = None
    try:
        report = args.func(args)
    except (ExprError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.verdict else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
