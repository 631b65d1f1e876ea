"""Constancy of the induced gauge on-shell, and the invariant Lagrangian it selects.

The boost turns ``L = L_s + L_n`` into a renamed copy of itself plus
``d/dt(Phi_Gs + Phi_Gn)``.  Requiring ``Phi_Gs + Phi_Gn`` to be constant along
solutions ``x'(t) = (u0 - v0)*t + x0`` fixes C2 and C4, and the leftover
constant is reported as ``Cconst``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

from .expr_core import PRIMED, UNPRIMED, ExprError, Polynomial, sym
from .galilean import (
    TO_PRIMED, BoostContext, InducedGaugeError, decompose, prime,
)
from .variational import (
    CONSTANT_NAMES, ConstraintSet, GaugeFunction, euler_lagrange, solve_linear,
)

__all__ = [
    "OnShellSolution", "InvarianceSolution", "InvarianceReport",
    "standard_lagrangian", "general_null_lagrangian", "on_shell_substitute",
    "solve_constancy", "solve_offshell", "build_invariant_lagrangian",
    "verify_invariance",
]

Value = Union[Polynomial, Fraction, int, str]

UNKNOWNS = tuple(n for n in CONSTANT_NAMES if n != "Cconst")


def standard_lagrangian(C0: Value = "C0") -> Polynomial:
    return Fraction(1, 2) * Polynomial.coerce(C0) * sym("xdot") ** 2


def general_null_lagrangian() -> Polynomial:
    """C1*xdot*x + C2*(xdot*t + x) + C4*xdot + C6 with every constant symbolic."""
    x, xd, t = sym("x"), sym("xdot"), sym("t")
    return (sym("C1") * xd * x + sym("C2") * (xd * t + x)
            + sym("C4") * xd + sym("C6"))


def _poly(v: Value) -> Polynomial:
    if isinstance(v, float):
        v = Fraction(v)
    return Polynomial.coerce(v)


@dataclass(frozen=True)
class OnShellSolution:
    """Initial data of the free motion x(t) = u0*t + x0 and the frame to use.

    In the primed frame the trajectory is x'(t) = (u0 - v0)*t + x0.
    """

    u0: Value = "u0"
    x0: Value = "x0"
    frame: str = "primed"
    v0: Value = "v0"

    def __post_init__(self):
        if self.frame not in ("primed", "unprimed"):
            raise ValueError(f"unknown frame {self.frame!r}")
        for name in ("u0", "x0", "v0"):
            object.__setattr__(self, name, _poly(getattr(self, name)))

    def trajectory(self) -> Polynomial:
        t = sym("t")
        if self.frame == "unprimed":
            return self.u0 * t + self.x0
        return (self.u0 - self.v0) * t + self.x0

    def in_frame(self, frame: str) -> "OnShellSolution":
        return OnShellSolution(self.u0, self.x0, frame, self.v0)


def on_shell_substitute(phi, sol: OnShellSolution = OnShellSolution()) -> Polynomial:
    """Evaluate a gauge function along the free trajectory of ``sol``.

    Returns a polynomial in t whose coefficients involve only constants and
    parameters.
    """
    p = phi.phi if isinstance(phi, GaugeFunction) else Polynomial.coerce(phi)
    present = p.free_symbols()
    own, other = ("xp", UNPRIMED) if sol.frame == "primed" else ("x", PRIMED)
    if present & other:
        raise ExprError(f"frame mismatch: {p} is not written in the {sol.frame} frame")
    if present & {"xdot", "xpdot", "xddot", "xpddot"}:
        raise ExprError(f"gauge function may not contain velocities: {p}")
    return p.subs({own: sol.trajectory()}) if own in present else p


def _split_time(p: Polynomial):
    p = Polynomial.coerce(p)
    if p.free_symbols() & (UNPRIMED | PRIMED):
        raise ExprError(f"expected a polynomial in t only, got {p}")
    groups = p.collect(["t"])
    constant = groups.pop((0,), Polynomial())
    growing = [groups[k] for k in sorted(groups, reverse=True)]
    return constant, growing


def solve_constancy(p: Polynomial) -> ConstraintSet:
    """Make ``p(t)`` constant: every positive power of t gets coefficient zero.

    The solved form also carries ``Cconst``, the t**0 term after substitution.

    >>> cs = solve_constancy(Polynomial.coerce("C1*t"))
    >>> cs.as_strings()
    {'C1': '0', 'Cconst': '0'}
    """
    constant, growing = _split_time(p)
    cs = solve_linear(growing, UNKNOWNS)
    value = cs.substitute_into(constant)
    solved = dict(cs.solved_form)
    solved["Cconst"] = value
    return ConstraintSet(cs.equations + (sym("Cconst") - constant,), solved, cs.assumptions)


def solve_offshell(phi) -> ConstraintSet:
    """Strict reading: the gauge must be constant for every path, not only solutions.

    Applied to the induced gauge of L_s + L_n this forces C0 = C1 = 0.
    """
    p = phi.phi if isinstance(phi, GaugeFunction) else Polynomial.coerce(phi)
    groups = p.collect(["t", "x", "xp"])
    constant = groups.pop((0, 0, 0), Polynomial())
    eqs = [groups[k] for k in sorted(groups, reverse=True)]
    cs = solve_linear(eqs, UNKNOWNS)
    solved = dict(cs.solved_form)
    solved["Cconst"] = cs.substitute_into(constant)
    return ConstraintSet(cs.equations + (sym("Cconst") - constant,), solved, cs.assumptions)


@dataclass(frozen=True)
class InvarianceSolution:
    constraints: ConstraintSet
    invariant_L: Polynomial
    free_constants: tuple[str, ...]
    ctx: BoostContext = field(default_factory=BoostContext)
    solution: OnShellSolution = field(default_factory=OnShellSolution)

    @property
    def null_part(self) -> Polynomial:
        return self.invariant_L - self.standard_part

    @property
    def standard_part(self) -> Polynomial:
        return self.invariant_L.collect(["xdot"]).get((2,), Polynomial()) * sym("xdot") ** 2


def build_invariant_lagrangian(C0: Value = "C0", C1: Value = "C1", C6: Value = "C6",
                               u0: Value = "u0", x0: Value = "x0", v0: Value = "v0",
                               strict: bool = False) -> InvarianceSolution:
    """Derive C2, C4 from the constancy condition and assemble L_s + L_n.

    The derivation runs symbolically; the given values are bound afterwards,
    so passing numbers gives the same result as substituting into the
    general formulas.
    """
    L = standard_lagrangian() + general_null_lagrangian()
    dec = decompose(L, BoostContext())
    if strict:
        cs = solve_offshell(dec.induced_gauge)
    else:
        cs = solve_constancy(on_shell_substitute(dec.induced_gauge, OnShellSolution()))

    bindings = {"C0": _poly(C0), "C1": _poly(C1), "C6": _poly(C6),
                "u0": _poly(u0), "x0": _poly(x0), "v0": _poly(v0)}
    bindings = {k: v for k, v in bindings.items() if v != sym(k)}

    def bind(p: Polynomial) -> Polynomial:
        return p.subs(bindings) if bindings else p

    solved = {k: bind(v) for k, v in cs.solved_form.items()}
    equations = tuple(bind(e) for e in cs.equations)
    assumptions = tuple(bind(a) for a in cs.assumptions)
    constraints = ConstraintSet(equations, solved, assumptions)

    invariant_L = bind(L.subs({k: v for k, v in cs.solved_form.items() if k != "Cconst"}))
    free = tuple(n for n in ("C0", "C1", "C6")
                 if n not in solved and n not in bindings)
    ctx = BoostContext(_poly(v0))
    sol = OnShellSolution(_poly(u0), _poly(x0), "primed", _poly(v0))
    return InvarianceSolution(constraints, invariant_L, free, ctx, sol)


@dataclass(frozen=True)
class InvarianceReport:
    passed: bool
    same_form_ok: bool
    gauge_constant: bool
    induced_gauge: Optional[Polynomial]
    on_shell_gauge: Optional[Polynomial]
    residual_constant: Optional[Polynomial]
    offending_terms: tuple[str, ...] = ()
    message: str = ""
    strict: bool = False

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        def s(p):
            return None if p is None else str(p)
        return {
            "passed": self.passed,
            "same_form_ok": self.same_form_ok,
            "gauge_constant": self.gauge_constant,
            "induced_gauge": s(self.induced_gauge),
            "on_shell_gauge": s(self.on_shell_gauge),
            "residual_constant": s(self.residual_constant),
            "offending_terms": list(self.offending_terms),
            "mode": "off-shell" if self.strict else "on-shell",
            "message": self.message,
        }

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        lines = [f"invariance ({'off-shell' if self.strict else 'on-shell'}): {verdict}"]
        if self.induced_gauge is not None:
            lines.append(f"  induced gauge : {self.induced_gauge}")
        if self.on_shell_gauge is not None:
            lines.append(f"  on-shell      : {self.on_shell_gauge}")
        if self.residual_constant is not None:
            lines.append(f"  constant      : {self.residual_constant}")
        if self.offending_terms:
            lines.append(f"  offending     : {', '.join(self.offending_terms)}")
        if self.message:
            lines.append(f"  note          : {self.message}")
        return "\n".join(lines)


def verify_invariance(L: Polynomial, ctx: BoostContext = BoostContext(),
                      sol: OnShellSolution = OnShellSolution(),
                      strict: bool = False) -> InvarianceReport:
    """Check that the boost leaves ``L`` in the same form up to a constant gauge.

    (a) the boosted Lagrangian is the renamed ``L`` plus a total derivative;
    (b) that derivative's gauge is constant along free motion (or, with
    ``strict``, constant for every path).
    """
    L = Polynomial.coerce(L)
    try:
        dec = decompose(L, ctx)
    except InducedGaugeError as exc:
        return InvarianceReport(False, False, False, None, None, None, (), str(exc), strict)

    target = "primed" if ctx.direction == TO_PRIMED else "unprimed"
    same_ok = dec.exact() and (dec.same_form == prime(L) if target == "primed" else True)
    gauge = dec.induced_gauge.phi

    if strict:
        on_shell = None
        offending = tuple(str(Polynomial({e: c})) for e, c in gauge.drop_free_of(
            ("t", "x", "xp")).items())
        constant = gauge - gauge.drop_free_of(("t", "x", "xp"))
    else:
        on_shell = on_shell_substitute(gauge, sol.in_frame(target))
        growing = on_shell.drop_free_of(("t",))
        offending = tuple(str(Polynomial({e: c})) for e, c in growing.items())
        constant = on_shell - growing

    const_ok = not offending
    passed = same_ok and const_ok
    msg = "" if passed else (
        ("induced gauge is not constant for arbitrary paths" if strict
         else "induced gauge depends on time along free motion") if not const_ok
        else "boosted Lagrangian is not the renamed original plus a total derivative")
    return InvarianceReport(passed, same_ok, const_ok, gauge, on_shell, constant,
                            offending, msg, strict)


def equation_of_motion(sol: InvarianceSolution) -> Polynomial:
    return euler_lagrange(sol.invariant_L)
