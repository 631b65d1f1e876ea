"""Euler-Lagrange operator, null-Lagrangian tests and gauge reconstruction."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .expr_core import (
    ACCELERATIONS, PRIMED, SYMBOLS, UNPRIMED, AccelerationError, ExprError,
    Polynomial, sym,
)

__all__ = [
    "Frame", "frame_of", "euler_lagrange", "ConstraintSet", "solve_linear",
    "null_conditions", "NullCheck", "is_null", "GaugeFunction",
    "gauge_from_null", "NotNullError", "NotExactError", "InconsistentError",
    "NonlinearError",
]


class NotNullError(ExprError):
    pass


class NotExactError(NotNullError):
    """f(x,t)*xdot + g(x,t) fails the integrability test df/dt == dg/dx."""


class InconsistentError(ExprError):
    pass


class NonlinearError(ExprError):
    pass


class Frame(NamedTuple):
    pos: str
    vel: str
    acc: str


UNPRIMED_FRAME = Frame("x", "xdot", "xddot")
PRIMED_FRAME = Frame("xp", "xpdot", "xpddot")

CONSTANT_NAMES = tuple(n for n, s in SYMBOLS.items() if s.kind == "constant")
# the numeric suffix orders pivots; Cconst sorts after every indexed constant
_CONST_RANK = {n: i for i, n in enumerate(CONSTANT_NAMES)}


def frame_of(p: Polynomial, default: Frame = UNPRIMED_FRAME) -> Frame:
    present = p.free_symbols()
    unprimed = bool(present & UNPRIMED)
    primed = bool(present & PRIMED)
    if unprimed and primed:
        raise ExprError(f"mixed-frame expression: {p}")
    if primed:
        return PRIMED_FRAME
    if unprimed:
        return UNPRIMED_FRAME
    return default


def _reject_accel(L: Polynomial) -> None:
    bad = L.free_symbols() & ACCELERATIONS
    if bad:
        raise AccelerationError(f"Lagrangian must not contain {', '.join(sorted(bad))}")


def euler_lagrange(L: Polynomial) -> Polynomial:
    """Return d/dt(dL/dxdot) - dL/dx.

    Works in whichever frame ``L`` is written in (x or xp).

    >>> str(euler_lagrange(Polynomial.coerce("1/2*C0*xdot^2")))
    'C0*xddot'
    """
    L = Polynomial.coerce(L)
    _reject_accel(L)
    f = frame_of(L)
    return L.partial(f.vel).total_time_derivative() - L.partial(f.pos)


# ---------------------------------------------------------------------------
# linear constraints over the C-constants

@dataclass(frozen=True)
class ConstraintSet:
    """Equations (each ``== 0``) linear in the C-constants, plus their solution.

    ``solved_form`` maps a pivot constant to its value in terms of the
    remaining symbols.  ``assumptions`` lists the monomial factors divided out
    of an equation during solving; the solution holds where they are non-zero.
    """

    equations: tuple[Polynomial, ...] = ()
    solved_form: Mapping[str, Polynomial] = field(default_factory=dict)
    assumptions: tuple[Polynomial, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.equations)

    def __len__(self) -> int:
        return len(self.equations)

    def substitute_into(self, p: Polynomial) -> Polynomial:
        return Polynomial.coerce(p).subs(self.solved_form)

    def residuals(self) -> tuple[Polynomial, ...]:
        return tuple(eq.subs(self.solved_form) for eq in self.equations)

    def as_strings(self) -> dict[str, str]:
        return {k: str(v) for k, v in self.solved_form.items()}

    def __str__(self) -> str:
        if not self.solved_form:
            return "{}"
        return "{" + ", ".join(f"{k} = {v}" for k, v in self.solved_form.items()) + "}"


def _monomial_content(p: Polynomial) -> Polynomial:
    """Largest monomial in the parameters (v0, u0, x0) dividing every term."""
    params = [n for n, s in SYMBOLS.items() if s.kind == "parameter"]
    groups = list(p.collect(params))
    if not groups:
        return Polynomial.const(1)
    mins = [min(g[i] for g in groups) for i in range(len(params))]
    out = Polynomial.const(1)
    for name, e in zip(params, mins):
        out = out * sym(name) ** e
    return out


def _divide_by_monomial(p: Polynomial, m: Polynomial) -> Polynomial:
    (mexps, mc), = m.items()
    return Polynomial({
        tuple(a - b for a, b in zip(exps, mexps)): c / mc for exps, c in p.items()
    })


def solve_linear(equations: Iterable[Polynomial],
                 unknowns: Iterable[str] = CONSTANT_NAMES) -> ConstraintSet:
    """Gauss-Jordan elimination over polynomial coefficients.

    Each equation is solved for its highest-indexed unknown whose coefficient
    is a plain number, after dividing out any monomial factor in the
    parameters.  Raises NonlinearError when an equation is not linear in the
    unknowns or no unknown has a numeric coefficient, InconsistentError when
    an equation reduces to a non-zero expression free of unknowns.
    """
    unknowns = sorted(set(unknowns), key=lambda n: _CONST_RANK.get(n, -1))
    eqs = [Polynomial.coerce(e) for e in equations]
    eqs = [e for e in eqs if not e.is_zero()]
    solved: dict[str, Polynomial] = {}
    assumptions: list[Polynomial] = []
    for eq in eqs:
        if eq.degree(unknowns) > 1:
            raise NonlinearError(f"equation is not linear in the constants: {eq} = 0")

    for eq in eqs:
        r = eq.subs(solved) if solved else eq
        if r.is_zero():
            continue
        present = [u for u in unknowns if u in r.free_symbols()]
        if not present:
            raise InconsistentError(f"inconsistent constraint: {r} = 0")
        content = _monomial_content(r)
        if content != 1:
            r = _divide_by_monomial(r, content)
            if content not in assumptions:
                assumptions.append(content)
        pivot = None
        for u in reversed(present):
            coeff = r.partial(u)
            if coeff.is_constant():
                pivot = u
                break
        if pivot is None:
            raise NonlinearError(
                f"no constant in {r} = 0 has a numeric coefficient; cannot solve polynomially")
        coeff = r.partial(pivot)
        value = -(r - coeff * sym(pivot)) / coeff
        solved = {k: v.subs({pivot: value}) for k, v in solved.items()}
        solved[pivot] = value
    ordered = {k: solved[k] for k in sorted(solved, key=lambda n: _CONST_RANK.get(n, -1))}
    return ConstraintSet(tuple(eqs), ordered, tuple(assumptions))


def _coefficient_equations(p: Polynomial, symbols: Iterable[str]) -> list[Polynomial]:
    groups = p.collect(list(symbols))
    return [groups[k] for k in sorted(groups, reverse=True)]


def null_conditions(L: Polynomial) -> ConstraintSet:
    """Conditions on the C-constants that make ``L`` a null Lagrangian.

    Every coefficient of the Euler-Lagrange residual, viewed as a polynomial
    in position, velocity, acceleration and time, must vanish.  Raises
    NotNullError when no choice of constants works.
    """
    L = Polynomial.coerce(L)
    residual = euler_lagrange(L)
    f = frame_of(L)
    eqs = _coefficient_equations(residual, ("t", f.pos, f.vel, f.acc))
    try:
        return solve_linear(eqs)
    except InconsistentError as exc:
        raise NotNullError(f"not nullable: {exc}") from exc


class NullCheck(NamedTuple):
    null: bool
    residual: Polynomial

    def __bool__(self) -> bool:
        return self.null


def is_null(L: Polynomial) -> NullCheck:
    residual = euler_lagrange(L)
    return NullCheck(residual.is_zero(), residual)


# ---------------------------------------------------------------------------
# gauge functions

@dataclass(frozen=True)
class GaugeFunction:
    """Scalar Phi(x, t) whose total time derivative is a null Lagrangian."""

    phi: Polynomial

    def __post_init__(self):
        phi = Polynomial.coerce(self.phi)
        velocities = phi.free_symbols() & {"xdot", "xpdot", "xddot", "xpddot"}
        if velocities:
            raise ExprError(f"gauge function may not depend on {sorted(velocities)}")
        frame_of(phi)
        object.__setattr__(self, "phi", phi)

    @property
    def frame(self) -> Frame:
        return frame_of(self.phi)

    def lagrangian(self) -> Polynomial:
        return self.phi.total_time_derivative()

    def normalized(self) -> "GaugeFunction":
        """Drop every term free of position and time."""
        return GaugeFunction(self.phi.drop_free_of(("t", "x", "xp")))

    def __add__(self, other: "GaugeFunction") -> "GaugeFunction":
        return GaugeFunction(self.phi + other.phi)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaugeFunction):
            return self.phi == other.phi
        if isinstance(other, (Polynomial, int, Fraction)):
            return self.phi == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.phi)

    def __str__(self) -> str:
        return str(self.phi)


def gauge_from_null(L_n: Polynomial) -> GaugeFunction:
    """Reconstruct Phi with dPhi/dt == L_n.

    Writes ``L_n = f(x, t)*xdot + g(x, t)``, integrates f in x to get F, then
    integrates ``g - dF/dt`` in t.  The result carries no term free of x and t.

    >>> str(gauge_from_null(Polynomial.coerce("C2*(xdot*t + x)")))
    'C2*t*x'
    """
    L_n = Polynomial.coerce(L_n)
    _reject_accel(L_n)
    fr = frame_of(L_n)
    if L_n.degree(fr.vel) > 1:
        raise NotNullError(
            f"{L_n} is not affine in {fr.vel}; a one-dimensional null Lagrangian "
            "must be affine in the velocity, so no gauge function exists")
    by_vel = L_n.collect([fr.vel])
    f = by_vel.get((1,), Polynomial())
    g = by_vel.get((0,), Polynomial())
    mismatch = f.partial("t") - g.partial(fr.pos)
    if not mismatch.is_zero():
        raise NotExactError(
            f"not a total derivative: d/dt of the velocity coefficient minus "
            f"d/d{fr.pos} of the remainder is {mismatch}, not 0")
    F = f.integrate(fr.pos)
    rest = g - F.partial("t")
    h = rest.integrate("t")
    return GaugeFunction(F + h).normalized()
