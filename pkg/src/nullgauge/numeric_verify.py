"""Floating-point cross-checks of the symbolic identities.

Paths are polynomials in t, Lagrangians are evaluated along them, actions are
integrated with 20-point Gauss-Legendre (exact for polynomial integrands up to
degree 39), and the Euler-Lagrange operator is compared with central finite
differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly
from numpy.polynomial.legendre import leggauss

from .expr_core import Polynomial
from .galilean import TO_PRIMED, BoostContext, decompose
from .variational import GaugeFunction, euler_lagrange, frame_of

__all__ = [
    "Path", "BindingSet", "CheckResult", "UnboundSymbolError", "eval_on_path",
    "action", "check_null_action", "check_boost_action", "fd_check_el",
    "fd_total_derivative", "GL_ORDER", "DEFAULT_TOL",
]

GL_ORDER = 20
DEFAULT_TOL = 1e-12
MAX_PATH_DEGREE = 6

_NODES, _WEIGHTS = leggauss(GL_ORDER)

BindingSet = Mapping[str, float]


class UnboundSymbolError(KeyError):
    pass


@dataclass(frozen=True)
class Path:
    """x(t) = sum(coeffs[i] * t**i), in the frame named by ``frame``."""

    coeffs: tuple[float, ...]
    frame: str = "unprimed"

    def __post_init__(self):
        c = tuple(float(a) for a in self.coeffs) or (0.0,)
        if len(c) - 1 > MAX_PATH_DEGREE:
            raise ValueError(f"path degree {len(c) - 1} exceeds {MAX_PATH_DEGREE}")
        if not all(np.isfinite(c)):
            raise ValueError("path coefficients must be finite")
        if self.frame not in ("unprimed", "primed"):
            raise ValueError(f"unknown frame {self.frame!r}")
        object.__setattr__(self, "coeffs", c)

    def position(self, t):
        return npoly.polyval(t, self.coeffs)

    def velocity(self, t):
        return npoly.polyval(t, npoly.polyder(self.coeffs, 1))

    def acceleration(self, t):
        return npoly.polyval(t, npoly.polyder(self.coeffs, 2))

    def boosted(self, v0: float) -> "Path":
        """x'(t) = x(t) - v0*t for an unprimed path."""
        if self.frame != "unprimed":
            raise ValueError("only unprimed paths can be boosted")
        c = list(self.coeffs) + [0.0] * (2 - len(self.coeffs))
        c[1] -= float(v0)
        return Path(tuple(c), "primed")

    def state(self, t) -> dict:
        names = ("x", "xdot", "xddot") if self.frame == "unprimed" else ("xp", "xpdot", "xpddot")
        return {names[0]: self.position(t), names[1]: self.velocity(t),
                names[2]: self.acceleration(t), "t": t}


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    residual: float
    tol: float
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {"passed": self.passed, "residual": self.residual, "tol": self.tol,
                "detail": self.detail}


def _values(path: Path, bindings: BindingSet, t) -> dict:
    values = {k: float(v) for k, v in bindings.items()}
    values.update(path.state(t))
    return values


def eval_on_path(p: Polynomial, path: Path, bindings: BindingSet, t):
    """Numeric value of ``p`` along ``path`` at time(s) ``t``."""
    p = Polynomial.coerce(p)
    dyn = p.free_symbols() - {"t", "C0", "C1", "C2", "C3", "C4", "C5", "C6",
                               "Cconst", "v0", "u0", "x0"}
    wanted = set(path.state(0.0))
    if dyn - wanted:
        raise ValueError(f"{p} is not in the {path.frame} frame of the path")
    values = _values(path, bindings, np.asarray(t, dtype=float))
    try:
        out = p.evaluate(values)
    except KeyError as exc:
        raise UnboundSymbolError(str(exc.args[0])) from None
    if np.ndim(t) == 0:
        return float(out)
    return np.broadcast_to(np.asarray(out, dtype=float), np.shape(t)) * 1.0


def action(L: Polynomial, path: Path, bindings: BindingSet, t0: float, t1: float) -> float:
    """Integral of L along the path over [t0, t1]."""
    half = 0.5 * (t1 - t0)
    ts = half * _NODES + 0.5 * (t1 + t0)
    return float(half * np.dot(_WEIGHTS, eval_on_path(L, path, bindings, ts)))


def _gauge_poly(phi) -> Polynomial:
    return phi.phi if isinstance(phi, GaugeFunction) else Polynomial.coerce(phi)


def check_null_action(L_n: Polynomial, phi, path: Path, bindings: BindingSet,
                      t0: float, t1: float, tol: float = DEFAULT_TOL) -> CheckResult:
    """|S[L_n] - (Phi(t1) - Phi(t0))| <= tol along an arbitrary path."""
    phi = _gauge_poly(phi)
    S = action(L_n, path, bindings, t0, t1)
    dphi = eval_on_path(phi, path, bindings, t1) - eval_on_path(phi, path, bindings, t0)
    r = abs(S - dphi)
    return CheckResult(r <= tol, r, tol, f"action={S!r} boundary={dphi!r}")


def check_boost_action(L: Polynomial, ctx: BoostContext, path: Path, bindings: BindingSet,
                       t0: float, t1: float, tol: float = DEFAULT_TOL) -> CheckResult:
    """Action of the boosted L equals the renamed action plus the gauge boundary term.

    Also compares against the action of L along the original unprimed path,
    which must agree because the boost is only a change of variables.
    """
    if ctx.direction != TO_PRIMED or path.frame != "unprimed":
        raise ValueError("check_boost_action expects an unprimed path and a to-primed boost")
    L = Polynomial.coerce(L)
    dec = decompose(L, ctx)
    v0 = float(Polynomial.coerce(ctx.v0).evaluate(
        {k: Fraction(v) for k, v in bindings.items()}))
    primed = path.boosted(v0)
    S_boosted = action(dec.boosted, primed, bindings, t0, t1)
    S_same = action(dec.same_form, primed, bindings, t0, t1)
    gauge = dec.induced_gauge.phi
    dphi = eval_on_path(gauge, primed, bindings, t1) - eval_on_path(gauge, primed, bindings, t0)
    S_orig = action(L, path, bindings, t0, t1)
    r_split = abs(S_boosted - S_same - dphi)
    r_frame = abs(S_boosted - S_orig)
    r = max(r_split, r_frame)
    return CheckResult(r <= tol, r, tol,
                       f"split residual={r_split!r} frame residual={r_frame!r}")


def fd_total_derivative(p: Polynomial, path: Path, bindings: BindingSet, t, h: float = 1e-5):
    t = np.asarray(t, dtype=float)
    return (eval_on_path(p, path, bindings, t + h) - eval_on_path(p, path, bindings, t - h)) / (2 * h)


def fd_check_el(L: Polynomial, path: Path, bindings: BindingSet, samples: Sequence[float],
                h: float = 1e-5, tol: float = 1e-6) -> CheckResult:
    """Compare the symbolic Euler-Lagrange residual with a finite-difference one.

    The numeric side differentiates dL/dxdot along the path by central
    differences in t.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    L = Polynomial.coerce(L)
    fr = frame_of(L, default=None)
    pos, vel = ("x", "xdot") if path.frame == "unprimed" else ("xp", "xpdot")
    if fr is not None and fr.pos != pos:
        raise ValueError(f"{L} is not in the {path.frame} frame of the path")
    ts = np.asarray(samples, dtype=float)
    symbolic = eval_on_path(euler_lagrange(L), path, bindings, ts)
    numeric = (fd_total_derivative(L.partial(vel), path, bindings, ts, h)
               - eval_on_path(L.partial(pos), path, bindings, ts))
    r = float(np.max(np.abs(symbolic - numeric))) if ts.size else 0.0
    return CheckResult(r <= tol, r, tol, f"samples={ts.size} h={h}")
