"""One-dimensional Galilean boost x' = x - v0*t, t' = t, and gauge decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .expr_core import ACCELERATIONS, ExprError, Polynomial, sym
from .variational import (
    PRIMED_FRAME, UNPRIMED_FRAME, GaugeFunction, NotNullError, frame_of,
    gauge_from_null, is_null,
)

__all__ = [
    "BoostContext", "BoostDecomposition", "boost", "decompose", "prime",
    "unprime", "InducedGaugeError",
]

TO_PRIMED = "to_primed"
TO_UNPRIMED = "to_unprimed"

_PRIME = {"x": "xp", "xdot": "xpdot", "xddot": "xpddot"}
_UNPRIME = {v: k for k, v in _PRIME.items()}


class InducedGaugeError(NotNullError):
    pass


@dataclass(frozen=True)
class BoostContext:
    """Relative frame velocity and the direction of the change of variables.

    ``v0`` defaults to the symbol ``v0``; pass a number (or a numeric string
    such as ``"3/2"``) for a concrete boost.
    """

    v0: Union[Polynomial, Fraction, int, str] = "v0"
    direction: str = TO_PRIMED

    def __post_init__(self):
        v0 = self.v0
        if isinstance(v0, float):
            v0 = Fraction(v0)
        object.__setattr__(self, "v0", Polynomial.coerce(v0))
        if self.direction not in (TO_PRIMED, TO_UNPRIMED):
            raise ValueError(f"unknown boost direction {self.direction!r}")
        if self.v0.free_symbols() - {"v0", "u0", "x0"}:
            raise ExprError(f"boost velocity must be a number or parameter, got {self.v0}")

    def inverse(self) -> "BoostContext":
        other = TO_UNPRIMED if self.direction == TO_PRIMED else TO_PRIMED
        return BoostContext(self.v0, other)


def _rename(L: Polynomial, table: dict) -> Polynomial:
    present = L.free_symbols()
    mapping = {k: sym(v) for k, v in table.items() if k in present}
    return L.subs(mapping)


def prime(L: Polynomial) -> Polynomial:
    """Rename x, xdot, xddot to their primed counterparts; no boost applied."""
    L = Polynomial.coerce(L)
    frame_of(L)
    return _rename(L, _PRIME)


def unprime(L: Polynomial) -> Polynomial:
    L = Polynomial.coerce(L)
    frame_of(L)
    return _rename(L, _UNPRIME)


def boost(L: Polynomial, ctx: BoostContext = BoostContext()) -> Polynomial:
    """Rewrite ``L`` in the other frame by substituting the inverse map.

    For the default direction: x -> xp + v0*t, xdot -> xpdot + v0,
    xddot -> xpddot; t is unchanged.

    >>> str(boost(Polynomial.coerce("1/2*C0*xdot^2")))
    '1/2*C0*v0^2 + C0*v0*xpdot + 1/2*C0*xpdot^2'
    """
    L = Polynomial.coerce(L)
    fr = frame_of(L)
    v0, t = ctx.v0, sym("t")
    if ctx.direction == TO_PRIMED:
        if fr == PRIMED_FRAME:
            raise ExprError(f"expected an unprimed expression, got {L}")
        mapping = {"x": sym("xp") + v0 * t, "xdot": sym("xpdot") + v0, "xddot": sym("xpddot")}
    else:
        if fr == UNPRIMED_FRAME and L.free_symbols() & set(_PRIME):
            raise ExprError(f"expected a primed expression, got {L}")
        mapping = {"xp": sym("x") - v0 * t, "xpdot": sym("xdot") - v0, "xpddot": sym("xddot")}
    present = L.free_symbols()
    return L.subs({k: v for k, v in mapping.items() if k in present})


@dataclass(frozen=True)
class BoostDecomposition:
    """boosted == same_form + d(induced_gauge)/dt, with induced_null the last term."""

    boosted: Polynomial
    same_form: Polynomial
    induced_null: Polynomial
    induced_gauge: GaugeFunction

    def exact(self) -> bool:
        return self.same_form + self.induced_gauge.lagrangian() == self.boosted


def decompose(L: Polynomial, ctx: BoostContext = BoostContext()) -> BoostDecomposition:
    """Split the boosted Lagrangian into its renamed copy plus a pure gauge term.

    Raises InducedGaugeError if the remainder is not a null Lagrangian.
    """
    L = Polynomial.coerce(L)
    bad = L.free_symbols() & ACCELERATIONS
    if bad:
        raise ExprError(f"Lagrangian must not contain {', '.join(sorted(bad))}")
    boosted = boost(L, ctx)
    same_form = prime(L) if ctx.direction == TO_PRIMED else unprime(L)
    induced = boosted - same_form
    check = is_null(induced)
    if not check.null:
        raise InducedGaugeError(
            f"boost remainder {induced} is not a null Lagrangian "
            f"(Euler-Lagrange residual {check.residual})")
    return BoostDecomposition(boosted, same_form, induced, gauge_from_null(induced))
