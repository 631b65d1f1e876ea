"""Scripted end-to-end derivation, from the law of inertia to the invariant pair.

Each step states a claim, computes it with the library and compares against
the expected closed form written out by hand.  ``run()`` returns the steps in
order; the ``reproduce`` CLI command prints them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .expr_core import Polynomial, parse
from .galilean import BoostContext, decompose, prime
from .invariance_solver import (
    OnShellSolution, build_invariant_lagrangian, general_null_lagrangian,
    on_shell_substitute, solve_constancy, standard_lagrangian,
    verify_invariance,
)
from .variational import euler_lagrange, gauge_from_null, is_null, null_conditions


@dataclass(frozen=True)
class Step:
    number: int
    title: str
    claim: str
    result: str
    passed: bool

    def to_dict(self) -> dict:
        return {"step": self.number, "title": self.title, "claim": self.claim,
                "result": self.result, "passed": self.passed}


def _p(s: str) -> Polynomial:
    return parse(s, allow_accel=True)


def run() -> list[Step]:
    steps: list[Step] = []

    def step(title: str, claim: str, fn: Callable[[], tuple[str, bool]]):
        try:
            result, ok = fn()
        except Exception as exc:  # a crash is a failed step, not an aborted run
            result, ok = f"error: {exc}", False
        steps.append(Step(len(steps) + 1, title, claim, result, bool(ok)))

    L_s = standard_lagrangian()
    L_a = _p("C1*xdot*x + C2*xdot*t + C3*x*t")
    L_b = _p("C4*xdot + C5*x + C6")
    L_n1, L_n2, L_n3 = _p("C1*xdot*x"), _p("C2*(xdot*t + x)"), _p("C4*xdot + C6")
    phi_n1, phi_n2, phi_n3 = _p("1/2*C1*x^2"), _p("C2*x*t"), _p("C4*x + C6*t")
    L_n = general_null_lagrangian()
    phi_n = _p("1/2*C1*x^2 + C2*x*t + C4*x + C6*t")
    ctx, sol = BoostContext(), OnShellSolution()

    def s1():
        el = euler_lagrange(L_s)
        return f"EL(L_s) = {el}", el == _p("C0*xddot")
    step("law of inertia", "EL(1/2*C0*xdot^2) = C0*xddot, so xddot = 0", s1)

    def s2():
        text = "1/2*C0*xdot^2"
        return f"L_s = {L_s}; null: {is_null(L_s).null}", parse(text) == L_s and not is_null(L_s)
    step("standard Lagrangian", "L_s = 1/2*C0*xdot^2 is not a null Lagrangian", s2)

    def s3():
        el = euler_lagrange(L_a)
        return f"EL(L_a) = {el}", el == _p("C2 - C3*t")
    step("first test Lagrangian", "L_a = C1*xdot*x + C2*xdot*t + C3*x*t", s3)

    def s4():
        el = euler_lagrange(L_b)
        return f"EL(L_b) = {el}", el == _p("-C5")
    step("second test Lagrangian", "L_b = C4*xdot + C5*x + C6", s4)

    def s5():
        cs = null_conditions(L_a + L_b)
        reduced = cs.substitute_into(L_a + L_b)
        ok = (cs.as_strings() == {"C3": "0", "C5": "C2"}
              and reduced == L_n1 + L_n2 + L_n3 == L_n
              and all(is_null(p) for p in (L_n1, L_n2, L_n3)))
        return f"conditions {cs}; L_n = {reduced}", ok
    step("null Lagrangian", "EL(L_a + L_b) = 0 iff C3 = 0 and C5 = C2", s5)

    def s6():
        L = L_s + phi_n.total_time_derivative()
        ok = L == L_s + L_n and euler_lagrange(L) == euler_lagrange(L_s)
        return f"L = {L}", ok
    step("gauge form of L", "L_s + L_n = L_s + d(Phi_n)/dt with the same equation of motion", s6)

    def s7():
        pairs = [(phi_n1, L_n1), (phi_n2, L_n2), (phi_n3, L_n3)]
        ok = all(phi.total_time_derivative() == L and gauge_from_null(L) == phi
                 for phi, L in pairs) and phi_n1 + phi_n2 + phi_n3 == phi_n
        return ", ".join(str(phi) for phi, _ in pairs), ok
    step("partial gauge functions", "Phi_n1 = 1/2*C1*x^2, Phi_n2 = C2*x*t, Phi_n3 = C4*x + C6*t", s7)

    def s8():
        phi = gauge_from_null(L_n)
        return f"Phi_n = {phi}", phi == phi_n
    step("explicit gauge function", "Phi_n = 1/2*C1*x^2 + C2*x*t + C4*x + C6*t", s8)

    dec_s = decompose(L_s, ctx)
    dec_n = decompose(L_n, ctx)

    def s9():
        L = L_s + L_n
        boosted = decompose(L, ctx).boosted
        rebuilt = (prime(L_s) + prime(phi_n).total_time_derivative()
                   + (dec_s.induced_gauge.phi + dec_n.induced_gauge.phi).total_time_derivative())
        return f"L' has {len(boosted)} terms; residual {boosted - rebuilt}", boosted == rebuilt
    step("boosted Lagrangian", "L' = L_s' + d(Phi_n')/dt + d(Phi_Gs' + Phi_Gn')/dt", s9)

    def s10():
        g = dec_s.induced_gauge.phi
        return f"Phi_Gs' = {g}", g == _p("C0*(xp + 1/2*v0*t)*v0") and is_null(dec_s.induced_null)
    step("standard induced gauge", "Phi_Gs' = C0*(xp + 1/2*v0*t)*v0", s10)

    def s11():
        g = dec_n.induced_gauge.phi
        ok = g == _p("(C1*(xp + 1/2*v0*t) + C2*t + C4)*v0*t") and is_null(dec_n.induced_null)
        return f"Phi_Gn' = {g}", ok
    step("null induced gauge", "Phi_Gn' = (C1*(xp + 1/2*v0*t) + C2*t + C4)*v0*t", s11)

    on_shell = on_shell_substitute(dec_s.induced_gauge.phi + dec_n.induced_gauge.phi, sol)
    constants = solve_constancy(on_shell)

    def s12():
        c2 = constants.solved_form["C2"]
        return f"C2 = {c2}", c2 == _p("-C1*(u0 - 1/2*v0)")
    step("first solved constant", "C2 = -C1*(u0 - 1/2*v0)", s12)

    def s13():
        c4 = constants.solved_form["C4"]
        c = constants.solved_form["Cconst"]
        ok = c4 == _p("-C0*(u0 - 1/2*v0) - C1*x0") and c == _p("C0*v0*x0")
        residual = constants.substitute_into(on_shell)
        return f"C4 = {c4}; C = {c}", ok and residual.degree("t") <= 0
    step("second solved constant", "C4 = -C0*(u0 - 1/2*v0) - C1*x0 and C = C0*v0*x0", s13)

    inv = build_invariant_lagrangian()
    L_inv = inv.invariant_L
    bound = constants.solved_form

    def s14():
        expected = L_s + L_n.subs({"C2": bound["C2"], "C4": bound["C4"]})
        el = euler_lagrange(L_inv)
        return f"EL(L) = {el}", L_inv == expected and el == _p("C0*xddot")
    step("invariant Lagrangian", "L = L_s + L_n with C2, C4 bound; EL(L) = C0*xddot", s14)

    def s15():
        null_part = L_inv - L_s
        expected = _p("C1*xdot*x") + bound["C2"] * _p("xdot*t + x") \
            + bound["C4"] * _p("xdot") + _p("C6")
        return f"L_n = {null_part}", null_part == expected and is_null(null_part)
    step("invariant null Lagrangian", "L_n = C1*xdot*x + C2*(xdot*t + x) + C4*xdot + C6", s15)

    dec_inv = decompose(L_inv, ctx)

    def s16():
        same = prime(L_s) + prime(L_inv - L_s)
        gauge_on_shell = on_shell_substitute(dec_inv.induced_gauge, sol)
        ok = dec_inv.same_form == same and dec_inv.exact() and gauge_on_shell.degree("t") <= 0
        return f"induced gauge on-shell = {gauge_on_shell}", ok
    step("boosted invariant Lagrangian", "L' = L_s' + L_n' up to a constant gauge on-shell", s16)

    def s17():
        report = verify_invariance(L_inv, ctx, sol)
        ok = report.passed and report.residual_constant == _p("C0*v0*x0")
        return f"verdict {'PASS' if report.passed else 'FAIL'}, C = {report.residual_constant}", ok
    step("same form in both frames", "L_n' has the form of L_n, so L is Galilean invariant", s17)

    def s18():
        report = verify_invariance(L_s, ctx, sol)
        return (f"verdict {'PASS' if report.passed else 'FAIL'}; "
                f"time-dependent terms {', '.join(report.offending_terms)}"), not report.passed
    step("standard Lagrangian alone", "L_s -> L_s' + L_Gs' is not invariant", s18)

    def s19():
        report = verify_invariance(L_inv, ctx, sol)
        strict = verify_invariance(L_inv, ctx, sol, strict=True)
        return (f"with L_n: {'PASS' if report.passed else 'FAIL'}; "
                f"off-shell: {'PASS' if strict.passed else 'FAIL'}"), report.passed and not strict.passed
    step("supplemented by a null Lagrangian", "L_s + L_n -> L_s' + L_n' (on-shell constancy)", s19)

    return steps
