from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from nullgauge.expr_core import (
    AccelerationError, DegreeCapError, ParseError, Polynomial, SYMBOLS,
    UnknownSymbolError, add, degree_cap, mul, parse, partial, substitute, sym,
    total_time_derivative,
)

from strategies import polynomials, to_sympy

ALL = ("C1", "v0", "t", "x", "xdot")


def test_parse_fragment():
    p = parse("C1*xdot*x + C2*(xdot*t + x)")
    assert len(p) == 3
    assert p == sym("C1") * sym("xdot") * sym("x") + sym("C2") * sym("xdot") * sym("t") + sym("C2") * sym("x")


def test_parse_zero_is_empty():
    assert parse("0").terms() == ()
    assert parse("0").is_zero()


def test_parse_standard_lagrangian():
    p = parse("1/2*C0*xdot^2")
    (m,) = p.terms()
    assert m.coeff == Fraction(1, 2)
    assert m.powers == (("C0", 1), ("xdot", 2))


@pytest.mark.parametrize("text, expected", [
    ("-x^2", "-x^2"),
    ("-(x + t)", "-t - x"),
    ("2 - - x", "x + 2"),
    ("(x)^2*3/4", "3/4*x^2"),
    ("  x*\tt ", "t*x"),
])
def test_parse_misc(text, expected):
    assert str(parse(text)) == expected


@pytest.mark.parametrize("text, exc, pos", [
    ("C1 xdot", ParseError, 3),
    ("x +", ParseError, 3),
    ("foo*x", UnknownSymbolError, 0),
    ("x*C9", UnknownSymbolError, 2),
    ("x^9", DegreeCapError, None),
    ("xddot", AccelerationError, None),
    ("x/2", ParseError, 1),
    ("1/0", ParseError, 2),
    ("x^2.5", ParseError, 3),
    ("x # t", ParseError, 2),
    ("", ParseError, 0),
])
def test_parse_errors(text, exc, pos):
    with pytest.raises(exc) as info:
        parse(text)
    if pos is not None:
        assert info.value.position == pos


def test_accel_allowed_for_residuals():
    assert parse("C0*xddot", allow_accel=True) == sym("C0") * sym("xddot")


def test_add_identity():
    p = parse("x*t + 3")
    assert add(p, Polynomial.zero()) == p


def test_difference_of_squares():
    x, t = sym("x"), sym("t")
    assert mul(x + t, x - t) == parse("x^2 - t^2")


def test_add_test_lagrangians():
    La = parse("C1*xdot*x + C2*xdot*t + C3*x*t")
    Lb = parse("C4*xdot + C5*x + C6")
    assert len(add(La, Lb)) == 6


def test_degree_cap_on_products():
    p = sym("x") ** 4
    with pytest.raises(DegreeCapError):
        p * p * sym("t")
    with degree_cap(12):
        assert (p * p * sym("t")).degree() == 9


def test_substitute_binomial():
    got = substitute(parse("x^2"), "x", parse("xp + v0*t"))
    assert got == parse("xp^2 + 2*xp*v0*t + v0^2*t^2")


def test_substitute_velocity():
    assert substitute(sym("xdot"), "xdot", parse("xpdot + v0")) == parse("xpdot + v0")


def test_substitute_absent_symbol():
    assert substitute(sym("t"), "x", parse("C1*v0 + xp")) == sym("t")


def test_partials():
    assert partial(parse("1/2*C0*xdot^2"), "xdot") == parse("C0*xdot")
    assert partial(parse("C1*xdot*x"), "x") == parse("C1*xdot")
    assert partial(sym("C6"), "x").is_zero()


def test_partial_matches_finite_difference():
    p = parse("C1*xdot*x + 1/3*x^3*t")
    point = {"C1": 0.7, "xdot": -1.3, "x": 0.4, "t": 0.9}
    h = 1e-6
    hi, lo = dict(point), dict(point)
    hi["x"] += h
    lo["x"] -= h
    fd = (p.evaluate(hi) - p.evaluate(lo)) / (2 * h)
    assert abs(partial(p, "x").evaluate(point) - fd) < 1e-8


@pytest.mark.parametrize("phi, L", [
    ("1/2*C1*x^2", "C1*x*xdot"),
    ("C2*x*t", "C2*(xdot*t + x)"),
    ("C6*t + C4*x", "C6 + C4*xdot"),
])
def test_total_derivative_of_partial_gauges(phi, L):
    assert total_time_derivative(parse(phi)) == parse(L)


def test_total_derivative_introduces_acceleration_only_with_velocity():
    assert "xddot" not in total_time_derivative(parse("x^2*t")).free_symbols()
    assert total_time_derivative(parse("1/2*xdot^2")) == parse("xdot*xddot", allow_accel=True)
    assert total_time_derivative(parse("xp*t")) == parse("xpdot*t + xp")
    with pytest.raises(AccelerationError):
        total_time_derivative(parse("xddot", allow_accel=True))


def test_constants_are_time_independent():
    assert total_time_derivative(parse("C0*v0*u0*x0")).is_zero()


def test_str_repr():
    p = parse("-1/2*C0*xdot^2 + x - 3")
    assert str(p) == "-1/2*C0*xdot^2 + x - 3"
    assert repr(p) == "Polynomial('-1/2*C0*xdot^2 + x - 3')"
    assert str(Polynomial()) == "0"


def test_evaluate_exact_and_unbound():
    p = parse("1/2*x^2 + t")
    assert p.evaluate({"x": Fraction(1, 3), "t": 1}) == Fraction(19, 18)
    with pytest.raises(KeyError):
        p.evaluate({"x": 1})


def test_symbol_table_kinds():
    assert SYMBOLS["xdot"].kind == "dynamic"
    assert SYMBOLS["t"].kind == "time"
    assert SYMBOLS["v0"].kind == "parameter"
    assert SYMBOLS["Cconst"].kind == "constant"


@given(polynomials(ALL), polynomials(ALL))
def test_add_commutes(a, b):
    assert add(a, b) == add(b, a)
    assert add(a, b).terms() == add(b, a).terms()


@given(polynomials(ALL), polynomials(ALL), polynomials(ALL))
def test_ring_axioms(a, b, c):
    with degree_cap(9):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Polynomial.zero()


@given(polynomials(ALL, max_terms=6, max_degree=5))
def test_print_parse_round_trip(p):
    assert parse(str(p)) == p


@given(polynomials(ALL), polynomials(ALL))
def test_structural_equality_matches_sympy(a, b):
    assert (a == b) == (sympy.expand(to_sympy(a) - to_sympy(b)) == 0)
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


@given(polynomials(ALL), polynomials(ALL))
def test_total_derivative_is_a_derivation(a, b):
    D = total_time_derivative
    assert D(a * b) == D(a) * b + a * D(b)


@given(polynomials(ALL, max_degree=4))
def test_partials_commute(p):
    assert partial(partial(p, "x"), "t") == partial(partial(p, "t"), "x")


@given(polynomials(("C1", "t", "x")), polynomials(("v0", "t", "xp")))
def test_substitute_matches_sympy(p, r):
    got = substitute(p, "x", r)
    want = sympy.expand(to_sympy(p).subs(sympy.Symbol("x"), to_sympy(r)))
    assert to_sympy(got) == want
