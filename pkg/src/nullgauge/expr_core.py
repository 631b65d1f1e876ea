"""Exact-rational multivariate polynomials over a fixed symbol table.

Every Lagrangian, gauge function and Euler-Lagrange residual in the package
is a :class:`Polynomial`.  Coefficients are :class:`fractions.Fraction`, so
identities such as "this residual is zero" are decided exactly.

Polynomials are immutable and kept in a canonical form: a dict from exponent
vectors (one slot per symbol, in ``SYMBOL_ORDER``) to non-zero coefficients.
Two polynomials are equal iff they are equal as mathematical objects.
"""

from __future__ import annotations

import contextvars
import re
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

__all__ = [
    "Symbol", "Monomial", "Polynomial", "SYMBOLS", "SYMBOL_ORDER",
    "ExprError", "ParseError", "UnknownSymbolError", "DegreeCapError",
    "AccelerationError", "parse", "add", "mul", "substitute", "partial",
    "total_time_derivative", "degree_cap", "get_degree_cap", "sym",
]

DEFAULT_DEGREE_CAP = 8


class ExprError(ValueError):
    pass


class ParseError(ExprError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownSymbolError(ParseError):
    pass


class DegreeCapError(ExprError):
    pass


class AccelerationError(ExprError):
    """Raised when an acceleration symbol shows up where only x, xdot, t may."""


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str  # dynamic | time | parameter | constant

    def __str__(self) -> str:
        return self.name


_TABLE = [
    ("C0", "constant"), ("C1", "constant"), ("C2", "constant"),
    ("C3", "constant"), ("C4", "constant"), ("C5", "constant"),
    ("C6", "constant"), ("Cconst", "constant"),
    ("v0", "parameter"), ("u0", "parameter"), ("x0", "parameter"),
    ("t", "time"),
    ("x", "dynamic"), ("xdot", "dynamic"), ("xddot", "dynamic"),
    ("xp", "dynamic"), ("xpdot", "dynamic"), ("xpddot", "dynamic"),
]

SYMBOL_ORDER: tuple[str, ...] = tuple(name for name, _ in _TABLE)
SYMBOLS: dict[str, Symbol] = {name: Symbol(name, kind) for name, kind in _TABLE}
_INDEX = {name: i for i, name in enumerate(SYMBOL_ORDER)}
_NSYM = len(SYMBOL_ORDER)

ACCELERATIONS = frozenset({"xddot", "xpddot"})
UNPRIMED = frozenset({"x", "xdot", "xddot"})
PRIMED = frozenset({"xp", "xpdot", "xpddot"})

# d/dt of each symbol along a trajectory; symbols not listed are constant in time
_RATES = {"t": None, "x": "xdot", "xdot": "xddot", "xp": "xpdot", "xpdot": "xpddot"}

_cap = contextvars.ContextVar("degree_cap", default=DEFAULT_DEGREE_CAP)


def get_degree_cap() -> int:
    return _cap.get()


@contextmanager
def degree_cap(cap: int):
    """Temporarily change the total-degree cap enforced on every result."""
    token = _cap.set(int(cap))
    try:
        yield
    finally:
        _cap.reset(token)


def _name(s: Union[str, Symbol]) -> str:
    name = s.name if isinstance(s, Symbol) else s
    if name not in _INDEX:
        raise UnknownSymbolError(f"unknown symbol {name!r}")
    return name


class Monomial(NamedTuple):
    coeff: Fraction
    powers: tuple[tuple[str, int], ...]


Exps = tuple[int, ...]
Scalar = Union[int, Fraction]


def _sort_key(exps: Exps):
    # graded lex, highest total degree first
    return (-sum(exps), tuple(-e for e in exps))


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exps, Scalar] | None = None):
        cleaned: dict[Exps, Fraction] = {}
        cap = _cap.get()
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            if len(exps) != _NSYM or any(e < 0 for e in exps):
                raise ExprError(f"malformed exponent vector {exps!r}")
            if sum(exps) > cap:
                raise DegreeCapError(
                    f"total degree {sum(exps)} exceeds the cap of {cap}")
            cleaned[tuple(exps)] = c
        self._terms = {k: cleaned[k] for k in sorted(cleaned, key=_sort_key)}
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def const(cls, value: Scalar) -> "Polynomial":
        return cls({(0,) * _NSYM: value})

    @classmethod
    def symbol(cls, s: Union[str, Symbol]) -> "Polynomial":
        exps = [0] * _NSYM
        exps[_INDEX[_name(s)]] = 1
        return cls({tuple(exps): 1})

    @classmethod
    def coerce(cls, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, Symbol):
            return cls.symbol(value)
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        if isinstance(value, str):
            return parse(value, allow_accel=True)
        raise TypeError(f"cannot make a Polynomial from {type(value).__name__}")

    # inspection -------------------------------------------------------
    def items(self) -> Iterator[tuple[Exps, Fraction]]:
        return iter(self._terms.items())

    def terms(self) -> tuple[Monomial, ...]:
        return tuple(
            Monomial(c, tuple((SYMBOL_ORDER[i], e) for i, e in enumerate(exps) if e))
            for exps, c in self._terms.items()
        )

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def free_symbols(self) -> frozenset[str]:
        used = set()
        for exps in self._terms:
            used.update(SYMBOL_ORDER[i] for i, e in enumerate(exps) if e)
        return frozenset(used)

    def degree(self, symbols: Union[str, Symbol, Iterable, None] = None) -> int:
        """Total degree, or the degree in the given symbol(s). Zero has degree -1."""
        if not self._terms:
            return -1
        if symbols is None:
            idx = range(_NSYM)
        elif isinstance(symbols, (str, Symbol)):
            idx = [_INDEX[_name(symbols)]]
        else:
            idx = [_INDEX[_name(s)] for s in symbols]
        return max(sum(exps[i] for i in idx) for exps in self._terms)

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ExprError(f"{self} is not a number")
        return self._terms.get((0,) * _NSYM, Fraction(0))

    def collect(self, symbols: Iterable[Union[str, Symbol]]) -> dict[Exps, "Polynomial"]:
        """Group by the powers of ``symbols``; values are the coefficient polynomials.

        Keys are exponent tuples aligned with ``symbols``.
        """
        idx = [_INDEX[_name(s)] for s in symbols]
        out: dict[Exps, dict[Exps, Fraction]] = {}
        for exps, c in self._terms.items():
            key = tuple(exps[i] for i in idx)
            rest = list(exps)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Polynomial(v) for k, v in out.items()}

    def drop_free_of(self, symbols: Iterable[Union[str, Symbol]]) -> "Polynomial":
        """Remove the terms that contain none of ``symbols``."""
        idx = [_INDEX[_name(s)] for s in symbols]
        return Polynomial({e: c for e, c in self._terms.items() if any(e[i] for i in idx)})

    # arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exps, c in other._terms.items():
            out[exps] = out.get(exps, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        cap = _cap.get()
        out: dict[Exps, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = tuple(a + b for a, b in zip(ea, eb))
                if sum(exps) > cap:
                    raise DegreeCapError(
                        f"total degree {sum(exps)} exceeds the cap of {cap}")
                out[exps] = out.get(exps, 0) + ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            other = other.constant_value()
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return Polynomial({e: c / other for e, c in self._terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ExprError("only non-negative integer powers are supported")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # calculus and substitution ---------------------------------------
    def partial(self, s: Union[str, Symbol]) -> "Polynomial":
        i = _INDEX[_name(s)]
        out = {}
        for exps, c in self._terms.items():
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                out[tuple(e)] = c * exps[i]
        return Polynomial(out)

    def integrate(self, s: Union[str, Symbol]) -> "Polynomial":
        """Term-by-term antiderivative in ``s`` with zero integration constant."""
        i = _INDEX[_name(s)]
        out = {}
        for exps, c in self._terms.items():
            e = list(exps)
            e[i] += 1
            out[tuple(e)] = c / e[i]
        return Polynomial(out)

    def subs(self, mapping: Mapping[Union[str, Symbol], object]) -> "Polynomial":
        """Simultaneous substitution of symbols by polynomials (or numbers)."""
        repl = {_INDEX[_name(k)]: Polynomial.coerce(v) for k, v in mapping.items()}
        if not repl:
            return self
        result = Polynomial()
        powers: dict[tuple[int, int], Polynomial] = {}
        for exps, c in self._terms.items():
            kept = list(exps)
            term = Polynomial.const(c)
            for i, r in repl.items():
                if exps[i]:
                    kept[i] = 0
                    key = (i, exps[i])
                    if key not in powers:
                        powers[key] = r ** exps[i]
                    term = term * powers[key]
            result = result + term * Polynomial({tuple(kept): 1})
        return result

    def total_time_derivative(self) -> "Polynomial":
        present = self.free_symbols()
        bad = present & ACCELERATIONS
        if bad:
            raise AccelerationError(
                f"cannot differentiate {sorted(bad)} along a trajectory: "
                "third derivatives are not in the symbol table")
        out = Polynomial()
        for name, rate in _RATES.items():
            if name in present:
                d = self.partial(name)
                out = out + (d if rate is None else d * Polynomial.symbol(rate))
        return out

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate with numeric values for every free symbol.

        Works with floats, Fractions, or numpy arrays (broadcasting).
        """
        missing = self.free_symbols() - set(values)
        if missing:
            raise KeyError(f"unbound symbols: {', '.join(sorted(missing, key=_INDEX.get))}")
        total = 0
        for exps, c in self._terms.items():
            term = float(c) if not _exact(values) else c
            for i, e in enumerate(exps):
                if e:
                    term = term * values[SYMBOL_ORDER[i]] ** e
            total = total + term
        return total

    # comparison / printing ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for n, (exps, c) in enumerate(self._terms.items()):
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(SYMBOL_ORDER, exps) if e
            ]
            mag = abs(c)
            if not factors:
                body = _fmt(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_fmt(mag)] + factors)
            if n == 0:
                parts.append("-" + body if c < 0 else body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def _exact(values: Mapping[str, object]) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values.values())


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def sym(name: Union[str, Symbol]) -> Polynomial:
    """Shorthand for the polynomial consisting of a single symbol."""
    return Polynomial.symbol(name)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), m.start()))
        elif m.group(2) is not None:
            tokens.append(("NAME", m.group(2), m.start()))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start())
            tokens.append((ch, ch, m.start()))
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := '-' factor | base ('^' INT)?
    # base   := INT ('/' INT)? | SYMBOL | '(' expr ')'

    def __init__(self, text: str, allow_accel: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_accel = allow_accel

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "END" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if self.peek()[0] == "END":
            raise ParseError("empty expression", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ParseError(f"unexpected {tok[1]!r} (implicit multiplication is not allowed)", tok[2])
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        b = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("INT")
            n = int(tok[1])
            if n > _cap.get():
                raise DegreeCapError(f"exponent {n} exceeds the degree cap of {_cap.get()} "
                                     f"(at position {tok[2]})")
            b = b ** n
        return b

    def base(self) -> Polynomial:
        tok = self.peek()
        kind = tok[0]
        if kind == "INT":
            self.take()
            num = int(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("INT")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("division by zero", den_tok[2])
                return Polynomial.const(Fraction(num, den))
            return Polynomial.const(num)
        if kind == "NAME":
            self.take()
            name = tok[1]
            if name not in _INDEX:
                raise UnknownSymbolError(f"unknown symbol {name!r}", tok[2])
            if name in ACCELERATIONS and not self.allow_accel:
                raise AccelerationError(
                    f"{name} may only appear in Euler-Lagrange residuals (at position {tok[2]})")
            return Polynomial.symbol(name)
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        what = "end of input" if kind == "END" else repr(tok[1])
        raise ParseError(f"unexpected {what}", tok[2])


def parse(text: str, *, allow_accel: bool = False) -> Polynomial:
    """Parse an expression into canonical form.

    >>> str(parse("C1*xdot*x + C2*(xdot*t + x)"))
    'C1*x*xdot + C2*t*xdot + C2*x'

    Acceleration symbols are rejected unless ``allow_accel`` is set, which is
    only meant for reading back Euler-Lagrange residuals.
    """
    return _Parser(text, allow_accel).parse()


# ---------------------------------------------------------------------------
# functional API

def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return Polynomial.coerce(a) + Polynomial.coerce(b)


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return Polynomial.coerce(a) * Polynomial.coerce(b)


def substitute(p: Polynomial, s: Union[str, Symbol], replacement) -> Polynomial:
    return Polynomial.coerce(p).subs({s: replacement})


def partial(p: Polynomial, s: Union[str, Symbol]) -> Polynomial:
    return Polynomial.coerce(p).partial(s)


def total_time_derivative(p: Polynomial) -> Polynomial:
    """d/dt along a trajectory: dp/dt + xdot*dp/dx + xddot*dp/dxdot (and primed)."""
    return Polynomial.coerce(p).total_time_derivative()
