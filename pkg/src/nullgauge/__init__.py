"""Null Lagrangians, gauge functions and Galilean invariance in one dimension."""

from .expr_core import (
    AccelerationError, DegreeCapError, ExprError, Monomial, ParseError,
    Polynomial, Symbol, SYMBOLS, UnknownSymbolError, add, degree_cap, mul,
    parse, partial, substitute, sym, total_time_derivative,
)
from .galilean import BoostContext, BoostDecomposition, boost, decompose, prime, unprime
from .invariance_solver import (
    InvarianceReport, InvarianceSolution, OnShellSolution,
    build_invariant_lagrangian, general_null_lagrangian, on_shell_substitute,
    solve_constancy, solve_offshell, standard_lagrangian, verify_invariance,
)
from .numeric_verify import (
    CheckResult, Path, action, check_boost_action, check_null_action,
    eval_on_path, fd_check_el,
)
from .variational import (
    ConstraintSet, GaugeFunction, NotExactError, NotNullError, euler_lagrange,
    gauge_from_null, is_null, null_conditions,
)

__version__ = "0.1.0"
