"""
Building a Galilean invariant Lagrangian
========================================

The induced gauge Phi'_Gs of the kinetic term grows with t along free
motion, so L_s alone changes form under a boost.  Adding a null Lagrangian
and choosing its constants so the total gauge is constant along solutions
of xddot = 0 fixes that.
"""

from nullgauge import (
    BoostContext, OnShellSolution, build_invariant_lagrangian, decompose,
    general_null_lagrangian, on_shell_substitute, solve_constancy,
    standard_lagrangian, verify_invariance,
)

L = standard_lagrangian() + general_null_lagrangian()
gauge = decompose(L).induced_gauge
print("Phi'_G          =", gauge)

# along x'(t) = (u0 - v0)*t + x0
on_shell = on_shell_substitute(gauge, OnShellSolution())
print("on-shell        =", on_shell)

cs = solve_constancy(on_shell)
for name, value in cs.solved_form.items():
    print(f"{name:<15} = {value}")
print("assuming", ", ".join(f"{a} != 0" for a in cs.assumptions))

sol = build_invariant_lagrangian()
print("invariant L     =", sol.invariant_L)

print()
print(verify_invariance(sol.invariant_L))
print()
print(verify_invariance(standard_lagrangian()))

# with numbers bound
sol = build_invariant_lagrangian(C0=1, C1=0, C6=0, u0=0)
print()
print("C0=1, C1=0, C6=0, u0=0:  L =", sol.invariant_L)

# requiring a constant gauge for every path, not only free motion
print("strict:", build_invariant_lagrangian(strict=True).invariant_L)
print(verify_invariance(build_invariant_lagrangian().invariant_L, BoostContext(), strict=True))
