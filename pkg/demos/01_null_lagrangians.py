"""
Null Lagrangians and their gauge functions
==========================================

A Lagrangian is null when its Euler-Lagrange expression vanishes
identically.  In one dimension such an L is a total time derivative
dPhi/dt, and the gauge function Phi can be recovered from L.
"""

from nullgauge import euler_lagrange, gauge_from_null, is_null, null_conditions, parse

# the kinetic term is not null, its EL expression is the acceleration
L_s = parse("1/2*C0*xdot^2")
print("EL(L_s) =", euler_lagrange(L_s))

# a six-constant ansatz with terms linear in x, xdot and t
ansatz = parse("C1*xdot*x + C2*xdot*t + C3*x*t + C4*xdot + C5*x + C6")
print("EL(ansatz) =", euler_lagrange(ansatz))

# requiring EL == 0 for every path fixes two of the constants
cs = null_conditions(ansatz)
print("conditions:", cs)

L_n = cs.substitute_into(ansatz)
print("L_n =", L_n)
print("is null:", is_null(L_n).null)

# each piece of L_n is the time derivative of a simple Phi
for piece in ["C1*xdot*x", "C2*(xdot*t + x)", "C4*xdot + C6", str(L_n)]:
    phi = gauge_from_null(parse(piece))
    print(f"{piece:<40} <- Phi = {phi}")

# adding L_n to any Lagrangian leaves the equation of motion alone
print("EL(L_s + L_n) =", euler_lagrange(L_s + L_n))

# something that is not affine in xdot can never be null
try:
    gauge_from_null(parse("xdot^3*x"))
except ValueError as exc:
    print("rejected:", exc)
