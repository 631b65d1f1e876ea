"""
Galilean boosts and the induced gauge term
==========================================

Under x = x' + v0*t the kinetic Lagrangian picks up extra terms.  They are
a total derivative, so the boosted Lagrangian splits into the same form in
primed variables plus dPhi_G/dt.
"""

from nullgauge import BoostContext, boost, decompose, euler_lagrange, parse

L_s = parse("1/2*C0*xdot^2")
L_n = parse("C1*xdot*x + C2*(xdot*t + x) + C4*xdot + C6")

print("L_s'      =", boost(L_s))

dec = decompose(L_s)
print("same form =", dec.same_form)
print("Phi'_Gs   =", dec.induced_gauge)
print("exact     :", dec.exact())

dec = decompose(L_n)
print("Phi'_Gn   =", dec.induced_gauge)

# the equation of motion keeps its form in the moving frame
print("EL(L_s')  =", euler_lagrange(boost(L_s)))

# a concrete boost velocity
dec = decompose(L_s, BoostContext("3/2"))
print("v0 = 3/2 : Phi'_Gs =", dec.induced_gauge)

# boosting back undoes the boost
ctx = BoostContext()
print("round trip:", boost(boost(L_s, ctx), ctx.inverse()) == L_s)
