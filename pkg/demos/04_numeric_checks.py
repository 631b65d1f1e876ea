"""
Numeric cross-checks
====================

The symbolic identities can also be checked with floats: actions by
Gauss-Legendre quadrature along polynomial paths, and the Euler-Lagrange
expression by central finite differences.
"""

import numpy as np

from nullgauge import BoostContext, build_invariant_lagrangian, gauge_from_null, parse
from nullgauge.numeric_verify import Path, action, check_boost_action, check_null_action, fd_check_el

rng = np.random.default_rng(0)

# x(t) = t^3, action of C1*x*xdot on [0, 1] is 1/2
print(action(parse("C1*xdot*x"), Path((0, 0, 0, 1)), {"C1": 1}, 0, 1))

# the action of a null Lagrangian is Phi(t1) - Phi(t0), whatever the path
L_n = parse("C1*xdot*x + C2*(xdot*t + x) + C4*xdot + C6")
phi = gauge_from_null(L_n)
b = {"C1": 0.5, "C2": -1.25, "C4": 2.0, "C6": 0.75}
for _ in range(3):
    path = Path(tuple(rng.uniform(-1, 1, 5)))
    print(check_null_action(L_n, phi, path, b, -0.5, 1.0))

# the invariant Lagrangian, boosted, on random paths
L = build_invariant_lagrangian().invariant_L
b = dict(C0=1.0, C1=0.25, C6=-1.0, u0=0.5, x0=2.0, v0=1.5)
path = Path(tuple(rng.uniform(-1, 1, 5)))
print(check_boost_action(L, BoostContext(), path, b, 0.0, 2.0))

# symbolic EL against finite differences with h = 1e-5
print(fd_check_el(L, path, b, np.linspace(0, 2, 9)))
