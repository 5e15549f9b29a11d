"""Uniserial rings, Smith normal form and submodule types."""

import numpy as np

from artifact.ring_core import UniserialRing, smith_normal_form, solve_linear
from artifact.module_core import FinModule, span_type, quotient_exponents

# Z/2^3 and F_3[x]/x^3: both are uniserial of length 3
for spec in ("zmod:2:3", "poly:3:3"):
    R = UniserialRing.parse(spec)
    A = np.array([[R.pi_pow(1), R.pi_pow(2)], [R.pi_pow(2), 0]])
    s = smith_normal_form(R, A)
    print(spec, "SNF exponents", s.exponents)

# solve A x = b; the solution set is particular + span(kernel)
R = UniserialRing.parse("zmod:2:3")
sol = solve_linear(R, np.array([[2, 4]]), np.array([4]))
print("particular", sol.particular.ravel(), "kernel columns", sol.kernel.T.tolist())

# a submodule of Z/8 + Z/4 generated by (2, 1): its type and cotype
M = FinModule(R, (3, 2))
G = np.array([[2], [1]])
print("type", span_type(R, M.parts, G), "cotype", quotient_exponents(R, M.parts, G))
