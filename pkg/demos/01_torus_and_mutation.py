"""Tour 1: exact quantum torus arithmetic and one seed mutation.

The coefficient ring is Z[u, u^-1]; a seed's variables are stored as
Laurent expansions in the INITIAL torus, so equality of cluster variables
is decidable and positivity is visible term by term.
"""

from qcaw import PolygonTriangulation, reduced_seed
from qcaw.qtorus import quasi_commutation_exponent, torus_left_divide

tri = PolygonTriangulation.star(4)
seed = reduced_seed(tri, 3)
print("P4 at n=3:", len(seed.quiver.vertices), "vertices,",
      len(seed.quiver.mutable), "mutable:", sorted(seed.quiver.mutable))

# mutate at the diagonal vertex 11: the new variable is the exact quotient
# of the exchange binomial by the old variable
s2 = seed.mutate("11")
print("\nA'_11 =", s2.vars["11"])
print("coefficients all nonnegative:", s2.vars["11"].all_coeffs_nonneg())

# the tracked quasi-commutation matrix matches the Laurent expansions
k = quasi_commutation_exponent(s2.vars["11"], s2.vars["12"])
print("\nquasi-commutation exponent of A'_11 with A_12:", k,
      "= tracked Pi'(11,12):", s2.pi_entry("11", "12"))

# exact left division is the engine: divide the old variable back out
product = seed.vars["11"] * s2.vars["11"]
quotient = torus_left_divide(seed.vars["11"], product)
print("\nleft division recovers the factor exactly:",
      quotient == s2.vars["11"])

# mutation is involutive on the whole seed
back = s2.mutate("11")
print("mu^2 = id on variables:", back.vars == seed.vars,
      " on Pi:", back.pi == seed.pi)
