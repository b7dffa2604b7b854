# Ideal arithmetic in Z/2^d[T]/(p(T)) with Howell normal form.
#
# Over Z/2^d, row echelon form cannot decide membership (zero divisors);
# the Howell form can, and it is canonical: two generating sets give the
# same ideal exactly when they produce identical Howell rows.

import numpy as np

from greenberg.group_ring import (HowellIdeal, canonical_generators, full_spec,
                                  mutual_membership, norm_element)

spec = full_spec(2, d=3)   # Z/8[T] / ((T+1)^4 - 1)
print(f"ring: Z/{spec.modulus}[T] / ((T+1)^{spec.rank} - 1)\n")

ideal = HowellIdeal.from_generators(spec, [(2,), (0, 0, 1)])   # (2, T^2)
print("ideal (2, T^2) in Howell form (rows ascending by pivot degree):")
print(ideal.rows)
print("pivots (degree, valuation):", ideal.pivots)
print("log2 of the index:", ideal.log2_index())

# membership is reduction to zero; the norm element of level 2 is inside,
# the one of level 1 is not -- that is exactly what the stabilization level
# n0 = 2 of f = 949 means
print("\nnorm element of level 2 member:", ideal.contains(norm_element(2, spec)))
print("norm element of level 1 member:", ideal.contains(norm_element(1, spec)))

# different generators, same ideal, identical canonical rows
other = HowellIdeal.from_generators(spec, [(2, 2), (2,), (0, 2, 1)])
print("\n(2+2T, 2, 2T+T^2) equals (2, T^2):", mutual_membership(ideal, other),
      "| identical Howell rows:", np.array_equal(ideal.rows, other.rows))

# canonical minimal generators: the strict descents of pivot valuation,
# which is how tables of such ideals are conventionally printed
print("\ncanonical generators:", canonical_generators(ideal))
print("of a messier ideal:",
      canonical_generators(HowellIdeal.from_generators(spec, [(4,), (2, 2, 1)])))
print("of the zero ideal (ambient only):",
      canonical_generators(HowellIdeal.empty(spec)))
