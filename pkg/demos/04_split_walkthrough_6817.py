# The split worked example, f = 6817 = 17 * 401 (f = 1 mod 8, h = 2).
#
# When 2 splits, a third unit family (delta) enters, the functionals are
# built in two stages, and the ideals live in the T-divided quotient
# Z/2^(n+1)[T] / (((T+1)^(2^n) - 1) / T). This field needs seven levels:
# the tower genuinely grows a little before it stabilizes, and the
# norm-element criterion is what ends the run (the cardinality bound alone
# would have needed level 11).

import time

from greenberg.group_ring import canonical_generators, norm_element, scalar
from greenberg.quadratic import class_number
from greenberg.verify import RunConfig, verify

f = 6817
info = class_number(f)
print(f"f = {f}: h = {info.h}, m0 = {info.m0}, gate = {info.gate}\n")

t0 = time.time()
rep = verify(f, RunConfig(primes=15))
print("n   J'_n                          [Z_2[T] : J'_n]   time")
for lv in rep.levels:
    print(f"{lv.n:<4}{str(canonical_generators(lv.ideal)):<30}2^{lv.log2_index:<16}{lv.seconds:.2f}s")

final = rep.levels[-1].ideal
print(f"\nterminated at m = {rep.m} via {rep.criterion}:")
print(f"  2^{rep.m - info.m0} in J'_{rep.m}:",
      final.contains(scalar(1 << (rep.m - info.m0), final.spec)))
print(f"  norm element of level {rep.m - 1} in J'_{rep.m}:",
      final.contains(norm_element(rep.m - 1, final.spec)))
print(f"\ncertificate: J = {rep.reported}, n0 = {rep.n0}, N = 2^{rep.log2_index}")
print(f"stable from level {rep.stable_from} (exactly certified: {rep.stable_exact})")
print(f"total {time.time() - t0:.1f}s")
