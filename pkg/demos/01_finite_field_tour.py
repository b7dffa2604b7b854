# A tour of the finite-field layer: split primes, certified roots of unity,
# and 2-power discrete logarithms.
#
# Everything downstream evaluates cyclotomic units at primes
# r = 1 mod 2^(n+2)*f, where F_{r^2} contains a root of unity of exact
# order 2^(n+3)*f. One deterministic choice of that root is the "context".

from greenberg.cyclo_logs import find_split_primes
from greenberg.finite_field import build_field_context, dlog_two_power, is_prime

f, n = 949, 1
print(f"f = {f}, level n = {n}: need primes r = 1 mod 2^{n+2}*{f} = {(1 << (n+2)) * f}")

primes = find_split_primes(f, n, 6)
print("first six:", primes)
assert all(is_prime(r) for r in primes)

ctx = build_field_context(primes[0], n, f)
print(f"\ncontext at r = {ctx.r}: F_(r^2) = F_r(sqrt({ctx.q}))")
print(f"zeta = {ctx.zeta}  (order 2^{n+3} * {f} = {(1 << (n+3)) * f}, certified)")

# the certificate: zeta^(order/p) != 1 for every prime p | 2f
gf = ctx.field
order = (1 << (n + 3)) * f
for p in (2, 13, 73):
    print(f"  zeta^(order/{p}) = {gf.pow(ctx.zeta, order // p)}  (must not be (1, 0))")

# derived roots: the 2-power tower root lives in F_{r^2}, everything else
# is rational over F_r
print(f"\nzeta4 = {ctx.zeta4}, zeta_f = {ctx.zeta_f}, zeta_2k = {ctx.zeta_2k} (all in F_r)")
print(f"zeta_(2^{n+3}) = {ctx.zeta_2n3} (in F_(r^2))")

# the discrete log: u -> e with u^((r-1)/2^k) = zeta_2k^e, k = n+1
print("\nsome discrete logs mod 2^%d:" % (1 << ctx.k))
for u in (1, ctx.r - 1, 2, 3, 5):
    e = dlog_two_power(u, ctx)
    check = pow(u, (ctx.r - 1) >> ctx.k, ctx.r) == pow(ctx.zeta_2k, e, ctx.r)
    print(f"  log({u}) = {e}   defining identity holds: {check}")
print("\nnote log(-1) = 0: the whole construction is insensitive to unit signs.")
