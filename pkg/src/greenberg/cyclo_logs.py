"""Log-polynomials of the three cyclotomic-unit families at a split prime.

For a prime r = 1 mod 2^(n+2)*f and a context embedding the order-2^(n+3)*f
roots of unity in F_{r^2}, each unit u gives a polynomial whose X^i
coefficient is the 2-power discrete log of the i-th conjugate of u reduced
mod r.  The three families:

  * eta:   products of ker(chi)-conjugates of zeta4 * (zeta_{2^(n+3)} zeta_f
           - their inverses); one product of phi(f)/2 factors per coefficient
           (the hot loop, vectorized when r fits in int64 arithmetic),
  * beta:  a single cyclotomic-unit ratio of 2-power roots per coefficient,
  * delta (only f = 1 mod 8): a G_n-invariant unit, so one scalar c with
           log-polynomial c * (1 + X + ... + X^(2^n - 1)).

Every product is asserted to land in F_r before its discrete log is taken;
a failure would mean an inconsistent embedding and must never happen.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from greenberg.finite_field import (FieldContext, build_field_context, dlog_two_power,
                                    is_prime)
from greenberg.group_ring import to_T_basis, to_X_basis
from greenberg.quadratic import KernelSet

PRIME_SWEEP_CAP = 10_000_000
_NUMPY_LIMIT = 1 << 31          # int64 products of two residues stay exact
_FLOAT_LIMIT = 1 << 50          # float-corrected path is exact below this

CACHE_VERSION = "greenberg-logcache v1 (X-basis coefficients)"


@dataclass(frozen=True)
class LogPoly:
    """Coefficient sequence of f_r^u, length 2^n, entries mod 2^k."""

    n: int
    k: int
    basis: str                  # "X" or "T" (T = X - 1)
    coeffs: tuple[int, ...]

    def __post_init__(self):
        assert len(self.coeffs) == 1 << self.n
        assert self.basis in ("X", "T")

    def to_T(self) -> "LogPoly":
        if self.basis == "T":
            return self
        c = to_T_basis(self.coeffs, 1 << self.k)
        return LogPoly(self.n, self.k, "T", tuple(int(x) for x in c))

    def to_X(self) -> "LogPoly":
        if self.basis == "X":
            return self
        c = to_X_basis(self.coeffs, 1 << self.k)
        return LogPoly(self.n, self.k, "X", tuple(int(x) for x in c))

    def aug(self) -> int:
        """Evaluation at the group identity (X = 1, T = 0)."""
        if self.basis == "T":
            return self.coeffs[0] % (1 << self.k)
        return sum(self.coeffs) % (1 << self.k)


@dataclass(frozen=True)
class PrimeLogRecord:
    """The three log-polynomials of one auxiliary prime (delta as a scalar)."""

    r: int
    eta: LogPoly
    beta: LogPoly
    delta_scalar: int | None

    def __post_init__(self):
        assert self.beta.aug() == 0, \
            "beta log-polynomial must lie in the augmentation ideal"


def find_split_primes(f: int, n: int, count: int, *, cap: int = PRIME_SWEEP_CAP) -> list[int]:
    """First ``count`` primes r = 1 mod 2^(n+2)*f, in increasing order."""
    modulus = (1 << (n + 2)) * f
    out: list[int] = []
    t = 1
    while len(out) < count:
        if t > cap:
            raise RuntimeError(f"prime sweep cap {cap} hit for f={f}, n={n}")
        c = 1 + t * modulus
        if is_prime(c):
            out.append(c)
        t += 1
    return out


# ---------------------------------------------------------------------------
# vectorized F_r / F_{r^2} helpers (numpy fast paths)

def _mulmod(a: np.ndarray, b, r: int) -> np.ndarray:
    """Exact elementwise a*b mod r for int64 arrays of residues."""
    if r < _NUMPY_LIMIT:
        return a * b % r
    # float-corrected product: the quotient estimate is off by at most a few
    # ulps, and the int64 wraparound of a*b - q*r equals the exact signed
    # remainder because |remainder| < 3r < 2^63
    q = np.floor(a.astype(np.float64) * np.asarray(b, dtype=np.float64) / r).astype(np.int64)
    rem = a * b - q * r
    while (rem < 0).any():
        rem[rem < 0] += r
    while (rem >= r).any():
        rem[rem >= r] -= r
    return rem


def _fp2_mul_vec(xa, xb, ya, yb, r: int, q: int):
    t = _mulmod(xb, yb, r)
    a = (_mulmod(xa, ya, r) + _mulmod(t, q, r)) % r
    b = (_mulmod(xa, yb, r) + _mulmod(xb, ya, r)) % r
    return a, b


def _fp2_product(fa: np.ndarray, fb: np.ndarray, r: int, q: int) -> tuple[int, int]:
    """Product of a vector of F_{r^2} elements by pairwise tree folding."""
    while len(fa) > 1:
        m = len(fa) // 2
        pa, pb = _fp2_mul_vec(fa[:m], fb[:m], fa[m:2 * m], fb[m:2 * m], r, q)
        if len(fa) % 2:
            fa = np.concatenate([pa, fa[-1:]])
            fb = np.concatenate([pb, fb[-1:]])
        else:
            fa, fb = pa, pb
    return int(fa[0]), int(fb[0])


def _zeta_f_table(ctx: FieldContext) -> list[int]:
    tab = [1] * ctx.f
    for j in range(1, ctx.f):
        tab[j] = tab[j - 1] * ctx.zeta_f % ctx.r
    return tab


def log_poly_eta(ctx: FieldContext, kernel: KernelSet, *,
                 force_python: bool = False) -> LogPoly:
    """Coefficients of f_r^eta: one kernel product per conjugate.

    Coefficient i is the discrete log of

        prod_{a in ker} zeta4^(3^i) (zeta_{2^(n+3)}^(3^i) zeta_f^a
                                     - zeta_{2^(n+3)}^(-3^i) zeta_f^(-a)).

    zeta_f and zeta4 are rational over F_r, so the zeta4 power and the
    zeta_f table factor out; only the 2^(n+3)-root is a genuine F_{r^2}
    element.  Each full product must be Frobenius-fixed.
    """
    assert kernel.f == ctx.f, "kernel and context disagree on f"
    gf = ctx.field
    r, q, n = ctx.r, ctx.q, ctx.n
    ord2 = 1 << (n + 3)
    ksize = len(kernel.residues)
    tab = _zeta_f_table(ctx)

    use_numpy = r < _FLOAT_LIMIT and not force_python
    if use_numpy:
        idx = np.asarray(kernel.residues, dtype=np.int64)
        zk = np.asarray(tab, dtype=np.int64)[idx]
        zki = np.asarray(tab, dtype=np.int64)[(ctx.f - idx) % ctx.f]

    coeffs = []
    for i in range(1 << n):
        e3 = pow(3, i, ord2)
        A = gf.pow(ctx.zeta_2n3, e3)
        Ai = gf.pow(ctx.zeta_2n3, ord2 - e3)
        if use_numpy:
            fa = (_mulmod(zk, A[0], r) - _mulmod(zki, Ai[0], r)) % r
            fb = (_mulmod(zk, A[1], r) - _mulmod(zki, Ai[1], r)) % r
            pa, pb = _fp2_product(fa, fb, r, q)
        else:
            pa, pb = 1, 0
            for a in kernel.residues:
                z, zi = tab[a], tab[ctx.f - a]
                fa = (A[0] * z - Ai[0] * zi) % r
                fb = (A[1] * z - Ai[1] * zi) % r
                pa, pb = (pa * fa + q * (pb * fb % r)) % r, (pa * fb + pb * fa) % r
        z4 = pow(ctx.zeta4, (e3 % 4) * ksize % 4, r)
        pa = pa * z4 % r
        pb = pb * z4 % r
        assert pb == 0 and pa != 0, "eta conjugate product left F_r"
        coeffs.append(dlog_two_power(pa, ctx))
    return LogPoly(n=n, k=ctx.k, basis="X", coeffs=tuple(coeffs))


def log_poly_beta(ctx: FieldContext) -> LogPoly:
    """Coefficients of f_r^beta.

    Coefficient i is the discrete log of

        zeta_{2^(n+2)}^((3^i - 3^(i+1))/2) *
            (1 - zeta_{2^(n+2)}^(3^(i+1))) / (1 - zeta_{2^(n+2)}^(3^i)),

    with the half-exponent resolved exactly: (3^i - 3^(i+1))/2 = -3^i.
    All factors are rational over F_r.  The coefficient sum vanishes
    mod 2^k (the functional kills the norm-compatible unit family).
    """
    r, n = ctx.r, ctx.n
    ord2 = 1 << (n + 2)
    w = ctx.field.mul(ctx.zeta_2n3, ctx.zeta_2n3)
    assert w[1] == 0, "2^(n+2) root of unity must be rational over F_r"
    w = w[0]
    coeffs = []
    for i in range(1 << n):
        e = pow(3, i, ord2)
        e1 = 3 * e % ord2
        num = (1 - pow(w, e1, r)) % r
        den = (1 - pow(w, e, r)) % r
        val = pow(w, ord2 - e, r) * num % r * pow(den, -1, r) % r
        coeffs.append(dlog_two_power(val, ctx))
    poly = LogPoly(n=n, k=ctx.k, basis="X", coeffs=tuple(coeffs))
    assert poly.aug() == 0, "beta lies in the augmentation ideal"
    return poly


def log_scalar_delta(ctx: FieldContext, kernel: KernelSet, f_prime: bool) -> int:
    """The scalar c with f_r^delta = c * (norm element), for f = 1 mod 8.

    Non-prime f: c = log of prod_{a in ker}(1 - zeta_f^a).  Prime f: the
    product runs over ker/{+-1} (residues a <= (f-1)/2) of

        zeta_f^(a (s-1)/2) (1 - zeta_f^a) / (1 - zeta_f^(a s)),

    where s is the smallest non-kernel residue and (s-1)/2 is resolved by
    the inverse of 2 mod f.
    """
    if ctx.f % 8 != 1:
        raise ValueError("delta exists only when f = 1 mod 8")
    assert kernel.sign_case == "chi_f"
    r, f = ctx.r, ctx.f
    tab = _zeta_f_table(ctx)
    if not f_prime:
        num = 1
        for a in kernel.residues:
            num = num * (1 - tab[a]) % r
        val = num % r
    else:
        s = next(a for a in range(2, f) if a not in kernel)
        inv2 = pow(2, -1, f)
        half = (s - 1) * inv2 % f
        num, den = 1, 1
        for a in kernel.residues:
            if a > (f - 1) // 2:
                continue
            num = num * tab[a * half % f] % r * (1 - tab[a]) % r
            den = den * (1 - tab[a * s % f]) % r
        val = num * pow(den, -1, r) % r
    assert val % r != 0, "delta product degenerated"
    return dlog_two_power(val, ctx)


def compute_record(f: int, n: int, r: int, kernel: KernelSet, *,
                   k: int | None = None, candidate_offset: int = 0,
                   force_python: bool = False) -> PrimeLogRecord:
    """All log data for one auxiliary prime, under one shared embedding."""
    ctx = build_field_context(r, n, f, k=k, candidate_offset=candidate_offset)
    eta = log_poly_eta(ctx, kernel, force_python=force_python)
    beta = log_poly_beta(ctx)
    delta = None
    if f % 8 == 1:
        delta = log_scalar_delta(ctx, kernel, f_prime=is_prime(f))
    return PrimeLogRecord(r=r, eta=eta, beta=beta, delta_scalar=delta)


# ---------------------------------------------------------------------------
# record cache (text, versioned; keyed by (f, n))

def cache_path(cache_dir: str | Path, f: int, n: int) -> Path:
    return Path(cache_dir) / f"logs_{f}_{n}.txt"


def _record_line(f: int, n: int, rec: PrimeLogRecord) -> str:
    eta = " ".join(str(c) for c in rec.eta.to_X().coeffs)
    beta = " ".join(str(c) for c in rec.beta.to_X().coeffs)
    delta = "-" if rec.delta_scalar is None else str(rec.delta_scalar)
    return f"{f} {n} {rec.r} | {eta} | {beta} | {delta}"


def store_records(cache_dir: str | Path, f: int, n: int,
                  records: dict[int, PrimeLogRecord]) -> Path:
    path = cache_path(cache_dir, f, n)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {CACHE_VERSION}"]
    lines += [_record_line(f, n, records[r]) for r in sorted(records)]
    path.write_text("\n".join(lines) + "\n")
    return path


def load_records(cache_dir: str | Path, f: int, n: int
                 ) -> tuple[dict[int, PrimeLogRecord], list[str]]:
    """Cached records plus a list of warnings for skipped corrupt entries."""
    path = cache_path(cache_dir, f, n)
    records: dict[int, PrimeLogRecord] = {}
    warnings: list[str] = []
    if not path.exists():
        return records, warnings
    lines = path.read_text().splitlines()
    if not lines or lines[0] != f"# {CACHE_VERSION}":
        warnings.append(f"{path}: version mismatch, cache ignored")
        return records, warnings
    k = n + 1
    for ln, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            head, eta_s, beta_s, delta_s = (part.strip() for part in line.split("|"))
            ff, nn, r = (int(x) for x in head.split())
            if (ff, nn) != (f, n):
                raise ValueError("key mismatch")
            eta = LogPoly(n, k, "X", tuple(int(x) % (1 << k) for x in eta_s.split()))
            beta = LogPoly(n, k, "X", tuple(int(x) % (1 << k) for x in beta_s.split()))
            delta = None if delta_s == "-" else int(delta_s)
            records[r] = PrimeLogRecord(r=r, eta=eta, beta=beta, delta_scalar=delta)
        except (ValueError, AssertionError) as exc:
            warnings.append(f"{path}:{ln}: corrupt cache line skipped ({exc})")
    return records, warnings


def get_records(f: int, n: int, primes: list[int], kernel: KernelSet, *,
                cache_dir: str | Path | None = None, candidate_offset: int = 0,
                force_python: bool = False) -> list[PrimeLogRecord]:
    """Records for the given primes in ascending order, cache-backed.

    Alternative embeddings (candidate_offset != 0) never touch the cache:
    their records are only comparable through the ideals they generate.
    """
    use_cache = cache_dir is not None and candidate_offset == 0
    cached: dict[int, PrimeLogRecord] = {}
    if use_cache:
        cached, warnings = load_records(cache_dir, f, n)
        for w in warnings:
            print(f"cache warning: {w}", file=sys.stderr)
    out: list[PrimeLogRecord] = []
    fresh = False
    for r in sorted(primes):
        rec = cached.get(r)
        if rec is None:
            rec = compute_record(f, n, r, kernel, candidate_offset=candidate_offset,
                                 force_python=force_python)
            cached[r] = rec
            fresh = True
        out.append(rec)
    if use_cache and fresh:
        store_records(cache_dir, f, n, cached)
    return out


def default_cache_dir() -> Path | None:
    env = os.environ.get("GREENBERG_CACHE")
    return Path(env) if env else None
