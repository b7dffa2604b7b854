import numpy as np
import pytest

from greenberg.cyclo_logs import (CACHE_VERSION, LogPoly, cache_path, compute_record,
                                  find_split_primes, load_records, log_poly_beta,
                                  log_poly_eta, log_scalar_delta, store_records,
                                  _mulmod)
from greenberg.finite_field import build_field_context, dlog_two_power, is_prime, subcontext
from greenberg.group_ring import (HowellIdeal, from_coeffs, full_spec, mutual_membership,
                                  poly_mul_mod)
from greenberg.quadratic import character_kernel
from oracles import eta_square_log


class TestFindSplitPrimes:
    def test_paper_level_one(self):
        assert find_split_primes(949, 1, 6) == [22777, 45553, 60737, 68329, 136657, 151841]

    def test_paper_level_two(self):
        assert find_split_primes(949, 2, 4) == [45553, 60737, 136657, 151841]

    def test_smallest_case(self):
        assert find_split_primes(3, 0, 1) == [13]

    def test_congruence(self):
        for r in find_split_primes(21, 2, 5):
            assert r % (16 * 21) == 1 and is_prime(r)

    def test_cap(self):
        with pytest.raises(RuntimeError):
            find_split_primes(949, 1, 3, cap=2)


# the published level-1 table for f = 949: r -> (eta(T), beta(T)/T)
PAPER_949_N1 = {
    22777: ((0, 1), (0, 3)),
    45553: ((2, 3), (0, 3)),
    60737: ((0, 3), (0, 3)),
    68329: ((2, 2), (0, 2)),
    136657: ((0, 3), (0, 1)),
    151841: ((0, 0), (0, 2)),
}

# the published level-2 table: r -> (eta(T), T-coefficients low-to-high)
PAPER_949_N2 = {
    45553: ((2, 5, 0, 2), (0, 3, 2, 2)),
    60737: ((4, 1, 6, 7), (0, 5, 5, 5)),
    136657: ((0, 5, 0, 4), (0, 3, 5, 7)),
    151841: ((0, 2, 7, 1), (0, 6, 6, 6)),
    182209: ((4, 2, 4, 6), (0, 0, 7, 4)),
    273313: ((6, 3, 2, 6), (0, 1, 7, 5)),
}


class TestAgainstPaperTables:
    """f_r is canonical only up to one unit of the group ring per prime, so
    the checks are unit-insensitive: cross products must agree and each
    polynomial must generate the same principal ideal as the published one."""

    @pytest.mark.parametrize("n,table", [(1, PAPER_949_N1), (2, PAPER_949_N2)])
    def test_level_table(self, n, table):
        ker = character_kernel(949)
        spec = full_spec(n)
        for r, (eta_pub, beta_pub) in table.items():
            rec = compute_record(949, n, r, ker)
            eta = from_coeffs(rec.eta.to_T().coeffs, spec)
            beta = from_coeffs(rec.beta.to_T().coeffs, spec)
            pe = from_coeffs(eta_pub, spec)
            pb = from_coeffs(beta_pub, spec)
            assert np.array_equal(poly_mul_mod(eta, pb, spec),
                                  poly_mul_mod(pe, beta, spec)), r
            assert mutual_membership(HowellIdeal.empty(spec).insert(eta),
                                     HowellIdeal.empty(spec).insert(pe)), r
            assert mutual_membership(HowellIdeal.empty(spec).insert(beta),
                                     HowellIdeal.empty(spec).insert(pb)), r

    def test_zero_row_is_exact(self):
        # zero is invariant under units, so the table's 0 entry is exact
        ker = character_kernel(949)
        rec = compute_record(949, 1, 151841, ker)
        assert rec.eta.coeffs == (0, 0)


class TestBeta:
    def test_level_zero_is_zero_sequence(self):
        # beta_0 = -1 and log(-1) = 0 whenever r = 1 mod 2^(k+1)
        for r in find_split_primes(949, 0, 3):
            ctx = build_field_context(r, 0, 949)
            assert log_poly_beta(ctx).coeffs == (0,)

    def test_augmentation_vanishes(self, rng, small_radicands):
        for _ in range(25):
            f = rng.choice(small_radicands)
            n = rng.randrange(0, 3)
            r = rng.choice(find_split_primes(f, n, 3))
            ctx = build_field_context(r, n, f)
            assert log_poly_beta(ctx).aug() == 0


class TestEta:
    def test_rationality_fuzz(self, rng, runnable_radicands):
        # the in-function assertions must never fire on the algorithm's domain
        for _ in range(60):
            f = rng.choice(runnable_radicands)
            n = rng.randrange(0, 3)
            r = rng.choice(find_split_primes(f, n, 3))
            ctx = build_field_context(r, n, f)
            log_poly_eta(ctx, character_kernel(f))

    def test_numpy_and_python_paths_agree(self, rng, runnable_radicands):
        for _ in range(8):
            f = rng.choice(runnable_radicands)
            n = rng.randrange(0, 3)
            r = rng.choice(find_split_primes(f, n, 2))
            ker = character_kernel(f)
            ctx = build_field_context(r, n, f)
            fast = log_poly_eta(ctx, ker)
            slow = log_poly_eta(ctx, ker, force_python=True)
            assert fast == slow

    def test_norm_compatibility_collapse(self, rng, runnable_radicands):
        # level-m coefficients are partial sums of level-n coefficients when
        # the contexts share one embedding and one log precision
        checked = 0
        while checked < 12:
            f = rng.choice(runnable_radicands)
            n = rng.randrange(1, 4)
            m = rng.randrange(0, n)
            r = rng.choice(find_split_primes(f, n, 2))
            k = m + 1
            ctx_n = build_field_context(r, n, f, k=k)
            ctx_m = subcontext(ctx_n, m, k=k)
            ker = character_kernel(f)
            top = log_poly_eta(ctx_n, ker).coeffs
            low = log_poly_eta(ctx_m, ker).coeffs
            mod = 1 << k
            for i in range(1 << m):
                total = sum(top[i + (j << m)] for j in range(1 << (n - m))) % mod
                assert low[i] % mod == total, (f, n, m, r, i)
            checked += 1

    def test_square_identity(self, rng, runnable_radicands):
        # doubling the eta coefficients equals the log of the cyclotomic-norm
        # square, computed conjugate by conjugate (f = 1 mod 4 case)
        pool = [f for f in runnable_radicands if f % 4 == 1]
        for _ in range(6):
            f = rng.choice(pool)
            n = rng.randrange(0, 3)
            r = rng.choice(find_split_primes(f, n, 2))
            ctx = build_field_context(r, n, f)
            ker = character_kernel(f)
            eta = log_poly_eta(ctx, ker)
            mod = 1 << ctx.k
            for i in range(1 << n):
                assert 2 * eta.coeffs[i] % mod == eta_square_log(ctx, ker, i), (f, n, r, i)

    def test_square_identity_3_mod_4(self, rng, runnable_radicands):
        # same identity through the sqrt(-1)*sqrt(-f) norm-group description;
        # this is the only absolute cross-check of the 3 mod 4 eta family
        from oracles import eta_square_log_3mod4
        pool = [f for f in runnable_radicands if f % 4 == 3]
        for _ in range(6):
            f = rng.choice(pool)
            n = rng.randrange(0, 3)
            r = rng.choice(find_split_primes(f, n, 2))
            ctx = build_field_context(r, n, f)
            ker = character_kernel(f)
            eta = log_poly_eta(ctx, ker)
            mod = 1 << ctx.k
            for i in range(1 << n):
                assert 2 * eta.coeffs[i] % mod == eta_square_log_3mod4(ctx, ker, i), \
                    (f, n, r, i)


class TestDelta:
    def test_requires_split_f(self):
        ctx = build_field_context(22777, 1, 949)
        with pytest.raises(ValueError):
            log_scalar_delta(ctx, character_kernel(949), False)

    def test_prime_f_square_identity(self):
        # delta^2 = D^(1-sigma) with D the full-kernel product of (1 - zeta_f^a):
        # an independent evaluation of the defining square
        f = 17
        ker = character_kernel(f)
        for r in find_split_primes(f, 1, 3):
            ctx = build_field_context(r, 1, f)
            c = log_scalar_delta(ctx, ker, f_prime=True)
            tab = [pow(ctx.zeta_f, j, ctx.r) for j in range(f)]
            s = next(a for a in range(2, f) if a not in ker)
            D = 1
            Ds = 1
            for a in ker.residues:
                D = D * (1 - tab[a]) % ctx.r
                Ds = Ds * (1 - tab[a * s % f]) % ctx.r
            want = (dlog_two_power(D, ctx) - dlog_two_power(Ds, ctx)) % (1 << ctx.k)
            assert 2 * c % (1 << ctx.k) == want, r

    def test_composite_f_runs(self):
        f = 6817
        ker = character_kernel(f)
        r = find_split_primes(f, 1, 1)[0]
        ctx = build_field_context(r, 1, f)
        c = log_scalar_delta(ctx, ker, f_prime=False)
        assert 0 <= c < 1 << ctx.k

    def test_record_carries_delta_only_when_split(self):
        ker = character_kernel(6817)
        rec = compute_record(6817, 1, find_split_primes(6817, 1, 1)[0], ker)
        assert rec.delta_scalar is not None
        ker949 = character_kernel(949)
        rec949 = compute_record(949, 1, 22777, ker949)
        assert rec949.delta_scalar is None


class TestMulmodFloatPath:
    def test_matches_exact_bigint(self, rng):
        for r in ((1 << 31) + 11, (1 << 40) + 5, (1 << 49) + 9):
            a = np.array([rng.randrange(r) for _ in range(200)], dtype=np.int64)
            b = np.array([rng.randrange(r) for _ in range(200)], dtype=np.int64)
            got = _mulmod(a, b, r)
            want = [int(x) * int(y) % r for x, y in zip(a, b)]
            assert [int(v) for v in got] == want

    def test_boundary_values(self):
        r = (1 << 49) + 9
        vals = np.array([0, 1, r - 1, r - 2, r // 2, r // 2 + 1], dtype=np.int64)
        got = _mulmod(vals, vals, r)
        want = [int(v) * int(v) % r for v in vals]
        assert [int(v) for v in got] == want


class TestCache:
    def _records(self, f, n, count):
        ker = character_kernel(f)
        return {r: compute_record(f, n, r, ker) for r in find_split_primes(f, n, count)}

    def test_round_trip_bit_identical(self, tmp_path):
        recs = self._records(21, 1, 3)
        store_records(tmp_path, 21, 1, recs)
        loaded, warnings = load_records(tmp_path, 21, 1)
        assert warnings == []
        assert loaded == recs
        text1 = cache_path(tmp_path, 21, 1).read_text()
        store_records(tmp_path, 21, 1, loaded)
        assert cache_path(tmp_path, 21, 1).read_text() == text1

    def test_corrupt_line_skipped(self, tmp_path):
        recs = self._records(21, 1, 2)
        p = store_records(tmp_path, 21, 1, recs)
        lines = p.read_text().splitlines()
        lines.insert(2, "21 1 garbage | 1 2 | 3 4 | -")
        p.write_text("\n".join(lines) + "\n")
        loaded, warnings = load_records(tmp_path, 21, 1)
        assert len(loaded) == 2
        assert len(warnings) == 1 and "corrupt" in warnings[0]

    def test_version_bump_invalidates(self, tmp_path):
        recs = self._records(21, 1, 1)
        p = store_records(tmp_path, 21, 1, recs)
        body = p.read_text().replace(CACHE_VERSION, "greenberg-logcache v0")
        p.write_text(body)
        loaded, warnings = load_records(tmp_path, 21, 1)
        assert loaded == {} and "version mismatch" in warnings[0]

    def test_get_records_uses_cache(self, tmp_path):
        from greenberg.cyclo_logs import get_records
        ker = character_kernel(21)
        primes = find_split_primes(21, 1, 3)
        first = get_records(21, 1, primes, ker, cache_dir=tmp_path)
        assert cache_path(tmp_path, 21, 1).exists()
        again = get_records(21, 1, primes, ker, cache_dir=tmp_path)
        assert first == again


class TestLogPoly:
    def test_basis_round_trip(self):
        p = LogPoly(2, 3, "X", (1, 2, 3, 4))
        assert p.to_T().to_X() == p
        assert p.to_T().basis == "T"

    def test_aug_is_basis_independent(self):
        p = LogPoly(1, 2, "X", (3, 1))
        assert p.aug() == p.to_T().aug() == 0
