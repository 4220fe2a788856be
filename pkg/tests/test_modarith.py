"""Unit and property tests for the modular arithmetic layer."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primelink.modarith import (
    PrimeRecord,
    eligible_primes,
    is_prime,
    iter_eligible_q,
    linking_number,
    make_prime_record,
    pth_power_residue,
    smallest_primitive_root,
)


def _trial_division_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class TestIsPrime:
    def test_known_values(self):
        assert is_prime(2)
        assert is_prime(229)
        assert not is_prime(10000)
        assert is_prime(1021)
        assert not is_prime(7 * 31)

    def test_matches_trial_division_below_5000(self):
        for n in range(2, 5000):
            assert is_prime(n) == _trial_division_prime(n), n

    def test_large_64bit(self):
        assert is_prime(2**61 - 1)
        assert not is_prime(2**62 - 1)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            is_prime(1)
        with pytest.raises(ValueError):
            is_prime(0)
        with pytest.raises(ValueError):
            is_prime(2**64)


class TestEligiblePrimes:
    def test_p3_bound31(self):
        assert [r.q for r in eligible_primes(3, 31)] == [7, 13, 31]

    def test_p3_tiny_bound_empty(self):
        assert eligible_primes(3, 6) == []

    def test_p5_bound31(self):
        assert [r.q for r in eligible_primes(5, 31)] == [11, 31]

    def test_excludes_one_mod_p_squared(self):
        # 19 = 1 + 2*9 is 1 mod 9, so it must not appear for p = 3
        assert 19 not in [r.q for r in eligible_primes(3, 100)]

    def test_matches_naive_filter(self):
        p, bound = 3, 1000
        naive = [
            q for q in range(2, bound + 1)
            if _trial_division_prime(q) and q % p == 1 and (q - 1) % (p * p) != 0
        ]
        assert [r.q for r in eligible_primes(p, bound)] == naive

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            eligible_primes(4, 100)
        with pytest.raises(ValueError):
            eligible_primes(9, 100)
        with pytest.raises(ValueError):
            eligible_primes(2, 100)

    def test_record_invariants(self):
        for rec in eligible_primes(3, 500):
            assert rec.q % rec.p == 1
            assert (rec.q - 1) % (rec.p * rec.p) != 0
            assert rec.c == ((rec.q - 1) // rec.p) % rec.p
            assert rec.c != 0
            # zeta has exact order p
            assert pow(rec.zeta, rec.p, rec.q) == 1
            assert rec.zeta != 1


class TestSmallestPrimitiveRoot:
    def test_known_values(self):
        assert smallest_primitive_root(7) == 3
        assert smallest_primitive_root(31) == 3
        assert smallest_primitive_root(11) == 2

    def test_full_order_by_enumeration(self):
        for q in (5, 7, 11, 13, 31, 43, 61):
            g = smallest_primitive_root(q)
            seen = set()
            x = 1
            for _ in range(q - 1):
                x = x * g % q
                seen.add(x)
            assert len(seen) == q - 1
            # nothing smaller generates
            for h in range(2, g):
                seen_h = set()
                x = 1
                for _ in range(q - 1):
                    x = x * h % q
                    seen_h.add(x)
                assert len(seen_h) < q - 1

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            smallest_primitive_root(10)


class TestLinkingNumber:
    def test_examples_mod_7(self):
        rec = make_prime_record(7, 3)
        assert linking_number(31, rec, 3) == 2
        assert linking_number(229, rec, 3) == 1

    def test_full_power_table_oracle(self):
        # l(a, q) is -dlog_g(a) reduced mod p, for every unit a
        for rec in eligible_primes(3, 100):
            q, p, g = rec.q, rec.p, rec.g
            dlog = {}
            x = 1
            for e in range(q - 1):
                dlog[x] = e
                x = x * g % q
            for a in range(1, q):
                assert linking_number(a, rec, p) == (-dlog[a]) % p

    def test_zero_iff_residue(self):
        rec = make_prime_record(31, 3)
        for a in range(1, 31):
            assert (linking_number(a, rec, 3) == 0) == pth_power_residue(a, rec, 3)

    def test_divisible_rejected(self):
        rec = make_prime_record(7, 3)
        with pytest.raises(ValueError):
            linking_number(49, rec, 3)
        with pytest.raises(ValueError):
            pth_power_residue(14, rec, 3)

    def test_modulus_mismatch_rejected(self):
        rec = make_prime_record(11, 5)
        with pytest.raises(ValueError):
            linking_number(3, rec, 3)

    @given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=60)
    def test_bilinear_in_first_argument(self, a, b):
        rec = make_prime_record(31, 3)
        if a % 31 == 0 or b % 31 == 0:
            return
        la = linking_number(a, rec, 3)
        lb = linking_number(b, rec, 3)
        assert linking_number(a * b, rec, 3) == (la + lb) % 3

    def test_alternate_root_rescales_uniformly(self):
        rec = make_prime_record(31, 3)
        # g^u for u coprime to 30 is again a primitive root
        for u in (7, 11, 13):
            alt = make_prime_record(31, 3, root=pow(rec.g, u, 31))
            scalars = set()
            for a in range(2, 31):
                base = linking_number(a, rec, 3)
                other = linking_number(a, alt, 3)
                assert (base == 0) == (other == 0)
                if base != 0:
                    scalars.add(other * pow(base, -1, 3) % 3)
            assert len(scalars) == 1
            assert 0 not in scalars


class TestPthPowerResidue:
    def test_one_is_always_residue(self):
        for rec in eligible_primes(3, 100):
            assert pth_power_residue(1, rec, 3)

    def test_31_not_cube_mod_7(self):
        rec = make_prime_record(7, 3)
        assert not pth_power_residue(31, rec, 3)

    def test_generator_never_residue(self):
        for rec in eligible_primes(5, 200):
            assert not pth_power_residue(rec.g, rec, 5)


class TestMakePrimeRecord:
    def test_rejects_ineligible(self):
        with pytest.raises(ValueError, match="19"):
            make_prime_record(19, 3)
        with pytest.raises(ValueError, match="8"):
            make_prime_record(8, 3)
        with pytest.raises(ValueError, match="11"):
            make_prime_record(11, 3)

    def test_rejects_non_root_override(self):
        # 2 is a cube mod 229, hence not a primitive root
        with pytest.raises(ValueError):
            make_prime_record(229, 3, root=2)

    def test_accepts_valid_override(self):
        rec = make_prime_record(7, 3, root=5)
        assert rec.g == 5
        assert pow(rec.zeta, 3, 7) == 1 and rec.zeta != 1

    def test_record_is_frozen(self):
        rec = make_prime_record(7, 3)
        with pytest.raises(AttributeError):
            rec.q = 11
