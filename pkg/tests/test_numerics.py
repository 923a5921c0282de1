import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from euler_gap.numerics import (
    RationalInterval,
    ZeroDenominatorError,
    interval_invert,
    log_enclosure,
    log_int_fixed,
    parse_rational,
    rat_cmp,
    rat_make,
    rat_mul,
    rat_pow,
    rat_str,
    rat_sub,
)

from conftest import mp_frac

small_ints = st.integers(min_value=-50, max_value=50)
small_dens = st.integers(min_value=1, max_value=50)
fractions_50 = st.builds(Fraction, small_ints, small_dens)


def _naive(op, a, b, c, d):
    # unreduced cross-multiplication, reduced once at the end
    if op == "mul":
        num, den = a * c, b * d
    else:
        num, den = a * d - c * b, b * d
    g = math.gcd(num, den)
    num, den = num // g, den // g
    if den < 0:
        num, den = -num, -den
    return num, den


class TestRatMake:
    def test_reduces(self):
        x = rat_make(72, 100)
        assert (x.numerator, x.denominator) == (18, 25)

    def test_sign_on_numerator(self):
        x = rat_make(3, -4)
        assert (x.numerator, x.denominator) == (-3, 4)

    def test_zero(self):
        x = rat_make(0, 7)
        assert (x.numerator, x.denominator) == (0, 1)

    def test_zero_denominator_is_distinct_error(self):
        with pytest.raises(ZeroDenominatorError):
            rat_make(1, 0)

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            rat_make(0.5, 1)

    @given(small_ints, small_dens, st.integers(min_value=-30, max_value=30).filter(bool))
    def test_canonical_under_scaling(self, a, b, k):
        assert rat_make(a * k, b * k) == rat_make(a, b)
        x = rat_make(a * k, b * k)
        assert x.denominator > 0 and math.gcd(x.numerator, x.denominator) == 1


class TestOps:
    def test_examples(self):
        assert rat_mul(Fraction(3, 4), Fraction(8, 9)) == Fraction(2, 3)
        assert rat_sub(Fraction(3, 4), Fraction(12, 19)) == Fraction(9, 76)
        assert rat_cmp(Fraction(2, 3), Fraction(3, 4)) == -1
        assert rat_cmp(Fraction(3, 4), Fraction(6, 8)) == 0

    def test_exhaustive_small_against_unreduced_oracle(self):
        vals = [(a, b) for a in range(-12, 13) for b in range(1, 13)]
        for a, b in vals:
            x = rat_make(a, b)
            for c, d in vals:
                y = rat_make(c, d)
                m = rat_mul(x, y)
                assert (m.numerator, m.denominator) == _naive("mul", a, b, c, d)
                s = rat_sub(x, y)
                assert (s.numerator, s.denominator) == _naive("sub", a, b, c, d)

    @given(small_ints, small_dens, small_ints, small_dens)
    def test_sampled_50_against_unreduced_oracle(self, a, b, c, d):
        x, y = rat_make(a, b), rat_make(c, d)
        m, s = rat_mul(x, y), rat_sub(x, y)
        assert (m.numerator, m.denominator) == _naive("mul", a, b, c, d)
        assert (s.numerator, s.denominator) == _naive("sub", a, b, c, d)
        assert rat_cmp(x, y) == (a * d > c * b) - (a * d < c * b)


class TestPow:
    def test_examples(self):
        assert rat_pow(Fraction(3, 4), 2) == Fraction(9, 16)
        assert rat_pow(Fraction(2), 10) == 1024
        assert rat_pow(Fraction(9, 76), 1) == Fraction(9, 76)

    def test_zero_to_zero_rejected(self):
        with pytest.raises(ValueError):
            rat_pow(Fraction(0), 0)

    @given(fractions_50.filter(bool), st.integers(min_value=0, max_value=16))
    def test_matches_repeated_multiplication(self, x, e):
        acc = Fraction(1)
        for _ in range(e):
            acc = rat_mul(acc, x)
        assert rat_pow(x, e) == acc


class TestSerialization:
    def test_num_den_form(self):
        assert rat_str(Fraction(3, 1)) == "3/1"
        assert rat_str(Fraction(-9, 76)) == "-9/76"

    @pytest.mark.parametrize("text", ["11/2", "3", " 7 / 14 ", "-1/3"])
    def test_round_trip(self, text):
        assert parse_rational(rat_str(parse_rational(text))) == parse_rational(text)

    @pytest.mark.parametrize("text", ["0.5", "1e3", "a/b", "1/", "", "1/-2"])
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)


class TestInterval:
    def test_invert_examples(self):
        assert interval_invert(RationalInterval(Fraction(3, 2), 2)) == RationalInterval(Fraction(1, 2), Fraction(2, 3))
        assert interval_invert(RationalInterval(Fraction(19, 12), Fraction(7, 4))) == RationalInterval(
            Fraction(4, 7), Fraction(12, 19)
        )
        assert interval_invert(RationalInterval(1, 1)) == RationalInterval(1, 1)

    @pytest.mark.parametrize("lo,hi", [(0, 1), (-1, 2), (-3, -1)])
    def test_invert_rejects_nonpositive(self, lo, hi):
        with pytest.raises(ValueError):
            interval_invert(RationalInterval(lo, hi))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            RationalInterval(2, 1)

    @given(
        st.fractions(min_value=Fraction(1, 1000), max_value=100),
        st.fractions(min_value=0, max_value=100),
        st.fractions(min_value=0, max_value=1),
    )
    def test_invert_contains_sampled_reciprocals(self, lo, span, t):
        iv = RationalInterval(lo, lo + span)
        x = iv.lo + t * iv.width
        inv = interval_invert(iv)
        assert inv.lo <= 1 / x <= inv.hi

    @given(fractions_50, fractions_50, fractions_50, fractions_50, st.fractions(0, 1), st.fractions(0, 1))
    def test_arithmetic_is_outward(self, a, b, c, d, s, t):
        x = RationalInterval(min(a, b), max(a, b))
        y = RationalInterval(min(c, d), max(c, d))
        px = x.lo + s * x.width
        py = y.lo + t * y.width
        assert px + py in x + y
        assert px - py in x - y
        assert px * py in x * y

    def test_round_outward_contains(self):
        iv = RationalInterval(Fraction(1, 3), Fraction(2, 3))
        r = iv.round_outward(10)
        assert iv in r and r.width <= iv.width + Fraction(2, 1024)


class TestLogEnclosure:
    def test_contains_oracle_for_integers_up_to_a_million(self):
        rng = random.Random(7)
        samples = list(range(1, 2049)) + [rng.randrange(1, 10**6 + 1) for _ in range(2000)] + [10**6]
        with mpmath.workdps(40):
            for y in samples:
                iv = log_enclosure(y, 100)
                true = mpmath.log(y)
                assert mp_frac(iv.lo) <= true <= mp_frac(iv.hi), y
                assert iv.width <= Fraction(8, 2**100)

    def test_exact_at_one(self):
        assert log_enclosure(1) == RationalInterval(0, 0)

    def test_huge_integers_and_rationals(self):
        rng = random.Random(3)
        with mpmath.workdps(80):
            for _ in range(50):
                y = rng.randrange(1, 10**400)
                x = Fraction(rng.randrange(1, 10**50), rng.randrange(1, 10**60))
                for v in (y, x):
                    iv = log_enclosure(v, 160)
                    true = mpmath.log(mp_frac(Fraction(v)))
                    assert mp_frac(iv.lo) <= true <= mp_frac(iv.hi)

    def test_fixed_point_bounds_order(self):
        for y in (2, 3, 5, 97, 2**61 - 1, 3**200):
            lo, hi = log_int_fixed(y, 64)
            assert lo < hi <= lo + 16

    def test_interval_argument_is_monotone_hull(self):
        iv = log_enclosure(RationalInterval(Fraction(1, 10), Fraction(1, 7)), 64)
        assert iv.lo <= log_enclosure(Fraction(1, 10), 64).lo
        assert iv.hi >= log_enclosure(Fraction(1, 7), 64).hi

    @pytest.mark.parametrize("bad", [0, -1, Fraction(-1, 2)])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(ValueError):
            log_enclosure(bad)
