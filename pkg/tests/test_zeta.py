import random
from fractions import Fraction

import mpmath
import pytest

from euler_gap.euler_product import partial_product
from euler_gap.numerics import RationalInterval
from euler_gap.zeta import adaptive_enclosure, iter_enclosures, partial_sum, zeta2_enclosure

from conftest import mp_frac


def test_n1():
    enc = zeta2_enclosure(1)
    assert enc.zeta2 == RationalInterval(Fraction(3, 2), 2)
    assert enc.six_over_pi2 == RationalInterval(Fraction(1, 2), Fraction(2, 3))


def test_n2():
    enc = zeta2_enclosure(2)
    assert enc.zeta2 == RationalInterval(Fraction(19, 12), Fraction(7, 4))
    assert enc.six_over_pi2 == RationalInterval(Fraction(4, 7), Fraction(12, 19))


def test_rejects_zero_terms():
    with pytest.raises(ValueError):
        zeta2_enclosure(0)


def test_partial_sum_matches_running_sum():
    s = Fraction(0)
    for N in range(1, 200):
        s += Fraction(1, N * N)
        assert partial_sum(N) == s


def test_oracle_strictly_inside():
    rng = random.Random(11)
    with mpmath.workdps(40):
        z = mpmath.zeta(2)
        c = 6 / mpmath.pi**2
        for N in [1, 2, 3, 10, 64, 1000] + [rng.randrange(1, 3000) for _ in range(10)]:
            enc = zeta2_enclosure(N)
            assert mp_frac(enc.zeta2.lo) < z < mp_frac(enc.zeta2.hi)
            assert mp_frac(enc.six_over_pi2.lo) < c < mp_frac(enc.six_over_pi2.hi)


def test_exact_width_law():
    for enc in iter_enclosures(10**4):
        N = enc.terms
        assert enc.zeta2.width == Fraction(1, N * (N + 1))


def test_nesting_under_doubling():
    for k in list(range(1, 65)) + [100, 128, 200, 256]:
        assert zeta2_enclosure(2 * k).zeta2 in zeta2_enclosure(k).zeta2
        assert zeta2_enclosure(2 * k).six_over_pi2 in zeta2_enclosure(k).six_over_pi2


class TestAdaptive:
    def test_quarter(self):
        assert adaptive_enclosure(Fraction(1, 4)).terms == 1

    def test_hundredth(self):
        enc = adaptive_enclosure(Fraction(1, 100))
        assert enc.terms <= 64 and enc.six_over_pi2.width < Fraction(1, 100)
        assert zeta2_enclosure(enc.terms // 2).six_over_pi2.width >= Fraction(1, 100)

    def test_one(self):
        assert adaptive_enclosure(Fraction(1)).terms == 1

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            adaptive_enclosure(Fraction(0))


def test_lower_bound_consistent_with_partial_products():
    for n in range(1, 201):
        for N in (1, 16, 256):
            assert zeta2_enclosure(N).six_over_pi2.lo < partial_product(n).value
