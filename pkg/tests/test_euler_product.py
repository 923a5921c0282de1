import math
from fractions import Fraction

import pytest

from euler_gap.euler_product import (
    BASE,
    PartialProduct,
    bracketing_check,
    certify_bracketing,
    denominator_structure,
    extend,
    partial_product,
    trajectory_rows,
)
from euler_gap.numerics import RationalInterval, Status


class TestExtend:
    def test_chain_of_examples(self):
        s2 = extend(BASE)
        assert (s2.n, s2.value, s2.primorial) == (2, Fraction(2, 3), 6)
        s3 = extend(s2)
        assert (s3.value, s3.primorial) == (Fraction(16, 25), 30)
        s4 = extend(s3)
        assert (s4.value, s4.primorial) == (Fraction(768, 1225), 210)

    def test_base_case(self):
        assert BASE == PartialProduct(1, Fraction(3, 4), 2)


@pytest.mark.parametrize("n,value", [(1, Fraction(3, 4)), (2, Fraction(2, 3)), (4, Fraction(768, 1225))])
def test_partial_product_examples(n, value):
    assert partial_product(n).value == value


def test_partial_product_rejects_zero():
    with pytest.raises(ValueError):
        partial_product(0)


def test_strictly_decreasing_and_in_unit_interval():
    prev = Fraction(1)
    for n in range(1, 501):
        v = partial_product(n).value
        assert 0 < v < prev
        prev = v


def test_matches_unreduced_product(oracle_primes):
    num = den = 1
    for n in range(1, 101):
        p = oracle_primes[n - 1]
        num *= p * p - 1
        den *= p * p
        g = math.gcd(num, den)
        pp = partial_product(n)
        assert (pp.a, pp.b) == (num // g, den // g)
        assert den == pp.primorial**2


@pytest.mark.parametrize("n,expected", [(1, (4, 4, 1)), (2, (3, 36, 12)), (3, (25, 900, 36))])
def test_denominator_structure_examples(n, expected):
    assert tuple(denominator_structure(n)) == expected


def test_denominator_divides_primorial_squared():
    for n in range(1, 501):
        b, sq, cof = denominator_structure(n)
        assert b * cof == sq and b <= sq


class TestBracketing:
    def test_fine_enclosure_n1(self):
        assert bracketing_check(1, RationalInterval(Fraction(4, 7), Fraction(12, 19))) is Status.CERTIFIED

    def test_coarse_enclosure_n1(self):
        assert bracketing_check(1, RationalInterval(Fraction(1, 2), Fraction(2, 3))) is Status.CERTIFIED

    def test_coarse_enclosure_n3_is_inconclusive_not_false(self):
        assert bracketing_check(3, RationalInterval(Fraction(1, 2), Fraction(2, 3))) is Status.INCONCLUSIVE

    def test_adaptive_never_false(self):
        for n in range(1, 501):
            status, enc = certify_bracketing(n)
            assert status is Status.CERTIFIED, n
            assert enc.six_over_pi2.hi < partial_product(n).value < 1


def test_trajectory_rows_are_decimal_strings():
    rows = trajectory_rows(4)
    assert rows[3] == {"n": "4", "a_n": "768", "b_n": "1225", "primorial": "210", "cofactor": "36"}
    assert all(isinstance(v, str) for r in rows for v in r.values())
