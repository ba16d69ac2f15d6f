from fractions import Fraction
from unittest import TestCase

import numpy as np
import pytest

from simplicial_contextuality.exceptions import UsageError
from simplicial_contextuality.semiring import (
    BOOLEAN,
    NONNEG_RATIONAL,
    REAL_FIELD,
    Scalar,
    Semiring,
    add,
    get_semiring,
    mul,
    support_map,
)


class TestSemiringFlags(TestCase):
    def test_flags(self):
        self.assertTrue(NONNEG_RATIONAL.zero_sum_free and NONNEG_RATIONAL.integral)
        self.assertTrue(BOOLEAN.zero_sum_free and BOOLEAN.integral)
        self.assertFalse(REAL_FIELD.zero_sum_free)
        self.assertTrue(REAL_FIELD.has_negation)
        self.assertFalse(NONNEG_RATIONAL.has_negation)

    def test_lookup(self):
        self.assertIs(get_semiring('rational'), NONNEG_RATIONAL)
        self.assertIs(get_semiring('Boolean'), BOOLEAN)
        self.assertIs(get_semiring(REAL_FIELD), REAL_FIELD)
        with self.assertRaises(UsageError):
            get_semiring('tropical')


class TestArithmetic(TestCase):
    def test_boolean_is_or_and(self):
        self.assertTrue(BOOLEAN.add(True, True))
        self.assertFalse(BOOLEAN.mul(True, False))
        self.assertTrue(BOOLEAN.sum([False, True, False]))

    def test_rational_exact(self):
        self.assertEqual(NONNEG_RATIONAL.add(Fraction(1, 3), Fraction(1, 6)), Fraction(1, 2))
        self.assertEqual(NONNEG_RATIONAL.div(Fraction(1, 3), Fraction(2, 3)), Fraction(1, 2))

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            NONNEG_RATIONAL.div(Fraction(1), Fraction(0))

    def test_negation(self):
        self.assertEqual(REAL_FIELD.sub(Fraction(1), Fraction(3)), Fraction(-2))
        with self.assertRaises(UsageError):
            NONNEG_RATIONAL.neg(Fraction(1))


class TestCoerce(TestCase):
    def test_parse_literals(self):
        self.assertEqual(NONNEG_RATIONAL.coerce('2/4'), Fraction(1, 2))
        self.assertEqual(REAL_FIELD.coerce('-4'), Fraction(-4))
        self.assertIs(BOOLEAN.coerce('1'), True)
        self.assertIs(BOOLEAN.coerce(0), False)

    def test_rejects(self):
        for semiring, value in [
            (NONNEG_RATIONAL, '-1/2'),
            (NONNEG_RATIONAL, 0.5),
            (NONNEG_RATIONAL, 'half'),
            (BOOLEAN, 2),
            (BOOLEAN, 'maybe'),
        ]:
            with self.assertRaises(UsageError):
                semiring.coerce(value)

    def test_format(self):
        self.assertEqual(NONNEG_RATIONAL.format(Fraction(2, 7)), '2/7')
        self.assertEqual(BOOLEAN.format(True), '1')


def random_scalar(rng: np.random.Generator, semiring: Semiring):
    if semiring.is_boolean:
        return bool(rng.integers(2))
    low = -9 if semiring.has_negation else 0
    return Fraction(int(rng.integers(low, 10)), int(rng.integers(1, 10)))


class TestSemiringLaws(TestCase):
    def test_commutative_semiring_axioms(self):
        rng = np.random.default_rng(2718)
        for semiring in (NONNEG_RATIONAL, BOOLEAN, REAL_FIELD):
            for _ in range(500):
                a, b, c = (random_scalar(rng, semiring) for _ in range(3))
                plus, times = semiring.add, semiring.mul
                self.assertEqual(plus(plus(a, b), c), plus(a, plus(b, c)), semiring.name)
                self.assertEqual(times(times(a, b), c), times(a, times(b, c)), semiring.name)
                self.assertEqual(plus(a, b), plus(b, a), semiring.name)
                self.assertEqual(times(a, b), times(b, a), semiring.name)
                self.assertEqual(times(a, plus(b, c)), plus(times(a, b), times(a, c)), semiring.name)
                self.assertEqual(times(plus(a, b), c), plus(times(a, c), times(b, c)), semiring.name)
                self.assertEqual(plus(a, semiring.zero), a)
                self.assertEqual(times(a, semiring.one), a)
                self.assertTrue(semiring.is_zero(times(a, semiring.zero)))

    def test_zero_sum_free_and_no_zero_divisors(self):
        rng = np.random.default_rng(1618)
        for semiring in (NONNEG_RATIONAL, BOOLEAN):
            self.assertTrue(semiring.zero_sum_free and semiring.integral)
            zero_sums = zero_products = 0
            for _ in range(1000):
                a, b = random_scalar(rng, semiring), random_scalar(rng, semiring)
                if semiring.is_zero(semiring.add(a, b)):
                    zero_sums += 1
                    self.assertTrue(semiring.is_zero(a) and semiring.is_zero(b))
                if semiring.is_zero(semiring.mul(a, b)):
                    zero_products += 1
                    self.assertTrue(semiring.is_zero(a) or semiring.is_zero(b))
            self.assertGreater(zero_sums, 0)
            self.assertGreater(zero_products, 0)

    def test_real_field_has_zero_sums(self):
        a = Fraction(2, 3)
        self.assertTrue(REAL_FIELD.is_zero(REAL_FIELD.add(a, REAL_FIELD.neg(a))))
        self.assertFalse(REAL_FIELD.zero_sum_free)


def test_scalars_refuse_mixed_semirings():
    half = Scalar('1/2', NONNEG_RATIONAL)
    assert add(half, half) == Scalar(1, NONNEG_RATIONAL)
    assert str(mul(half, half)) == '1/4'
    with pytest.raises(UsageError):
        add(half, Scalar(True, BOOLEAN))


def test_support_map_is_a_homomorphism():
    values = [Fraction(0), Fraction(1, 3), Fraction(2)]
    for a in values:
        for b in values:
            assert support_map(a + b) == BOOLEAN.add(support_map(a), support_map(b))
            assert support_map(a * b) == BOOLEAN.mul(support_map(a), support_map(b))
