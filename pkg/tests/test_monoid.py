from fractions import Fraction
from pathlib import Path
from unittest import TestCase

import numpy as np
import pytest

from simplicial_contextuality import model_files as mf
from simplicial_contextuality.distribution import (
    box,
    combine,
    deterministic_embed,
    from_boxes,
    is_strongly_contextual,
    restrict,
    support,
    theta,
)
from simplicial_contextuality.exceptions import NotInvertibleError, UnsupportedError, UsageError
from simplicial_contextuality.monoid import (
    MonoidContext,
    identity,
    inverse,
    invertible_fraction,
    invertible_support,
    is_strongly_noninvertible,
    is_weakly_invertible,
    isupp_member,
    mult,
    non_invertible_fraction,
)
from simplicial_contextuality.polytope import contextual_fraction, is_noncontextual
from simplicial_contextuality.random_models import random_corpus, random_det_map, random_model, random_weights
from simplicial_contextuality.semiring import BOOLEAN, NONNEG_RATIONAL, REAL_FIELD
from simplicial_contextuality.simplicial import (
    DetMap,
    StandardSpace,
    Target,
    build_standard,
    chsh_boundary_inclusion,
    enumerate_det_maps,
    glued_triangle_circle_inclusion,
)

FIXTURES = Path(Path(__file__).parent, 'fixtures')
R = NONNEG_RATIONAL
NZ2 = Target.nerve(2)
CIRCLE = build_standard(StandardSpace.CIRCLE)
DELTA2 = build_standard(StandardSpace.DELTA2)
CHSH = build_standard(StandardSpace.CHSH_CONE)
SPACES = [DELTA2, build_standard(StandardSpace.GLUED_TRIANGLE), CHSH]


def pr_box():
    return mf.load_model(Path(FIXTURES, 'models', 'chsh_pr.json'))


class TestInverse(TestCase):
    def test_real_circle_inverse(self):
        p = mf.load_model(Path(FIXTURES, 'models', 'circle_1224.json'))
        self.assertEqual(p.semiring, REAL_FIELD)
        q = inverse(p)
        expected = [Fraction(11, 35), Fraction(2, 7), Fraction(2, 7), Fraction(4, 35)]
        self.assertEqual(box(q, 1, 'e'), expected)
        self.assertEqual(box(q, 0, 'v'), [Fraction(3, 5), Fraction(2, 5)])
        one = identity(MonoidContext.of(p))
        self.assertEqual(mult(p, q), one)
        self.assertEqual(mult(q, p), one)

    def test_real_zero_divisor(self):
        p = from_boxes(CIRCLE, Target.delta(2), REAL_FIELD, {'e': [Fraction(1, 2), 0, 0, Fraction(1, 2)]})
        with self.assertRaises(NotInvertibleError):
            inverse(p)

    def test_only_units_invert_over_rationals(self):
        with self.assertRaises(NotInvertibleError):
            inverse(pr_box())
        for phi in enumerate_det_maps(CHSH, NZ2)[:5]:
            p = deterministic_embed(phi, CHSH, R)
            self.assertEqual(mult(p, inverse(p)), identity(MonoidContext.of(p)))
            self.assertEqual(inverse(p), deterministic_embed(phi.negate(), CHSH, R))


class TestProduct(TestCase):
    def test_triangle_product(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            p, q = (random_model(rng, DELTA2, NZ2) for _ in range(2))
            P, Q = box(p, 2, 't'), box(q, 2, 't')
            expected = [
                P[0] * Q[0] + P[1] * Q[1] + P[2] * Q[2] + P[3] * Q[3],
                P[0] * Q[1] + P[1] * Q[0] + P[2] * Q[3] + P[3] * Q[2],
                P[0] * Q[2] + P[2] * Q[0] + P[1] * Q[3] + P[3] * Q[1],
                P[0] * Q[3] + P[3] * Q[0] + P[1] * Q[2] + P[2] * Q[1],
            ]
            self.assertEqual(box(mult(p, q), 2, 't'), expected)

    def test_different_monoids(self):
        p = pr_box()
        q = deterministic_embed(enumerate_det_maps(DELTA2, NZ2)[0], DELTA2, R)
        with self.assertRaises(UsageError):
            mult(p, q)

    def test_monoid_laws(self):
        rng = np.random.default_rng(99)
        for i in range(1000):
            space = SPACES[i % len(SPACES)]
            p, q, r, s = (random_model(rng, space, NZ2) for _ in range(4))
            self.assertEqual(mult(mult(p, q), r), mult(p, mult(q, r)))
            one = identity(MonoidContext.of(p))
            self.assertEqual(mult(one, p), p)
            self.assertEqual(mult(p, one), p)
            a, b = random_weights(rng, 2)
            self.assertEqual(mult(p, combine([(q, a), (r, b)])), combine([(mult(p, q), a), (mult(p, r), b)]))
            self.assertEqual(mult(combine([(q, a), (r, b)]), s), combine([(mult(q, s), a), (mult(r, s), b)]))


class TestWeakInvertibility(TestCase):
    def test_matches_noncontextuality(self):
        rng = np.random.default_rng(42)
        corpus = random_corpus(rng, SPACES, NZ2, 500)
        self.assertTrue(any(m.semiring == BOOLEAN for m in corpus))
        disagreements = 0
        for p in corpus:
            wi = is_weakly_invertible(p)
            disagreements += bool(wi) != bool(is_noncontextual(p))
            if wi:
                self.assertEqual(theta(wi.witness, p.space), p)
        self.assertEqual(disagreements, 0)

    def test_units_preserve_weak_invertibility(self):
        rng = np.random.default_rng(5)
        for p in random_corpus(rng, SPACES, NZ2, 200):
            phi = random_det_map(rng, p.space, NZ2)
            unit = deterministic_embed(phi, p.space, p.semiring)
            wi = bool(is_weakly_invertible(p))
            self.assertEqual(bool(is_weakly_invertible(mult(unit, p))), wi)
            self.assertEqual(bool(is_weakly_invertible(mult(p, unit))), wi)

    def test_real_field_unsupported(self):
        p = mf.load_model(Path(FIXTURES, 'models', 'circle_1224.json'))
        with self.assertRaises(UnsupportedError):
            is_weakly_invertible(p)


class TestInvertibleFraction(TestCase):
    def test_pr_box(self):
        p = pr_box()
        self.assertEqual(invertible_fraction(p), 0)
        self.assertEqual(non_invertible_fraction(p), 1)
        self.assertTrue(is_strongly_noninvertible(p))
        self.assertEqual(invertible_support(p), [])

    def test_strong_contextuality_equivalences(self):
        rng = np.random.default_rng(8)
        corpus = random_corpus(rng, SPACES, NZ2, 300, boolean_share=0)
        strong = 0
        for p in corpus:
            sc = is_strongly_contextual(p)
            strong += sc
            self.assertEqual(sc, is_strongly_noninvertible(p))
            self.assertEqual(sc, contextual_fraction(p) == 1)
            self.assertEqual(invertible_fraction(p), 1 - contextual_fraction(p))
        self.assertGreater(strong, 0)

    def test_invertible_support_is_support(self):
        rng = np.random.default_rng(21)
        for i in range(100):
            p = random_model(rng, SPACES[i % len(SPACES)], NZ2)
            self.assertEqual(invertible_support(p), support(p))

    def test_member(self):
        p = pr_box()
        phi = enumerate_det_maps(CHSH, NZ2)[0]
        self.assertFalse(isupp_member(p, phi))
        self.assertTrue(isupp_member(deterministic_embed(phi, CHSH, R), phi))
        with self.assertRaises(UsageError):
            isupp_member(p, DetMap.from_labels(NZ2, {'x': 0}))

    def test_needs_rationals(self):
        p = from_boxes(CHSH, NZ2, BOOLEAN, {sid: [1, 1, 1, 1] for sid in CHSH.ids(2)})
        with pytest.raises(UnsupportedError):
            invertible_fraction(p)

    def test_fraction_inequalities(self):
        rng = np.random.default_rng(31)
        for i in range(200):
            space = SPACES[i % len(SPACES)]
            p, q = random_model(rng, space, NZ2), random_model(rng, space, NZ2)
            self.assertGreaterEqual(invertible_fraction(mult(p, q)), invertible_fraction(p) * invertible_fraction(q))
            a, b = random_weights(rng, 2)
            mixture = combine([(p, a), (q, b)])
            self.assertGreaterEqual(
                invertible_fraction(mixture), a * invertible_fraction(p) + b * invertible_fraction(q)
            )

    def test_restriction_does_not_lower_the_invertible_fraction(self):
        rng = np.random.default_rng(77)
        inclusions = [chsh_boundary_inclusion(), glued_triangle_circle_inclusion()]
        for i in range(100):
            f = inclusions[i % len(inclusions)]
            p = random_model(rng, f.codomain, NZ2)
            self.assertGreaterEqual(invertible_fraction(restrict(p, f)), invertible_fraction(p))
