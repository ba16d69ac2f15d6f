from fractions import Fraction
from unittest import TestCase

import numpy as np
import pytest

from simplicial_contextuality import dist as D
from simplicial_contextuality.dist import Dist
from simplicial_contextuality.distribution import (
    SimpDist,
    box,
    change_semiring,
    combine,
    deterministic_embed,
    from_boxes,
    is_strongly_contextual,
    mix,
    require_valid,
    restrict,
    support,
    theta,
    top_simplices,
    validate,
)
from simplicial_contextuality.exceptions import InvalidModelError, PreconditionError, UsageError
from simplicial_contextuality.random_models import random_dist
from simplicial_contextuality.semiring import BOOLEAN, NONNEG_RATIONAL
from simplicial_contextuality.simplicial import (
    StandardSpace,
    Target,
    build_standard,
    chsh_boundary_inclusion,
    enumerate_det_maps,
    glued_triangle_circle_inclusion,
)

R = NONNEG_RATIONAL
NZ2 = Target.nerve(2)
HALF = Fraction(1, 2)

PR_BOXES = {
    'x0,y0': [HALF, 0, 0, HALF],
    'x0,y1': [HALF, 0, 0, HALF],
    'x1,y0': [HALF, 0, 0, HALF],
    'x1,y1': [0, HALF, HALF, 0],
}


def pr_box() -> SimpDist:
    return from_boxes(build_standard(StandardSpace.CHSH_CONE), NZ2, R, PR_BOXES)


class TestConstruction(TestCase):
    def test_top_simplices(self):
        self.assertEqual(len(top_simplices(build_standard(StandardSpace.CHSH_CONE), NZ2)), 4)
        self.assertEqual(top_simplices(build_standard(StandardSpace.CIRCLE), Target.delta(2)), [(1, 'e')])
        self.assertEqual(top_simplices(build_standard(StandardSpace.TWO_EDGE_LOOP), NZ2), [(1, 'x'), (1, 'y')])

    def test_from_boxes_fills_faces(self):
        p = from_boxes(build_standard(StandardSpace.DELTA2), NZ2, R, {'t': [HALF, 0, 0, HALF]})
        self.assertEqual(p.dist(1, 'x'), D.uniform([(0,), (1,)], R))
        self.assertEqual(p.dist(1, 'y'), D.uniform([(0,), (1,)], R))
        self.assertEqual(p.dist(1, 'z'), D.delta((0,), R))
        self.assertEqual(box(p, 2, 't'), [HALF, 0, 0, HALF])
        self.assertNotIn((0, 'v0'), p.dists)

    def test_from_boxes_errors(self):
        X = build_standard(StandardSpace.DELTA2)
        with self.assertRaises(PreconditionError):
            from_boxes(X, NZ2, R, {})
        with self.assertRaises(UsageError):
            from_boxes(X, NZ2, R, {'t': [1, 0, 0]})

    def test_delta_target_stores_vertices(self):
        p = from_boxes(build_standard(StandardSpace.CIRCLE), Target.delta(2), R, {'e': [HALF, 0, 0, HALF]})
        self.assertEqual(p.dist(0, 'v'), D.uniform([(0,), (1,)], R))

    def test_validate_reports_disagreeing_faces(self):
        X = build_standard(StandardSpace.DELTA2)
        good = from_boxes(X, NZ2, R, {'t': [HALF, 0, 0, HALF]})
        dists = dict(good.dists)
        dists[(1, 'z')] = D.delta((1,), R)
        bad = SimpDist(X, NZ2, R, dists)
        errors = validate(bad)
        self.assertEqual(len(errors), 1)
        self.assertIn("'z'", errors[0])
        with self.assertRaises(InvalidModelError):
            require_valid(bad)

    def test_validate_reports_missing_and_foreign_outcomes(self):
        X = build_standard(StandardSpace.CIRCLE)
        p = SimpDist(X, NZ2, R, {(1, 'e'): D.delta((2,), R)})
        self.assertTrue(any('outside' in e for e in validate(p)))
        self.assertTrue(any('no distribution' in e for e in validate(SimpDist(X, NZ2, R, {}))))


class TestSupport(TestCase):
    def test_pr_box_is_strongly_contextual(self):
        p = pr_box()
        self.assertFalse(p.is_deterministic)
        self.assertTrue(is_strongly_contextual(p))
        self.assertTrue(is_strongly_contextual(change_semiring(p, BOOLEAN)))

    def test_deterministic_support(self):
        X = build_standard(StandardSpace.CHSH_CONE)
        phi = enumerate_det_maps(X, NZ2)[3]
        p = deterministic_embed(phi, X, R)
        self.assertTrue(p.is_deterministic)
        self.assertEqual(support(p), [phi])

    def test_restrict_to_boundary(self):
        q = restrict(pr_box(), chsh_boundary_inclusion())
        self.assertEqual(q.dist(1, 'x1+y1'), D.delta((1,), R))
        self.assertEqual(q.dist(1, 'x0+y0'), D.delta((0,), R))
        self.assertTrue(q.is_deterministic)

    def test_restrict_glued_triangle_to_circle(self):
        X = build_standard(StandardSpace.GLUED_TRIANGLE)
        p = from_boxes(X, NZ2, R, {'t': [0, HALF, 0, HALF]})
        q = restrict(p, glued_triangle_circle_inclusion())
        self.assertEqual(q.dist(1, 'e'), D.delta((1,), R))

    def test_restrict_needs_matching_space(self):
        with self.assertRaises(UsageError):
            restrict(pr_box(), glued_triangle_circle_inclusion())


class TestConvexStructure(TestCase):
    def test_combine(self):
        X = build_standard(StandardSpace.DELTA2)
        maps = enumerate_det_maps(X, NZ2)
        p = combine([(deterministic_embed(maps[0], X, R), HALF), (deterministic_embed(maps[-1], X, R), HALF)])
        self.assertEqual(box(p, 2, 't'), [HALF, 0, 0, HALF])

    def test_mix_needs_one_context(self):
        X = build_standard(StandardSpace.DELTA2)
        phi = enumerate_det_maps(X, NZ2)[0]
        p = deterministic_embed(phi, X, R)
        q = deterministic_embed(phi, X, BOOLEAN)
        with pytest.raises(UsageError):
            mix(Dist(R, {p: HALF, q: HALF}))


class TestTheta(TestCase):
    def test_theta_of_a_delta_is_deterministic(self):
        for member in (StandardSpace.CHSH_CONE, StandardSpace.GLUED_TRIANGLE, StandardSpace.DELTA2):
            X = build_standard(member)
            for phi in enumerate_det_maps(X, NZ2):
                self.assertEqual(theta(D.delta(phi, R), X), deterministic_embed(phi, X, R))

    def test_theta_is_valid(self):
        rng = np.random.default_rng(11)
        X = build_standard(StandardSpace.CHSH_CONE)
        maps = enumerate_det_maps(X, NZ2)
        for _ in range(20):
            self.assertEqual(validate(theta(random_dist(rng, maps), X)), [])

    def test_naturality(self):
        rng = np.random.default_rng(5)
        for f in (chsh_boundary_inclusion(), glued_triangle_circle_inclusion()):
            maps = enumerate_det_maps(f.codomain, NZ2)
            for semiring in (R, BOOLEAN):
                for _ in range(25):
                    w = random_dist(rng, maps, semiring)
                    pulled = D.pushforward(lambda phi: phi.pullback(f), w)
                    self.assertEqual(restrict(theta(w, f.codomain), f), theta(pulled, f.domain))
