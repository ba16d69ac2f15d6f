import multiprocessing
from fractions import Fraction
from itertools import count
from unittest import TestCase
from unittest.mock import patch

import numpy as np
import pytest

from simplicial_contextuality.distribution import (
    combine,
    deterministic_embed,
    from_boxes,
    is_strongly_contextual,
    restrict,
)
from simplicial_contextuality.exceptions import ContextualityError, UnsupportedError, UsageError
from simplicial_contextuality.polytope import (
    HomotopyStatus,
    LinearProgram,
    LPStatus,
    chsh_check,
    contextual_fraction,
    decompose,
    distribution_homotopy,
    distribution_polytope,
    enumerate_vertices,
    fiber_vertices,
    is_noncontextual,
    is_vertex,
    lp_solve,
    scc_certificate,
    vertex_points,
)
from simplicial_contextuality.polytope import linalg, vertices
from simplicial_contextuality.random_models import random_model
from simplicial_contextuality.semiring import BOOLEAN, NONNEG_RATIONAL, REAL_FIELD
from simplicial_contextuality.simplicial import (
    DetMap,
    StandardSpace,
    Target,
    build_standard,
    chsh_boundary_inclusion,
    enumerate_det_maps,
    glued_triangle_circle_inclusion,
    homotopy_classes,
)

R = NONNEG_RATIONAL
NZ2 = Target.nerve(2)
HALF = Fraction(1, 2)
CHSH = build_standard(StandardSpace.CHSH_CONE)
GLUED = build_standard(StandardSpace.GLUED_TRIANGLE)

PR_BOXES = {
    'x0,y0': [HALF, 0, 0, HALF],
    'x0,y1': [HALF, 0, 0, HALF],
    'x1,y0': [HALF, 0, 0, HALF],
    'x1,y1': [0, HALF, HALF, 0],
}


def pr_box():
    return from_boxes(CHSH, NZ2, R, PR_BOXES)


class TestLinearAlgebra(TestCase):
    def test_rank_and_solve(self):
        A = [[1, 2], [2, 4], [0, 1]]
        self.assertEqual(linalg.rank(A), 2)
        self.assertEqual(linalg.solve(A, [3, 6, 1]), [1, 1])
        self.assertIsNone(linalg.solve(A, [3, 7, 1]))

    def test_rref(self):
        R, pivots = linalg.rref([[2, 4, 2], [1, 2, 1], [0, 1, 1]])
        self.assertEqual(pivots, [0, 1])
        self.assertEqual(R, [[1, 0, -1], [0, 1, 1]])
        self.assertIsInstance(R[0][2], Fraction)
        self.assertEqual(linalg.rref([[Fraction(1, 3), 1]], 1), ([[1, 3]], [0]))
        self.assertEqual(linalg.rref([[0, 1]], 1), ([], []))

    def test_bareiss(self):
        self.assertEqual(linalg.bareiss_solve([[2, 1], [1, 3]], [3, 5]), [Fraction(4, 5), Fraction(7, 5)])
        self.assertIsNone(linalg.bareiss_solve([[1, 2], [2, 4]], [1, 2]))


class TestLinearProgram(TestCase):
    def test_optimum(self):
        lp = LinearProgram(2)
        lp.add_upper_bound([1, 1], 4)
        lp.add_upper_bound([1, 3], 6)
        lp.maximize([3, 2])
        result = lp_solve(lp)
        self.assertTrue(result.is_optimal)
        self.assertEqual(result.value, 12)
        self.assertEqual(result.assignment, [4, 0])

    def test_exact_fractional_optimum(self):
        lp = LinearProgram(2)
        lp.add_equality([1, 1], 1)
        lp.add_upper_bound([3, -1], 0)
        lp.maximize([1, 0])
        self.assertEqual(lp_solve(lp).value, Fraction(1, 4))

    def test_infeasible_and_unbounded(self):
        lp = LinearProgram(1)
        lp.add_equality([1], -1)
        self.assertIs(lp_solve(lp).status, LPStatus.INFEASIBLE)
        lp = LinearProgram(2)
        lp.add_equality([1, -1], 0)
        lp.maximize([1, 1])
        self.assertIs(lp_solve(lp).status, LPStatus.UNBOUNDED)

    def test_bad_index(self):
        with self.assertRaises(UsageError):
            LinearProgram(1).add_equality({3: 1}, 0)


class TestNoncontextuality(TestCase):
    def test_pr_box(self):
        p = pr_box()
        self.assertFalse(is_noncontextual(p))
        self.assertEqual(contextual_fraction(p), 1)

    def test_deterministic(self):
        phi = enumerate_det_maps(CHSH, NZ2)[6]
        result = is_noncontextual(deterministic_embed(phi, CHSH, R))
        self.assertTrue(result)
        self.assertEqual(result.witness.support, (phi,))

    def test_mixture_with_pr(self):
        zero = DetMap.from_labels(NZ2, {eid: 0 for eid in CHSH.ids(1)})
        p = combine([(pr_box(), Fraction(1, 3)), (deterministic_embed(zero, CHSH, R), Fraction(2, 3))])
        d = decompose(p)
        self.assertEqual(d.weight, Fraction(2, 3))
        self.assertEqual(d.contextual_fraction, Fraction(1, 3))
        self.assertEqual(contextual_fraction(d.remainder), 1)

    def test_boolean(self):
        q = from_boxes(CHSH, NZ2, BOOLEAN, {k: [1, 1, 1, 1] for k in PR_BOXES})
        result = is_noncontextual(q)
        self.assertTrue(result)
        self.assertEqual(len(result.witness), 16)

    def test_real_field(self):
        circle = build_standard(StandardSpace.CIRCLE)
        T = Target.delta(2)
        self.assertTrue(is_noncontextual(from_boxes(circle, T, REAL_FIELD, {'e': [2, 0, 0, -1]})))
        self.assertFalse(is_noncontextual(from_boxes(circle, T, REAL_FIELD, {'e': [1, 2, 2, -4]})))

    def test_contextual_fraction_needs_rationals(self):
        with self.assertRaises(UnsupportedError):
            contextual_fraction(from_boxes(CHSH, NZ2, BOOLEAN, {k: [1, 1, 1, 1] for k in PR_BOXES}))

    def test_scc_certificate(self):
        f = chsh_boundary_inclusion()
        self.assertTrue(scc_certificate(pr_box(), f))
        phi = enumerate_det_maps(CHSH, NZ2)[0]
        self.assertFalse(scc_certificate(deterministic_embed(phi, CHSH, R), f))


class TestChsh(TestCase):
    def test_correlators(self):
        report = chsh_check(pr_box())
        self.assertEqual(list(report.correlators.values()), [1, 1, 1, -1])
        self.assertEqual(report.max_violation, 4)
        self.assertFalse(report.all_satisfied)
        self.assertEqual(len(report.inequalities), 8)

    def test_needs_chsh_cone(self):
        with self.assertRaises(UsageError):
            chsh_check(from_boxes(GLUED, NZ2, R, {'t': [1, 0, 0, 0]}))

    def test_fine_theorem(self):
        rng = np.random.default_rng(1982)
        disagreements = 0
        contextual = 0
        for _ in range(1000):
            p = random_model(rng, CHSH, NZ2)
            noncontextual = bool(is_noncontextual(p))
            contextual += not noncontextual
            disagreements += chsh_check(p).all_satisfied != noncontextual
        self.assertEqual(disagreements, 0)
        self.assertGreater(contextual, 0)


class TestVertices(TestCase):
    def test_chsh_census(self):
        reports = enumerate_vertices(CHSH, NZ2)
        self.assertEqual(len(reports), 24)
        deterministic = [r for r in reports if r.is_deterministic]
        contextual = [r for r in reports if not r.is_deterministic]
        self.assertEqual(len(deterministic), 16)
        self.assertTrue(all(r.is_strongly_contextual and r.contextual_fraction == 1 for r in contextual))
        self.assertTrue(all(r.contextual_fraction == 0 for r in deterministic))
        self.assertTrue(all(chsh_check(r.coordinates).max_violation == 4 for r in contextual))

    def test_chsh_polytope_dimension(self):
        P = distribution_polytope(CHSH, NZ2)
        A, _ = P.equality_rows()
        self.assertEqual(P.num_vars, 16)
        self.assertEqual(linalg.rank(A, P.num_vars), 8)

    def test_glued_triangle_vertices(self):
        points = set(vertex_points(GLUED, NZ2))
        self.assertEqual(points, {(1, 0, 0, 0), (0, 0, 1, 0), (0, HALF, 0, HALF)})
        reports = enumerate_vertices(GLUED, NZ2)
        contextual = [r for r in reports if not r.is_deterministic]
        self.assertEqual(len(contextual), 1)
        self.assertTrue(contextual[0].is_strongly_contextual)
        self.assertEqual(contextual[0].contextual_fraction, 1)

    def test_glued_triangle_restriction(self):
        rng = np.random.default_rng(3)
        f = glued_triangle_circle_inclusion()
        for _ in range(50):
            p = random_model(rng, GLUED, NZ2)
            box = p.dist(2, 't')
            self.assertEqual(box[(0, 1)], box[(1, 1)])
            self.assertEqual(restrict(p, f).dist(1, 'e')[(0,)], 1 - 2 * box[(0, 1)])

    def test_is_vertex(self):
        self.assertTrue(is_vertex(pr_box()))
        phi = enumerate_det_maps(CHSH, NZ2)[9]
        det = deterministic_embed(phi, CHSH, R)
        self.assertTrue(is_vertex(det))
        self.assertFalse(is_vertex(combine([(pr_box(), HALF), (det, HALF)])))

    def test_cap(self):
        with self.assertRaises(UnsupportedError):
            enumerate_vertices(CHSH, NZ2, cap=8)

    def test_fiber_vertices(self):
        f = chsh_boundary_inclusion()
        self.assertEqual(fiber_vertices(f, restrict(pr_box(), f)), [pr_box()])

    def test_enumerated_points_are_vertices(self):
        for space in (CHSH, GLUED):
            reports = enumerate_vertices(space, NZ2)
            self.assertTrue(all(is_vertex(r.coordinates) for r in reports))
            points = [r.coordinates for r in reports]
            for phi in enumerate_det_maps(space, NZ2):
                self.assertIn(deterministic_embed(phi, space, R), points)

    def test_fibers_over_boundary_vertices(self):
        f = chsh_boundary_inclusion()
        cone_vertices = [r.coordinates for r in enumerate_vertices(CHSH, NZ2)]
        found = []
        for boundary in enumerate_vertices(f.domain, NZ2):
            q = boundary.coordinates
            fiber = fiber_vertices(f, q)
            self.assertTrue(fiber)
            for p in fiber:
                self.assertTrue(is_vertex(p))
                self.assertEqual(restrict(p, f), q)
                self.assertIn(p, cone_vertices)
            found.extend(fiber)
        self.assertEqual(len(found), len(cone_vertices))

    def test_parallel_matches_serial(self):
        serial = enumerate_vertices(GLUED, NZ2, num_workers=1)
        parallel = enumerate_vertices(GLUED, NZ2, num_workers=2)
        self.assertEqual([r.coordinates for r in serial], [r.coordinates for r in parallel])

    def test_worker_error_is_reported(self):
        with self.assertRaises(ContextualityError) as ctx:
            vertices._solve_parallel([[1, 1]], [1], [(0, 5)], num_workers=2)
        self.assertIn('IndexError', str(ctx.exception))

    @pytest.mark.skipif(multiprocessing.get_start_method() != 'fork', reason='patches reach workers through fork')
    def test_failed_batch_raises(self):
        solve_bases = vertices.solve_bases
        calls = count()

        def fails_after_first_batch(task):
            if next(calls):
                raise RuntimeError('singular batch')
            return solve_bases(task)

        A, b = distribution_polytope(CHSH, NZ2).equality_rows()
        with patch.object(vertices, 'solve_bases', fails_after_first_batch), patch.object(vertices, 'CHUNK_SIZE', 100):
            with self.assertRaises(ContextualityError) as ctx:
                vertices.basic_feasible_solutions(A, b, num_workers=2)
        self.assertIn('singular batch', str(ctx.exception))


class TestHomotopy(TestCase):
    def setUp(self):
        self.loop = build_standard(StandardSpace.TWO_EDGE_LOOP)

    def labels(self, x, y):
        return DetMap.from_labels(NZ2, {'x': x, 'y': y})

    def test_unique_contextual_vertex(self):
        phi0, phi1 = self.labels(0, 0), self.labels(1, 0)
        result = distribution_homotopy(phi0, phi1, self.loop)
        self.assertIs(result.status, HomotopyStatus.UNIQUE)
        F = result.solution
        for sid in F.space.ids(2):
            self.assertEqual(sorted(F.dist(2, sid).weights.values()), [HALF, HALF])
        self.assertTrue(is_strongly_contextual(F))
        self.assertEqual(contextual_fraction(F), 1)
        self.assertTrue(is_vertex(F))
        self.assertFalse(homotopy_classes(phi0, phi1, self.loop))

    def test_non_unique(self):
        result = distribution_homotopy(self.labels(0, 0), self.labels(1, 1), self.loop)
        self.assertIs(result.status, HomotopyStatus.NON_UNIQUE)
        low, high = result.witnesses
        self.assertNotEqual(low, high)
        for F in result.witnesses:
            self.assertEqual(restrict(F, result.prism.bottom), deterministic_embed(self.labels(0, 0), self.loop, R))

    def test_constant_homotopy(self):
        phi = self.labels(1, 0)
        result = distribution_homotopy(phi, phi, self.loop)
        self.assertIs(result.status, HomotopyStatus.NON_UNIQUE)


def test_homotopy_needs_nerve_maps():
    loop = build_standard(StandardSpace.TWO_EDGE_LOOP)
    phi = DetMap.from_labels(Target.delta(2), {'a': 0, 'b': 0})
    with pytest.raises(UsageError):
        distribution_homotopy(phi, phi, loop)
