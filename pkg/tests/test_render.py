from fractions import Fraction
from pathlib import Path
from unittest import TestCase

from simplicial_contextuality import model_files as mf
from simplicial_contextuality import render
from simplicial_contextuality.polytope import chsh_check, enumerate_vertices, is_noncontextual
from simplicial_contextuality.semiring import BOOLEAN, NONNEG_RATIONAL
from simplicial_contextuality.simplicial import StandardSpace, Target, build_standard

MODELS = Path(Path(__file__).parent, 'fixtures', 'models')


class TestBoxTables(TestCase):
    def test_chsh_identity_grid(self):
        frame = render.chsh_frame(mf.load_model(Path(MODELS, 'chsh_identity.json')))
        self.assertEqual(frame.shape, (4, 4))
        self.assertEqual(frame.iloc[0, 0], '1')
        self.assertEqual(frame.loc[('x1', 1), ('y1', 1)], '0')

    def test_pr_box_grid(self):
        frame = render.chsh_frame(mf.load_model(Path(MODELS, 'chsh_pr.json')))
        self.assertEqual(frame.loc[('x0', 0), ('y0', 0)], '1/2')
        self.assertEqual(frame.loc[('x1', 0), ('y1', 0)], '0')
        self.assertEqual(frame.loc[('x1', 0), ('y1', 1)], '1/2')
        text = render.render_box_table(mf.load_model(Path(MODELS, 'chsh_pr.json')))
        self.assertIn('x1', text)
        self.assertIn('1/2', text)

    def test_single_box(self):
        text = render.render_box_table(mf.load_model(Path(MODELS, 'edge_half.json')))
        self.assertEqual(text.splitlines()[0], 'e')
        self.assertIn('1/2', text)

    def test_flat_listing(self):
        p = mf.load_model(Path(MODELS, 'delta2_half.json'))
        frame = render.flat_frame(p)
        self.assertEqual(list(frame.columns), ['dim', 'simplex', 'outcome', 'weight'])
        # three edges with two outcomes and one triangle with four
        self.assertEqual(len(frame), 10)

    def test_float_column(self):
        p = mf.load_model(Path(MODELS, 'edge_half.json'))
        self.assertIn('(0.500000)', render.render_box_table(p, show_float=True))


class TestWeights(TestCase):
    def test_format_weight(self):
        self.assertEqual(render.format_weight(Fraction(1, 3), NONNEG_RATIONAL), '1/3')
        self.assertEqual(render.format_weight(Fraction(1, 4), NONNEG_RATIONAL, show_float=True), '1/4 (0.250000)')
        self.assertEqual(render.format_weight(Fraction(1), NONNEG_RATIONAL, show_float=True), '1')
        self.assertEqual(render.format_weight(True, BOOLEAN, show_float=True), '1')
        self.assertEqual(render.format_weight(Fraction(2, 3), NONNEG_RATIONAL, True, digits=2), '2/3 (0.67)')


class TestReportTables(TestCase):
    def test_witness_table(self):
        p = mf.load_model(Path(MODELS, 'delta2_uniform.json'))
        table = render.witness_table(is_noncontextual(p).witness)
        self.assertEqual(len(table.splitlines()), 5)
        self.assertIn('1/4', table)

    def test_vertex_table(self):
        reports = enumerate_vertices(build_standard(StandardSpace.GLUED_TRIANGLE), Target.nerve(2))
        table = render.vertex_table(reports)
        self.assertEqual(len(table.splitlines()), len(reports) + 1)
        self.assertIn('strongly_contextual', table)

    def test_chsh_tables(self):
        text = render.chsh_tables(chsh_check(mf.load_model(Path(MODELS, 'chsh_pr.json'))))
        self.assertIn('correlator', text)
        self.assertIn('slack', text)
