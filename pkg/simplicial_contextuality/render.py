"""Box tables and report tables for the command line."""
import logging
from itertools import product
from typing import List

import pandas as pd

from simplicial_contextuality.dist import Dist
from simplicial_contextuality.distribution.simp_dist import SimpDist, top_simplices
from simplicial_contextuality.local_config import FLOAT_DIGITS
from simplicial_contextuality.model_files import format_outcome
from simplicial_contextuality.polytope.chsh import ChshReport
from simplicial_contextuality.polytope.vertices import VertexReport
from simplicial_contextuality.semiring import RawScalar, Semiring
from simplicial_contextuality.simplicial.standard import (
    CHSH_ALICE,
    CHSH_BOB,
    StandardSpace,
    build_standard,
    context_triangle,
)

log = logging.getLogger(__name__)


def format_weight(value: RawScalar, semiring: Semiring, show_float: bool = False, digits: int = FLOAT_DIGITS) -> str:
    text = semiring.format(value)
    if show_float and not semiring.is_boolean and '/' in text:
        text += f" ({float(value):.{digits}f})"
    return text


def _is_chsh(p: SimpDist) -> bool:
    return p.target.is_nerve and p.space == build_standard(StandardSpace.CHSH_CONE)


def box_frame(q: Dist, d: int, show_float: bool = False) -> pd.DataFrame:
    """A d x d box: rows are the first outcome coordinate, columns the second."""
    cells = [[format_weight(q[(a, b)], q.semiring, show_float) for b in range(d)] for a in range(d)]
    return pd.DataFrame(cells, index=pd.Index(range(d), name='a'), columns=pd.Index(range(d), name='b'))


def chsh_frame(p: SimpDist, show_float: bool = False) -> pd.DataFrame:
    """The four CHSH boxes laid out as one grid, Alice's measurements down and Bob's across."""
    d = p.target.d
    rows = pd.MultiIndex.from_tuples(list(product(CHSH_ALICE, range(d))), names=['x', 'a'])
    columns = pd.MultiIndex.from_tuples(list(product(CHSH_BOB, range(d))), names=['y', 'b'])
    cells = [
        [format_weight(p.dist(2, context_triangle(x, y))[(a, b)], p.semiring, show_float) for y, b in columns]
        for x, a in rows
    ]
    return pd.DataFrame(cells, index=rows, columns=columns)


def flat_frame(p: SimpDist, show_float: bool = False) -> pd.DataFrame:
    records = []
    for (dim, sid), q in p.dists.items():
        for outcome in p.target.outcomes(dim):
            records.append(
                {
                    'dim': dim,
                    'simplex': sid,
                    'outcome': format_outcome(outcome, p.target.d),
                    'weight': format_weight(q[outcome], p.semiring, show_float),
                }
            )
    return pd.DataFrame.from_records(records, columns=['dim', 'simplex', 'outcome', 'weight'])


def render_box_table(p: SimpDist, show_float: bool = False) -> str:
    """CHSH-shaped models render as the 2 x 2 grid of boxes, single-box models as one box, others as a listing."""
    if _is_chsh(p):
        return chsh_frame(p, show_float).to_string()
    tops = top_simplices(p.space, p.target)
    if len(tops) == 1 and p.target.width(tops[0][0]) == 2:
        dim, sid = tops[0]
        return f"{sid}\n" + box_frame(p.dist(dim, sid), p.target.d, show_float).to_string()
    return flat_frame(p, show_float).to_string(index=False)


def witness_table(witness: Dist, show_float: bool = False) -> str:
    records = [
        {'map': str(phi), 'weight': format_weight(w, witness.semiring, show_float)} for phi, w in witness.items()
    ]
    return pd.DataFrame.from_records(records, columns=['map', 'weight']).to_string(index=False)


def _point_text(p: SimpDist) -> str:
    return ' | '.join(
        ' '.join(p.semiring.format(p[s][o]) for o in p.target.outcomes(s[0])) for s in top_simplices(p.space, p.target)
    )


def vertex_table(reports: List[VertexReport], show_float: bool = False) -> str:
    records = [
        {
            'vertex': i,
            'deterministic': r.is_deterministic,
            'strongly_contextual': r.is_strongly_contextual,
            'CF': format_weight(r.contextual_fraction, r.coordinates.semiring, show_float),
            'point': _point_text(r.coordinates),
        }
        for i, r in enumerate(reports)
    ]
    columns = ['vertex', 'deterministic', 'strongly_contextual', 'CF', 'point']
    return pd.DataFrame.from_records(records, columns=columns).to_string(index=False)


def chsh_tables(report: ChshReport) -> str:
    correlators = pd.DataFrame(
        {'correlator': [str(v) for v in report.correlators.values()]},
        index=pd.Index(list(report.correlators), name='context'),
    )
    inequalities = pd.DataFrame.from_records(
        [
            {'inequality': i.label, 'value': str(i.value), 'slack': str(i.slack), 'ok': i.satisfied}
            for i in report.inequalities
        ],
        columns=['inequality', 'value', 'slack', 'ok'],
    )
    return correlators.to_string() + '\n\n' + inequalities.to_string(index=False)
