"""The polytope of simplicial distributions sSet(X, D(Y)) in top-simplex coordinates.

A point assigns a weight to every outcome of every top simplex. The distributions on lower simplices are
linear in those weights (marginals along a chosen coface); the equalities say that every other coface
induces the same marginal and that each top simplex carries total weight one.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from simplicial_contextuality.dist import Dist
from simplicial_contextuality.distribution.simp_dist import SimpDist, from_top, stored_simplices, top_simplices
from simplicial_contextuality.exceptions import UsageError
from simplicial_contextuality.semiring import NONNEG_RATIONAL
from simplicial_contextuality.simplicial.sset import Outcome, Simplex, SimplicialMap, SSet2, Target

log = logging.getLogger(__name__)

Expression = Dict[int, int]
Equation = Tuple[Dict[int, Fraction], Fraction]


def _add_into(acc: Expression, expr: Mapping[int, int], scale: int = 1) -> None:
    for j, v in expr.items():
        acc[j] = acc.get(j, 0) + scale * v
        if not acc[j]:
            del acc[j]


class DistributionPolytope:
    """The equality system of sSet(space, D(target)) with nonnegative variables."""

    def __init__(self, space: SSet2, target: Target):
        self.space = space
        self.target = target
        self.tops = top_simplices(space, target)
        self.variables: List[Tuple[Simplex, Outcome]] = [
            (s, o) for s in self.tops for o in target.outcomes(s[0])
        ]
        self.index = {v: j for j, v in enumerate(self.variables)}
        self.expressions: Dict[Simplex, Dict[Outcome, Expression]] = {}
        self.equations: List[Tuple[Expression, int]] = []
        self._build()

    def _pushed(self, coface: Simplex, i: int, dim: int) -> Dict[Outcome, Expression]:
        exprs: Dict[Outcome, Expression] = {o: {} for o in self.target.outcomes(dim)}
        for o, expr in self.expressions[coface].items():
            _add_into(exprs[self.target.face(i, o)], expr)
        return exprs

    def _build(self) -> None:
        for s in self.tops:
            self.expressions[s] = {o: {self.index[(s, o)]: 1} for o in self.target.outcomes(s[0])}
            self.equations.append(({self.index[(s, o)]: 1 for o in self.target.outcomes(s[0])}, 1))

        stored = [s for s in stored_simplices(self.space, self.target) if s not in self.expressions]
        for dim, sid in sorted(stored, key=lambda s: -s[0]):
            cofaces = self.space.cofaces(dim, sid)
            canonical = self._pushed(*cofaces[0], dim)
            self.expressions[(dim, sid)] = canonical
            for coface, i in cofaces[1:]:
                other = self._pushed(coface, i, dim)
                for o, expr in other.items():
                    row = dict(expr)
                    _add_into(row, canonical[o], -1)
                    if row:
                        self.equations.append((row, 0))
        log.debug(
            'polytope over %s: %s variables, %s equations', self.target, len(self.variables), len(self.equations)
        )

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    def equality_rows(self) -> Tuple[List[List[int]], List[int]]:
        """Dense integer coefficient rows and right hand sides."""
        rows = []
        for expr, _ in self.equations:
            row = [0] * self.num_vars
            for j, v in expr.items():
                row[j] = v
            rows.append(row)
        return rows, [rhs for _, rhs in self.equations]

    def expression(self, simplex: Simplex, outcome: Outcome) -> Expression:
        return self.expressions[simplex][outcome]

    def coordinates(self, p: SimpDist) -> List[Fraction]:
        if p.space != self.space or p.target != self.target:
            raise UsageError(f"{p!r} does not live on this polytope")
        return [Fraction(p[s][o]) for s, o in self.variables]

    def to_simp_dist(self, x: Sequence[Fraction], semiring=NONNEG_RATIONAL) -> SimpDist:
        top = {}
        for s in self.tops:
            top[s] = Dist(semiring, {o: x[self.index[(s, o)]] for o in self.target.outcomes(s[0])})
        return from_top(self.space, self.target, semiring, top)

    def restriction_equations(self, f: SimplicialMap, q: SimpDist) -> List[Equation]:
        """Equations saying that the pullback along `f` equals `q`."""
        if f.codomain != self.space:
            raise UsageError("the map does not land in the space of this polytope")
        equations = []
        for dim, sid in stored_simplices(f.domain, self.target):
            image = (dim, f.image(dim, sid))
            for o in self.target.outcomes(dim):
                expr = self.expression(image, o)
                equations.append(({j: Fraction(v) for j, v in expr.items()}, Fraction(q[(dim, sid)][o])))
        return equations


@lru_cache(maxsize=32)
def distribution_polytope(space: SSet2, target: Target) -> DistributionPolytope:
    return DistributionPolytope(space, target)
