"""Distributions on X x Delta[1] interpolating between two deterministic distributions."""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from simplicial_contextuality.distribution.simp_dist import SimpDist, deterministic_embed, require_valid
from simplicial_contextuality.exceptions import UnsupportedError, UsageError
from simplicial_contextuality.polytope.lp import LinearProgram, LPResult, lp_solve
from simplicial_contextuality.polytope.polytope import distribution_polytope
from simplicial_contextuality.semiring import NONNEG_RATIONAL
from simplicial_contextuality.simplicial.sset import DetMap, SSet2
from simplicial_contextuality.simplicial.standard import Prism, prism

log = logging.getLogger(__name__)


class HomotopyStatus(Enum):
    UNIQUE = 'unique'
    NONE = 'none'
    NON_UNIQUE = 'non-unique'


@dataclass
class HomotopyResult:
    status: HomotopyStatus
    prism: Prism
    solution: Optional[SimpDist] = None
    witnesses: Tuple[SimpDist, ...] = ()


def distribution_homotopy(phi0: DetMap, phi1: DetMap, X: SSet2) -> HomotopyResult:
    """Solve for the distributions F on X x Delta[1] with F = delta^phi0 on X x {0} and delta^phi1 on X x {1}.

    Existence is a feasibility program; uniqueness is decided by minimizing and maximizing every coordinate
    over the solution set.
    """
    if phi0.target != phi1.target or not phi0.target.is_nerve:
        raise UsageError("distribution homotopies are between maps into the same nerve target")
    if X.triangles:
        raise UnsupportedError("distribution homotopies need a 1-dimensional space")
    P = prism(X)
    polytope = distribution_polytope(P.space, phi0.target)
    n = polytope.num_vars

    def program() -> LinearProgram:
        lp = LinearProgram(n)
        for expr, rhs in polytope.equations:
            lp.add_equality(expr, rhs)
        for end, phi in ((P.bottom, phi0), (P.top, phi1)):
            for expr, rhs in polytope.restriction_equations(end, deterministic_embed(phi, X, NONNEG_RATIONAL)):
                lp.add_equality(expr, rhs)
        return lp

    feasible = lp_solve(program())
    if not feasible.is_optimal:
        return HomotopyResult(HomotopyStatus.NONE, P)

    def extreme(j: int, sign: int) -> LPResult:
        lp = program()
        lp.maximize({j: sign})
        return lp_solve(lp)

    for j in range(n):
        high, low = extreme(j, 1), extreme(j, -1)
        if high.value != -low.value:
            witnesses: List[SimpDist] = [
                require_valid(polytope.to_simp_dist(r.assignment)) for r in (low, high)  # type: ignore
            ]
            log.debug('homotopy not unique: coordinate %s ranges over [%s, %s]', j, -low.value, high.value)
            return HomotopyResult(HomotopyStatus.NON_UNIQUE, P, None, tuple(witnesses))

    solution = require_valid(polytope.to_simp_dist([Fraction(v) for v in feasible.assignment]))  # type: ignore
    return HomotopyResult(HomotopyStatus.UNIQUE, P, solution, (solution,))
