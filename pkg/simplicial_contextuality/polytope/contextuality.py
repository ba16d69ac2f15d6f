"""Noncontextuality, contextual fraction and decompositions of simplicial distributions.

A simplicial distribution is noncontextual when it lies in the image of theta, i.e. it is a mixture of
deterministic distributions. The decision depends on the semiring:

 - rational: linear feasibility over the maps of its support, one equation per simplex and outcome;
 - boolean: the union of the deterministic distributions of its support must give back p;
 - real: signed linear solvability, no positivity on the mixing weights.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from simplicial_contextuality.dist import Dist
from simplicial_contextuality.distribution.simp_dist import (
    SimpDist,
    in_support,
    require_valid,
    restrict,
    support,
    theta,
)
from simplicial_contextuality.exceptions import UnsupportedError
from simplicial_contextuality.polytope import linalg
from simplicial_contextuality.polytope.lp import LinearProgram, lp_solve
from simplicial_contextuality.semiring import NONNEG_RATIONAL, SemiringKind
from simplicial_contextuality.simplicial.det_maps import enumerate_det_maps
from simplicial_contextuality.simplicial.sset import DetMap, SimplicialMap

log = logging.getLogger(__name__)


@dataclass
class NoncontextualityResult:
    noncontextual: bool
    witness: Optional[Dist] = None

    def __bool__(self) -> bool:
        return self.noncontextual


@dataclass
class Decomposition:
    """p = weight * theta(witness) + (1 - weight) * remainder."""

    weight: Fraction
    witness: Optional[Dist]
    remainder: Optional[SimpDist]

    @property
    def contextual_fraction(self) -> Fraction:
        return 1 - self.weight


def _rows(p: SimpDist, maps: Sequence[DetMap]) -> List[Dict]:
    """One row per stored simplex and outcome: the maps hitting that outcome, and p's weight there."""
    rows = []
    for (dim, sid), q in p.dists.items():
        hits: Dict = {}
        for j, phi in enumerate(maps):
            hits.setdefault(phi.value(p.space, dim, sid), []).append(j)
        for o in p.target.outcomes(dim):
            rows.append({'coefficients': {j: 1 for j in hits.get(o, [])}, 'rhs': Fraction(q[o])})
    return rows


def _require_rational(p: SimpDist, what: str) -> None:
    if p.semiring != NONNEG_RATIONAL:
        raise UnsupportedError(f"{what} is computed over the rational semiring, not {p.semiring.name}")


def _rational_noncontextual(p: SimpDist) -> NoncontextualityResult:
    maps = support(p)
    if not maps:
        return NoncontextualityResult(False)
    lp = LinearProgram(len(maps))
    for row in _rows(p, maps):
        if row['coefficients'] or row['rhs']:
            lp.add_equality(row['coefficients'], row['rhs'])
    lp.add_equality([1] * len(maps), 1)
    result = lp_solve(lp)
    if not result.is_optimal:
        return NoncontextualityResult(False)
    witness = Dist(p.semiring, {phi: w for phi, w in zip(maps, result.assignment)})
    return NoncontextualityResult(True, witness)


def _boolean_noncontextual(p: SimpDist) -> NoncontextualityResult:
    maps = support(p)
    if not maps:
        return NoncontextualityResult(False)
    witness = Dist(p.semiring, {phi: True for phi in maps})
    if theta(witness, p.space) == p:
        return NoncontextualityResult(True, witness)
    return NoncontextualityResult(False)


def _signed_noncontextual(p: SimpDist) -> NoncontextualityResult:
    maps = enumerate_det_maps(p.space, p.target)
    if not maps:
        return NoncontextualityResult(False)
    rows = _rows(p, maps)
    A = [[row['coefficients'].get(j, 0) for j in range(len(maps))] for row in rows] + [[1] * len(maps)]
    b = [row['rhs'] for row in rows] + [1]
    x = linalg.solve(A, b)
    if x is None:
        return NoncontextualityResult(False)
    return NoncontextualityResult(True, Dist(p.semiring, dict(zip(maps, x))))


def is_noncontextual(p: SimpDist) -> NoncontextualityResult:
    """Decide membership in the image of theta; the witness is a distribution over maps with theta(witness) = p."""
    require_valid(p)
    kind = p.semiring.kind
    if kind is SemiringKind.BOOLEAN:
        return _boolean_noncontextual(p)
    if kind is SemiringKind.REAL_FIELD:
        return _signed_noncontextual(p)
    return _rational_noncontextual(p)


def decompose(p: SimpDist) -> Decomposition:
    """The largest noncontextual part of p.

    Maximizes sum b(phi) subject to theta(b) <= p entrywise and b >= 0. Only maps in the support of p can
    carry weight, so the program is set up over those.
    """
    _require_rational(p, 'the contextual fraction')
    require_valid(p)
    maps = support(p)
    if not maps:
        return Decomposition(Fraction(0), None, p)
    lp = LinearProgram(len(maps))
    for row in _rows(p, maps):
        if row['coefficients']:
            lp.add_upper_bound(row['coefficients'], row['rhs'])
    lp.maximize([1] * len(maps))
    result = lp_solve(lp)
    weight = result.value
    b = dict(zip(maps, result.assignment))
    witness = Dist(p.semiring, {phi: w / weight for phi, w in b.items()}) if weight else None
    remainder = None
    if weight < 1:
        scale = 1 - weight
        dists = {}
        for (dim, sid), q in p.dists.items():
            part: Dict = {}
            for phi, w in b.items():
                if w:
                    o = phi.value(p.space, dim, sid)
                    part[o] = part.get(o, 0) + w
            dists[(dim, sid)] = Dist(p.semiring, {o: (q[o] - part.get(o, 0)) / scale for o in q.support})
        remainder = require_valid(SimpDist(p.space, p.target, p.semiring, dists))
    log.debug('decomposition: noncontextual weight %s over %s maps', weight, len(maps))
    return Decomposition(weight, witness, remainder)


def noncontextual_fraction(p: SimpDist) -> Fraction:
    return decompose(p).weight


def contextual_fraction(p: SimpDist) -> Fraction:
    """CF(p) = 1 - the largest weight of a noncontextual part."""
    return 1 - noncontextual_fraction(p)


def scc_certificate(p: SimpDist, f: SimplicialMap) -> bool:
    """True when no map on the codomain of `f` restricts into the support of the pullback of p along `f`.

    A true certificate proves p strongly contextual; a false one proves nothing.
    """
    pulled = restrict(p, f)
    candidates = {phi.pullback(f) for phi in enumerate_det_maps(f.codomain, p.target)}
    return not any(in_support(pulled, psi) for psi in candidates)
