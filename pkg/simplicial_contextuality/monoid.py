"""The convex monoid of simplicial distributions valued in a simplicial group.

For Y = NZ_d or Delta_{Z_d} the simplicial distributions sSet(X, D_R(Y)) form a monoid under simplexwise
convolution. Over a zero-sum-free integral semiring its units are exactly the deterministic distributions,
which is what weak invertibility, the invertible support and the invertible fraction are computed from.
All the programs here are set up on the top simplices only, in terms of the units.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Optional

from simplicial_contextuality import dist as D
from simplicial_contextuality.dist import Dist
from simplicial_contextuality.distribution.simp_dist import (
    SimpDist,
    combine,
    deterministic_embed,
    require_valid,
    top_simplices,
)
from simplicial_contextuality.exceptions import NotInvertibleError, UnsupportedError, UsageError
from simplicial_contextuality.polytope import linalg
from simplicial_contextuality.polytope.lp import LinearProgram, lp_solve
from simplicial_contextuality.semiring import NONNEG_RATIONAL, Semiring
from simplicial_contextuality.simplicial.det_maps import enumerate_det_maps
from simplicial_contextuality.simplicial.sset import DetMap, Outcome, Simplex, SSet2, Target

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonoidContext:
    space: SSet2
    target: Target
    semiring: Semiring

    @classmethod
    def of(cls, p: SimpDist) -> 'MonoidContext':
        return _context(p.space, p.target, p.semiring)

    @cached_property
    def units(self) -> List[DetMap]:
        """The deterministic maps; their embeddings are the invertible elements."""
        if not (self.semiring.zero_sum_free and self.semiring.integral):
            raise UnsupportedError("units are only the deterministic maps over zero-sum-free integral semirings")
        return enumerate_det_maps(self.space, self.target)

    @cached_property
    def tops(self) -> List[Simplex]:
        return top_simplices(self.space, self.target)

    @cached_property
    def unit_table(self) -> Dict[Simplex, Dict[Outcome, List[int]]]:
        """For each top simplex and outcome, the indices of the units taking that value."""
        table: Dict[Simplex, Dict[Outcome, List[int]]] = {}
        for s in self.tops:
            table[s] = {o: [] for o in self.target.outcomes(s[0])}
            for j, phi in enumerate(self.units):
                table[s][phi.value(self.space, *s)].append(j)
        return table

    def zero_map(self) -> DetMap:
        return DetMap.from_labels(self.target, {sid: 0 for sid in self.space.ids(self.target.label_dim)})


@lru_cache(maxsize=64)
def _context(space: SSet2, target: Target, semiring: Semiring) -> MonoidContext:
    return MonoidContext(space, target, semiring)


def _same_context(p: SimpDist, q: SimpDist) -> None:
    if p.context() != q.context():
        raise UsageError(f"{p!r} and {q!r} belong to different monoids")


def mult(p: SimpDist, q: SimpDist) -> SimpDist:
    """Simplexwise convolution under the pointwise group operation of the target."""
    _same_context(p, q)
    target = p.target
    return SimpDist(
        p.space,
        target,
        p.semiring,
        {s: D.convolve(p[s], q[s], target.add) for s in p.simplices},
    )


def identity(ctx: MonoidContext) -> SimpDist:
    return deterministic_embed(ctx.zero_map(), ctx.space, ctx.semiring)


def _convolution_inverse(q: Dist, target: Target, dim: int) -> Dist:
    outcomes = target.outcomes(dim)
    index = {o: i for i, o in enumerate(outcomes)}
    # row h: sum_g q(g) x(h - g) = [h == 0]
    A = [[Fraction(0)] * len(outcomes) for _ in outcomes]
    for h in outcomes:
        for g, w in q.items():
            A[index[h]][index[target.add(h, target.neg(g))]] += w
    b = [Fraction(1 if h == target.zero(dim) else 0) for h in outcomes]
    if linalg.rank(A, len(outcomes)) < len(outcomes):
        raise NotInvertibleError(f"the distribution {q!r} is a zero divisor")
    x = linalg.solve(A, b)
    return Dist(q.semiring, dict(zip(outcomes, x)))  # type: ignore


def inverse(p: SimpDist) -> SimpDist:
    """The inverse of p in its monoid, when it has one."""
    semiring = p.semiring
    target = p.target
    if semiring.zero_sum_free and semiring.integral:
        if not p.is_deterministic:
            raise NotInvertibleError("over a zero-sum-free integral semiring only deterministic distributions invert")
        return SimpDist(
            p.space,
            target,
            semiring,
            {s: D.delta(target.neg(q.delta_key), semiring) for s, q in p.dists.items()},
        )
    if not semiring.has_negation:
        raise UnsupportedError(f"inverses over the {semiring.name} semiring are not supported")
    dists = {s: _convolution_inverse(q, target, s[0]) for s, q in p.dists.items()}
    return require_valid(SimpDist(p.space, target, semiring, dists))


@dataclass
class WeakInvertibility:
    invertible: bool
    witness: Optional[Dist] = None

    def __bool__(self) -> bool:
        return self.invertible


def _rational_weakly_invertible(p: SimpDist, ctx: MonoidContext) -> WeakInvertibility:
    units = ctx.units
    lp = LinearProgram(len(units))
    for s, by_outcome in ctx.unit_table.items():
        for o, js in by_outcome.items():
            lp.add_equality({j: 1 for j in js}, p[s][o])
    lp.add_equality([1] * len(units), 1)
    result = lp_solve(lp)
    if not result.is_optimal:
        return WeakInvertibility(False)
    return WeakInvertibility(True, Dist(p.semiring, dict(zip(units, result.assignment))))  # type: ignore


def _boolean_weakly_invertible(p: SimpDist, ctx: MonoidContext) -> WeakInvertibility:
    chosen = [phi for phi in ctx.units if all(p[s][phi.value(ctx.space, *s)] for s in ctx.tops)]
    if not chosen:
        return WeakInvertibility(False)
    union = combine((deterministic_embed(phi, ctx.space, p.semiring), True) for phi in chosen)
    if union != p:
        return WeakInvertibility(False)
    return WeakInvertibility(True, Dist(p.semiring, {phi: True for phi in chosen}))


def is_weakly_invertible(p: SimpDist) -> WeakInvertibility:
    """Is p a mixture of units? The witness is the mixing distribution over the deterministic maps."""
    require_valid(p)
    if not (p.semiring.zero_sum_free and p.semiring.integral):
        raise UnsupportedError(f"weak invertibility over the {p.semiring.name} semiring is not supported")
    ctx = MonoidContext.of(p)
    if p.semiring.is_boolean:
        return _boolean_weakly_invertible(p, ctx)
    return _rational_weakly_invertible(p, ctx)


def _unit_program(p: SimpDist) -> LinearProgram:
    """b >= 0 over the units with the mixture of their deterministic distributions below p on top simplices."""
    if p.semiring != NONNEG_RATIONAL:
        raise UnsupportedError(f"invertible fractions are computed over the rational semiring, not {p.semiring.name}")
    require_valid(p)
    ctx = MonoidContext.of(p)
    lp = LinearProgram(len(ctx.units))
    for s, by_outcome in ctx.unit_table.items():
        for o, js in by_outcome.items():
            if js:
                lp.add_upper_bound({j: 1 for j in js}, p[s][o])
    return lp


def invertible_fraction(p: SimpDist) -> Fraction:
    """IF(p): the largest total weight of units in a decomposition p = sum b(phi) delta^phi + rest."""
    lp = _unit_program(p)
    lp.maximize([1] * lp.num_vars)
    return lp_solve(lp).value  # type: ignore


def non_invertible_fraction(p: SimpDist) -> Fraction:
    return 1 - invertible_fraction(p)


def isupp_member(p: SimpDist, m: DetMap) -> bool:
    """Is delta^m in the invertible support of p? True when some decomposition gives it positive weight."""
    lp = _unit_program(p)
    units = MonoidContext.of(p).units
    if m not in units:
        raise UsageError(f"{m} is not a map into {p.target} on this space")
    lp.maximize({units.index(m): 1})
    return lp_solve(lp).value > 0  # type: ignore


def invertible_support(p: SimpDist) -> List[DetMap]:
    return [m for m in MonoidContext.of(p).units if isupp_member(p, m)]


def is_strongly_noninvertible(p: SimpDist) -> bool:
    return invertible_fraction(p) == 0
