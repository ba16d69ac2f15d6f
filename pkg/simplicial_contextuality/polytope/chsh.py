"""CHSH correlators and inequalities for distributions on the CHSH cone."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Tuple

from simplicial_contextuality.distribution.simp_dist import SimpDist
from simplicial_contextuality.exceptions import UsageError
from simplicial_contextuality.semiring import NONNEG_RATIONAL
from simplicial_contextuality.simplicial.standard import CHSH_CONTEXTS, StandardSpace, build_standard, context_triangle

BOUND = Fraction(2)

# every sign pattern with an odd number of minus signs
SIGN_PATTERNS: List[Tuple[int, ...]] = [s for s in product((1, -1), repeat=4) if s.count(-1) % 2 == 1]


@dataclass
class ChshInequality:
    signs: Tuple[int, ...]
    value: Fraction

    @property
    def slack(self) -> Fraction:
        return BOUND - abs(self.value)

    @property
    def satisfied(self) -> bool:
        return self.slack >= 0

    @property
    def label(self) -> str:
        return ' '.join(f"{'+' if s > 0 else '-'}<{x}{y}>" for s, (x, y) in zip(self.signs, CHSH_CONTEXTS))


@dataclass
class ChshReport:
    correlators: Dict[str, Fraction]
    inequalities: List[ChshInequality]

    @property
    def all_satisfied(self) -> bool:
        return all(i.satisfied for i in self.inequalities)

    @property
    def max_violation(self) -> Fraction:
        return max(abs(i.value) for i in self.inequalities)


def correlator(p: SimpDist, triangle: str) -> Fraction:
    """<x y> = p^00 + p^11 - p^01 - p^10."""
    q = p.dist(2, triangle)
    return sum((Fraction(w) * (1 if a == b else -1) for (a, b), w in q.items()), Fraction(0))


def chsh_check(p: SimpDist) -> ChshReport:
    if p.space != build_standard(StandardSpace.CHSH_CONE) or not p.target.is_nerve or p.target.d != 2:
        raise UsageError("the CHSH check needs a nerve distribution over Z_2 on the CHSH cone")
    if p.semiring != NONNEG_RATIONAL:
        raise UsageError(f"the CHSH check needs rational weights, not {p.semiring.name}")
    keys = [context_triangle(x, y) for x, y in CHSH_CONTEXTS]
    E = [correlator(p, k) for k in keys]
    inequalities = [ChshInequality(s, sum((a * e for a, e in zip(s, E)), Fraction(0))) for s in SIGN_PATTERNS]
    return ChshReport(dict(zip(keys, E)), inequalities)
