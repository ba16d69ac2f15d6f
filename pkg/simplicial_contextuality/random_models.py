"""Seeded random models for property checks.

Rational models are random mixtures of vertices of the polytope of simplicial distributions, so they are
valid by construction and cover contextual as well as noncontextual points. Boolean models are their supports.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Sequence, Tuple

import numpy as np

from simplicial_contextuality.dist import Dist
from simplicial_contextuality.distribution.simp_dist import SimpDist, change_semiring, combine
from simplicial_contextuality.polytope.polytope import distribution_polytope
from simplicial_contextuality.polytope.vertices import vertex_points
from simplicial_contextuality.semiring import BOOLEAN, NONNEG_RATIONAL, Semiring
from simplicial_contextuality.simplicial.det_maps import enumerate_det_maps
from simplicial_contextuality.simplicial.sset import DetMap, SSet2, Target

log = logging.getLogger(__name__)

MAX_WEIGHT = 9


def random_weights(rng: np.random.Generator, n: int, zeros: bool = False) -> List[Fraction]:
    """n rational weights summing to one; with `zeros` some of them may vanish."""
    low = 0 if zeros else 1
    raw = [int(a) for a in rng.integers(low, MAX_WEIGHT + 1, size=n)]
    if not any(raw):
        raw[int(rng.integers(n))] = 1
    total = sum(raw)
    return [Fraction(a, total) for a in raw]


def random_dist(rng: np.random.Generator, keys: Sequence[Hashable], semiring: Semiring = NONNEG_RATIONAL) -> Dist:
    weights = random_weights(rng, len(keys), zeros=True)
    p = Dist(NONNEG_RATIONAL, dict(zip(keys, weights)))
    return p.change_semiring(semiring)


def vertices(space: SSet2, target: Target) -> List[SimpDist]:
    P = distribution_polytope(space, target)
    return [P.to_simp_dist(x) for x in vertex_points(space, target)]


def random_model(
    rng: np.random.Generator,
    space: SSet2,
    target: Target,
    semiring: Semiring = NONNEG_RATIONAL,
    max_terms: int = 3,
) -> SimpDist:
    """A mixture of between one and `max_terms` random vertices."""
    points = vertices(space, target)
    k = int(rng.integers(1, max_terms + 1))
    chosen = [points[int(i)] for i in rng.integers(len(points), size=k)]
    p = combine(zip(chosen, random_weights(rng, k)))
    return p if semiring == NONNEG_RATIONAL else change_semiring(p, semiring)


def random_det_map(rng: np.random.Generator, space: SSet2, target: Target) -> DetMap:
    maps = enumerate_det_maps(space, target)
    return maps[int(rng.integers(len(maps)))]


def random_compatible_pair(
    rng: np.random.Generator, size: int = 6, image_size: int = 3
) -> Tuple[Dist, Dist, Callable, Callable]:
    """Two rational distributions on range(size) with the same pushforward along two random maps into
    range(image_size)."""
    f1_table: Dict[int, int] = {x: int(rng.integers(image_size)) for x in range(size)}
    f2_table: Dict[int, int] = {x: int(rng.integers(image_size)) for x in range(size)}
    image = [y for y in range(image_size) if y in f1_table.values() and y in f2_table.values()]
    q = dict(zip(image, random_weights(rng, len(image))))

    def split(table: Dict[int, int]) -> Dist:
        weights = {}
        for y, w in q.items():
            fibre = [x for x, fx in table.items() if fx == y]
            weights.update({x: w * a for x, a in zip(fibre, random_weights(rng, len(fibre), zeros=True))})
        return Dist(NONNEG_RATIONAL, weights)

    return split(f1_table), split(f2_table), f1_table.__getitem__, f2_table.__getitem__


def random_corpus(
    rng: np.random.Generator, spaces: Sequence[SSet2], target: Target, size: int, boolean_share: float = 0.5
) -> List[SimpDist]:
    """`size` models spread over `spaces`, a `boolean_share` of them over the Boolean semiring."""
    models = []
    for i in range(size):
        space = spaces[i % len(spaces)]
        semiring = BOOLEAN if rng.random() < boolean_share else NONNEG_RATIONAL
        models.append(random_model(rng, space, target, semiring))
    log.debug('random corpus of %s models', len(models))
    return models
