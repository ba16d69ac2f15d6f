"""The distribution monad on finite sets.

A `Dist` is a finitely supported weight function, valued in a `Semiring`, whose weights sum to
the semiring one. Outcome keys are opaque hashable values with a total order; the weights are
kept sorted by key so that equality, hashing and serialisation are canonical.
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Tuple

from simplicial_contextuality.exceptions import NormalizationError, PreconditionError, UnsupportedError, UsageError
from simplicial_contextuality.semiring import RawScalar, Semiring, support_map

log = logging.getLogger(__name__)

Key = Hashable


def sorted_keys(keys: Iterable[Key]) -> List[Key]:
    keys = list(keys)
    try:
        return sorted(keys)
    except TypeError:
        return sorted(keys, key=repr)


@dataclass(frozen=True, eq=False)
class Dist:
    """A normalized, finitely supported distribution over outcome keys."""

    semiring: Semiring
    weights: Mapping[Key, Any]

    def __post_init__(self):
        coerced: Dict[Key, RawScalar] = {}
        for key in sorted_keys(self.weights):
            value = self.semiring.coerce(self.weights[key])
            if not self.semiring.is_zero(value):
                coerced[key] = value
        object.__setattr__(self, 'weights', coerced)
        total = self.semiring.sum(coerced.values())
        if total != self.semiring.one:
            raise NormalizationError(f"weights sum to {self.semiring.format(total)}, not 1: {self!r}")

    @property
    def support(self) -> Tuple[Key, ...]:
        return tuple(self.weights)

    def weight(self, key: Key) -> RawScalar:
        return self.weights.get(key, self.semiring.zero)

    def __getitem__(self, key: Key) -> RawScalar:
        return self.weight(key)

    def items(self) -> Iterator[Tuple[Key, RawScalar]]:
        return iter(self.weights.items())

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def is_delta(self) -> bool:
        return len(self.weights) == 1

    @property
    def delta_key(self) -> Optional[Key]:
        return next(iter(self.weights)) if self.is_delta else None

    def canonical(self) -> Tuple:
        return (self.semiring.name, tuple((k, self.semiring.format(v)) for k, v in self.weights.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dist):
            return NotImplemented
        return self.semiring == other.semiring and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.semiring.name, tuple(self.weights.items())))

    def __lt__(self, other: 'Dist') -> bool:
        return self.canonical() < other.canonical()

    def __repr__(self) -> str:
        body = ', '.join(f"{k!r}: {self.semiring.format(v)}" for k, v in self.weights.items())
        return f"Dist[{self.semiring.name}]({{{body}}})"

    def change_semiring(self, semiring: Semiring) -> 'Dist':
        """Push the weights along the rational -> Boolean support homomorphism."""
        if semiring == self.semiring:
            return self
        if not semiring.is_boolean or self.semiring.is_boolean:
            raise UnsupportedError(f"no semiring homomorphism from {self.semiring.name} to {semiring.name}")
        return Dist(semiring, {k: support_map(v) for k, v in self.weights.items()})


def delta(x: Key, semiring: Semiring) -> Dist:
    """The delta distribution at `x`."""
    return Dist(semiring, {x: semiring.one})


def uniform(keys: Iterable[Key], semiring: Semiring) -> Dist:
    keys = list(keys)
    if semiring.is_boolean:
        return Dist(semiring, {k: True for k in keys})
    return Dist(semiring, {k: semiring.div(semiring.one, semiring.coerce(len(keys))) for k in keys})


def _accumulate(semiring: Semiring, pairs: Iterable[Tuple[Key, RawScalar]]) -> Dict[Key, RawScalar]:
    totals: Dict[Key, RawScalar] = {}
    for key, value in pairs:
        totals[key] = semiring.add(totals[key], value) if key in totals else value
    return totals


def pushforward(f: Callable[[Key], Key], p: Dist) -> Dist:
    """Sum the weights of `p` over the fibres of `f`."""
    return Dist(p.semiring, _accumulate(p.semiring, ((f(x), w) for x, w in p.items())))


def flatten(P: Dist) -> Dist:
    """Monad multiplication: mix the inner distributions of `P` by the outer weights."""
    semiring = P.semiring
    pairs = []
    for inner, outer_weight in P.items():
        if not isinstance(inner, Dist) or inner.semiring != semiring:
            raise UsageError(f"flatten expects inner distributions over the {semiring.name} semiring, got {inner!r}")
        pairs.extend((x, semiring.mul(outer_weight, w)) for x, w in inner.items())
    return Dist(semiring, _accumulate(semiring, pairs))


def mix(pairs: Iterable[Tuple[Dist, Any]]) -> Dist:
    """Finite convex combination sum_i a_i p_i, the weights a_i summing to one."""
    pairs = list(pairs)
    if not pairs:
        raise UsageError("mix needs at least one distribution")
    semiring = pairs[0][0].semiring
    outer = _accumulate(semiring, ((p, semiring.coerce(a)) for p, a in pairs))
    return flatten(Dist(semiring, outer))


def tensor(p: Dist, q: Dist) -> Dist:
    """Product distribution on pairs, (p.q)(x, y) = p(x) q(y)."""
    if p.semiring != q.semiring:
        raise UsageError(f"cannot tensor {p.semiring.name} and {q.semiring.name} distributions")
    semiring = p.semiring
    return Dist(semiring, {(x, y): semiring.mul(a, b) for x, a in p.items() for y, b in q.items()})


def convolve(q: Dist, p: Dist, compose: Callable[[Key, Key], Optional[Key]]) -> Dist:
    """Convolution (q * p)(f) = sum over g2 o g1 = f of q(g2) p(g1).

    `compose(g2, g1)` returns the composite, or None when the pair is not composable. A result
    that is not normalized (possible when `compose` is partial) raises `NormalizationError`.
    """
    if p.semiring != q.semiring:
        raise UsageError(f"cannot convolve {q.semiring.name} and {p.semiring.name} distributions")
    semiring = p.semiring
    pairs = []
    for g2, b in q.items():
        for g1, a in p.items():
            f = compose(g2, g1)
            if f is not None:
                pairs.append((f, semiring.mul(b, a)))
    return Dist(semiring, _accumulate(semiring, pairs))


def glue_pullback(p1: Dist, p2: Dist, f1: Callable[[Key], Key], f2: Callable[[Key], Key]) -> Dist:
    """Glue two distributions with equal images into a distribution on the pullback.

    The result lives on pairs (x1, x2) with f1(x1) = f2(x2), with weight
    p1(x1) p2(x2) / q(f1(x1)) where q is the common pushforward; its marginals are p1 and p2.
    """
    if p1.semiring != p2.semiring:
        raise UsageError(f"cannot glue {p1.semiring.name} and {p2.semiring.name} distributions")
    semiring = p1.semiring
    if not (semiring.is_division and semiring.zero_sum_free):
        raise UnsupportedError(f"gluing needs a zero-sum-free division semiring, not {semiring.name}")
    image = pushforward(f1, p1)
    if image != pushforward(f2, p2):
        raise PreconditionError(f"incompatible marginals: {image!r} != {pushforward(f2, p2)!r}")

    fibres: Dict[Key, List[Tuple[Key, RawScalar]]] = {}
    for x2, b in p2.items():
        fibres.setdefault(f2(x2), []).append((x2, b))
    weights = {}
    for x1, a in p1.items():
        y = f1(x1)
        for x2, b in fibres.get(y, []):
            weights[(x1, x2)] = semiring.div(semiring.mul(a, b), image[y])
    return Dist(semiring, weights)
