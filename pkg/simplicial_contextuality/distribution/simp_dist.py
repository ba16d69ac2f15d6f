"""Simplicial distributions p: X -> D_R(Y) for Y = NZ_d or Delta_{Z_d}.

A `SimpDist` stores one `Dist` per nondegenerate simplex of X that the target carries outcomes for
(edges and triangles for the nerve, every simplex for Delta_{Z_d}), keyed by ``(dimension, id)``.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from simplicial_contextuality import dist as D
from simplicial_contextuality.dist import Dist
from simplicial_contextuality.exceptions import InvalidModelError, PreconditionError, UsageError
from simplicial_contextuality.semiring import Semiring
from simplicial_contextuality.simplicial.det_maps import enumerate_det_maps
from simplicial_contextuality.simplicial.sset import DetMap, Simplex, SimplicialMap, SSet2, Target

log = logging.getLogger(__name__)


def stored_simplices(space: SSet2, target: Target) -> List[Simplex]:
    return [s for s in space.simplices() if target.stores(s[0])]


def top_simplices(space: SSet2, target: Target) -> List[Simplex]:
    """Stored simplices that are not a face of any stored simplex; they determine all the others."""
    return [s for s in stored_simplices(space, target) if not space.cofaces(*s)]


@dataclass(frozen=True, eq=False)
class SimpDist:
    """A compatible family of distributions indexed by the simplices of `space`."""

    space: SSet2
    target: Target
    semiring: Semiring
    dists: Mapping[Simplex, Dist]

    def __post_init__(self):
        object.__setattr__(self, 'dists', {s: self.dists[s] for s in self.simplices if s in self.dists})

    @cached_property
    def simplices(self) -> List[Simplex]:
        return stored_simplices(self.space, self.target)

    def __getitem__(self, simplex: Simplex) -> Dist:
        return self.dists[simplex]

    def dist(self, dim: int, sid: str) -> Dist:
        return self.dists[(dim, sid)]

    @property
    def vertex_dists(self) -> Dict[str, Dist]:
        return {sid: p for (dim, sid), p in self.dists.items() if dim == 0}

    @property
    def edge_dists(self) -> Dict[str, Dist]:
        return {sid: p for (dim, sid), p in self.dists.items() if dim == 1}

    @property
    def tri_dists(self) -> Dict[str, Dist]:
        return {sid: p for (dim, sid), p in self.dists.items() if dim == 2}

    def context(self) -> Tuple:
        return (self.space, self.target, self.semiring)

    def canonical(self) -> Tuple:
        return (
            str(self.target),
            self.semiring.name,
            tuple((s, self.dists[s].canonical()) for s in self.simplices if s in self.dists),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpDist):
            return NotImplemented
        return self.context() == other.context() and self.dists == other.dists

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __lt__(self, other: 'SimpDist') -> bool:
        return self.canonical() < other.canonical()

    def __repr__(self) -> str:
        return f"SimpDist[{self.target}, {self.semiring.name}]({len(self.dists)} simplices)"

    @property
    def is_deterministic(self) -> bool:
        return all(p.is_delta for p in self.dists.values())


def validate(p: SimpDist) -> List[str]:
    """Check that every stored distribution is present, well-typed and agrees with its faces."""
    errors = []
    target = p.target
    for dim, sid in p.simplices:
        if (dim, sid) not in p.dists:
            errors.append(f"no distribution on dimension {dim} simplex {sid!r}")
            continue
        q = p.dists[(dim, sid)]
        if q.semiring != p.semiring:
            errors.append(f"simplex {sid!r} carries a {q.semiring.name} distribution, expected {p.semiring.name}")
        for outcome in q.support:
            if (
                not isinstance(outcome, tuple)
                or len(outcome) != target.width(dim)
                or not all(isinstance(a, int) and 0 <= a < target.d for a in outcome)
            ):
                errors.append(f"simplex {sid!r} has outcome {outcome!r} outside {target} in dimension {dim}")
    if errors:
        return errors

    kinds = {1: 'edge', 2: 'triangle'}
    for dim, sid in p.simplices:
        if dim == 0:
            continue
        q = p.dists[(dim, sid)]
        for i in range(dim + 1):
            if not target.stores(dim - 1):
                continue
            face = p.space.face(dim, sid, i)
            marginal = D.pushforward(lambda o: target.face(i, o), q)
            if marginal != p.dists[(dim - 1, face)]:
                errors.append(
                    f"{kinds[dim]} {sid!r}: d{i}-marginal {marginal!r} disagrees with {p.dists[(dim - 1, face)]!r}"
                    f" on {face!r}"
                )
    return errors


def require_valid(p: SimpDist) -> SimpDist:
    errors = validate(p)
    if errors:
        raise InvalidModelError(errors, 'simplicial distribution')
    return p


def from_top(space: SSet2, target: Target, semiring: Semiring, top: Mapping[Simplex, Dist]) -> SimpDist:
    """Fill in lower simplices by taking marginals of a coface, highest dimension first.

    The result is not validated; callers that accept arbitrary input should call `require_valid`.
    """
    dists: Dict[Simplex, Dist] = dict(top)
    for dim in (1, 0):
        if not target.stores(dim):
            continue
        for sid in space.ids(dim):
            if (dim, sid) in dists:
                continue
            for (coface, i) in space.cofaces(dim, sid):
                if coface in dists:
                    dists[(dim, sid)] = D.pushforward(lambda o, i=i: target.face(i, o), dists[coface])
                    break
            else:
                raise PreconditionError(f"no distribution given on or above dimension {dim} simplex {sid!r}")
    return SimpDist(space, target, semiring, dists)


def from_boxes(
    space: SSet2, target: Target, semiring: Semiring, boxes: Mapping[str, Sequence[Any]], validated: bool = True
) -> SimpDist:
    """Build a simplicial distribution from box entries on its top simplices.

    Each box lists the weights of the simplex's outcomes in sorted order, e.g. p^00, p^01, p^10, p^11
    for a nerve triangle over Z_2.
    """
    top = {}
    for dim, sid in top_simplices(space, target):
        if sid not in boxes:
            raise PreconditionError(f"no box given for top simplex {sid!r}")
        outcomes = target.outcomes(dim)
        entries = list(boxes[sid])
        if len(entries) != len(outcomes):
            raise UsageError(f"box for {sid!r} has {len(entries)} entries, expected {len(outcomes)}")
        top[(dim, sid)] = Dist(semiring, dict(zip(outcomes, entries)))
    p = from_top(space, target, semiring, top)
    return require_valid(p) if validated else p


def box(p: SimpDist, dim: int, sid: str) -> List[Any]:
    """The weights of one simplex in sorted outcome order."""
    q = p.dist(dim, sid)
    return [q[o] for o in p.target.outcomes(dim)]


def deterministic_embed(phi: DetMap, space: SSet2, semiring: Semiring) -> SimpDist:
    """delta^phi: the delta distribution at phi's value on every simplex."""
    target = phi.target
    return SimpDist(
        space,
        target,
        semiring,
        {(dim, sid): D.delta(phi.value(space, dim, sid), semiring) for dim, sid in stored_simplices(space, target)},
    )


def theta(d: Dist, space: SSet2) -> SimpDist:
    """Mix the deterministic distributions of the maps in `d` simplexwise by their weights."""
    maps: Sequence[DetMap] = d.support
    if not maps:
        raise UsageError("theta needs a distribution over at least one map")
    target = maps[0].target
    if any(phi.target != target for phi in maps):
        raise UsageError("theta needs maps into a single target")
    return SimpDist(
        space,
        target,
        d.semiring,
        {
            (dim, sid): D.pushforward(lambda phi: phi.value(space, dim, sid), d)
            for dim, sid in stored_simplices(space, target)
        },
    )


def in_support(p: SimpDist, phi: DetMap) -> bool:
    return all(not p.semiring.is_zero(q[phi.value(p.space, dim, sid)]) for (dim, sid), q in p.dists.items())


def support(p: SimpDist, maps: Optional[Iterable[DetMap]] = None) -> List[DetMap]:
    """The maps whose value carries nonzero weight on every stored simplex."""
    if maps is None:
        maps = enumerate_det_maps(p.space, p.target)
    return [phi for phi in maps if in_support(p, phi)]


def is_strongly_contextual(p: SimpDist) -> bool:
    return not support(p)


def restrict(p: SimpDist, f: SimplicialMap) -> SimpDist:
    """Pull p back along a simplicial map into its space."""
    errors = f.validate()
    if errors:
        raise PreconditionError("not a simplicial map: " + '; '.join(errors))
    if f.codomain != p.space:
        raise UsageError("the map does not land in the space of the distribution")
    return SimpDist(
        f.domain,
        p.target,
        p.semiring,
        {(dim, sid): p.dist(dim, f.image(dim, sid)) for dim, sid in stored_simplices(f.domain, p.target)},
    )


def _check_context(ps: Sequence[SimpDist]) -> None:
    context = ps[0].context()
    for q in ps[1:]:
        if q.context() != context:
            raise UsageError(f"simplicial distributions live in different contexts: {ps[0]!r} and {q!r}")


def mix(P: Dist) -> SimpDist:
    """The convex structure map: a distribution over simplicial distributions to their simplexwise mixture."""
    members: Sequence[SimpDist] = P.support
    _check_context(members)
    first = members[0]
    return SimpDist(
        first.space,
        first.target,
        first.semiring,
        {s: D.mix([(q[s], w) for q, w in P.items()]) for s in first.simplices},
    )


def combine(pairs: Iterable[Tuple[SimpDist, Any]]) -> SimpDist:
    """Finite convex combination sum_i a_i p_i of simplicial distributions."""
    pairs = list(pairs)
    if not pairs:
        raise UsageError("combine needs at least one simplicial distribution")
    semiring = pairs[0][0].semiring
    weights: Dict[SimpDist, Any] = {}
    for q, a in pairs:
        a = semiring.coerce(a)
        weights[q] = semiring.add(weights[q], a) if q in weights else a
    return mix(Dist(semiring, weights))


def change_semiring(p: SimpDist, semiring: Semiring) -> SimpDist:
    """Push every weight along the support homomorphism."""
    return SimpDist(p.space, p.target, semiring, {s: q.change_semiring(semiring) for s, q in p.dists.items()})

