"""Empirical models on measurement scenarios with contexts of at most two measurements, and their realization
as simplicial distributions.

Two realizations are offered:

 - ``cone``: the measurement cone (see `bipartite_cone`); each measurement is an edge whose label is its
   outcome and each two-element context a triangle whose box is the context distribution itself.
   Needs every two-element context to be ordered first -> second with no measurement on both sides.
 - ``decalage``: the Delta_{Z_d}-valued distribution on the ordered measurement complex, converted to a
   nerve-valued distribution on its cone by the decalage isomorphism (a_0, a_1) -> (a_0, a_1 - a_0).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, List, Mapping, Tuple

from simplicial_contextuality import dist as D
from simplicial_contextuality.dist import Dist
from simplicial_contextuality.distribution.simp_dist import SimpDist, from_top, require_valid
from simplicial_contextuality.exceptions import PreconditionError, UnsupportedError, UsageError
from simplicial_contextuality.semiring import Semiring
from simplicial_contextuality.simplicial.sset import Edge, SSet2, Target
from simplicial_contextuality.simplicial.standard import (
    CONE_VERTEX,
    bipartite_cone,
    cone,
    context_triangle,
)

log = logging.getLogger(__name__)

Context = Tuple[str, ...]


class Layout(Enum):
    AUTO = 'auto'
    CONE = 'cone'
    DECALAGE = 'decalage'


def context_order(contexts: Tuple[Context, ...]) -> Tuple[str, ...]:
    """Measurements in an order every context agrees with, ties broken by first appearance.

    Measurements on a cycle of contexts keep their order of first appearance.
    """
    seen: Dict[str, None] = {}
    for c in contexts:
        seen.update(dict.fromkeys(c))
    before: Dict[str, set] = {m: set() for m in seen}
    for c in contexts:
        for i, m in enumerate(c):
            before[m].update(c[:i])
    order: List[str] = []
    remaining = list(seen)
    while remaining:
        ready = [m for m in remaining if not (before[m] - set(order))]
        m = ready[0] if ready else remaining[0]
        order.append(m)
        remaining.remove(m)
    return tuple(order)


@dataclass(frozen=True)
class EmpiricalModel:
    """Context distributions over assignments; an assignment is a tuple of outcomes in context order."""

    d: int
    semiring: Semiring
    contexts: Tuple[Context, ...]
    dists: Mapping[Context, Dist]
    measurements: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'contexts', tuple(tuple(c) for c in self.contexts))
        if not self.measurements:
            object.__setattr__(self, 'measurements', context_order(self.contexts))

    @property
    def order(self) -> Dict[str, int]:
        return {m: i for i, m in enumerate(self.measurements)}

    def ordered(self, context: Context) -> Context:
        order = self.order
        return tuple(sorted(context, key=order.__getitem__))

    def marginal(self, context: Context, onto: Context) -> Dist:
        """The distribution of `context` restricted to the measurements `onto`, in that order."""
        positions = [context.index(m) for m in onto]
        return D.pushforward(lambda s: tuple(s[i] for i in positions), self.dists[context])

    def validate(self) -> List[str]:
        errors = []
        if self.d < 2:
            errors.append(f"outcome modulus d = {self.d}, expected d >= 2")
        known = set(self.measurements)
        seen = set()
        for c in self.contexts:
            if not c or len(set(c)) != len(c):
                errors.append(f"context {list(c)} is empty or repeats a measurement")
            if frozenset(c) in seen:
                errors.append(f"context {list(c)} is listed twice")
            seen.add(frozenset(c))
            errors.extend(f"context {list(c)} names unknown measurement {m!r}" for m in c if m not in known)
            if c not in self.dists:
                errors.append(f"no distribution for context {list(c)}")
                continue
            p = self.dists[c]
            if p.semiring != self.semiring:
                errors.append(f"context {list(c)} carries a {p.semiring.name} distribution")
            for s in p.support:
                if len(s) != len(c) or not all(0 <= a < self.d for a in s):
                    errors.append(f"context {list(c)} has assignment {s!r} outside Z_{self.d}^{len(c)}")
        if errors:
            return errors

        for c1, c2 in combinations(self.contexts, 2):
            common = self.ordered(tuple(m for m in c1 if m in c2))
            if not common:
                continue
            m1, m2 = self.marginal(c1, common), self.marginal(c2, common)
            if m1 != m2:
                errors.append(f"contexts {list(c1)} and {list(c2)} disagree on {list(common)}: {m1!r} != {m2!r}")
        return errors

    def require_valid(self) -> 'EmpiricalModel':
        if any(len(c) > 2 for c in self.contexts):
            raise UnsupportedError("contexts of more than two measurements are not supported")
        errors = self.validate()
        if errors:
            raise PreconditionError("incompatible empirical model: " + '; '.join(errors))
        return self

    def pairs(self) -> List[Tuple[str, str]]:
        """The two-element contexts in measurement order, sorted."""
        order = self.order
        pairs = [(a, b) for a, b in (self.ordered(c) for c in self.contexts if len(c) == 2)]
        return sorted(pairs, key=lambda c: (order[c[0]], order[c[1]]))

    def used_measurements(self) -> List[str]:
        used = {m for c in self.contexts for m in c}
        return [m for m in self.measurements if m in used]

    def vertex_dist(self, m: str) -> Dist:
        for c in self.contexts:
            if m in c:
                return self.marginal(c, (m,))
        raise UsageError(f"measurement {m!r} is in no context")


def is_bipartite(e: EmpiricalModel) -> bool:
    pairs = e.pairs()
    return not ({m for m, _ in pairs} & {n for _, n in pairs})


def realize_delta(e: EmpiricalModel) -> SimpDist:
    """The Delta_{Z_d}-valued distribution on the ordered measurement complex."""
    e.require_valid()
    target = Target.delta(e.d)
    vertices = tuple(e.used_measurements())
    pairs = e.pairs()
    edges = tuple(Edge(context_triangle(m, n), m, n) for m, n in pairs)
    space = SSet2(vertices, edges)

    dists = {(0, m): e.vertex_dist(m) for m in vertices}
    for (m, n), edge in zip(pairs, edges):
        context = next(c for c in e.contexts if set(c) == {m, n})
        dists[(1, edge.id)] = e.marginal(context, (m, n))
    return require_valid(SimpDist(space, target, e.semiring, dists))


def realize_cone(e: EmpiricalModel) -> SimpDist:
    """The nerve-valued distribution on the measurement cone; the box of triangle `m,n` is p_{m,n}."""
    e.require_valid()
    if not is_bipartite(e):
        raise UnsupportedError("the cone layout needs contexts ordered first -> second with disjoint sides")
    pairs = e.pairs()
    second = {n for _, n in pairs}
    firsts = [m for m in e.used_measurements() if m not in second]
    seconds = [m for m in e.used_measurements() if m in second]
    space = bipartite_cone(firsts, seconds, pairs)
    target = Target.nerve(e.d)

    top = {}
    for m, n in pairs:
        context = next(c for c in e.contexts if set(c) == {m, n})
        top[(2, context_triangle(m, n))] = e.marginal(context, (m, n))
    paired = {m for pair in pairs for m in pair}
    for m in firsts:
        if m not in paired:
            top[(1, m)] = e.vertex_dist(m)
    return require_valid(from_top(space, target, e.semiring, top))


def realize(e: EmpiricalModel, layout: Layout = Layout.AUTO) -> SimpDist:
    """Realize a compatible empirical model as a nerve-valued simplicial distribution."""
    layout = Layout(layout)
    if layout is Layout.AUTO:
        e.require_valid()
        layout = Layout.CONE if is_bipartite(e) else Layout.DECALAGE
        log.debug('realizing with the %s layout', layout.value)
    if layout is Layout.CONE:
        return realize_cone(e)
    return decalage_convert(realize_delta(e))


def decalage_convert(p: SimpDist) -> SimpDist:
    """Send a Delta_{Z_d}-valued distribution on a 1-dimensional X to a nerve-valued one on cone(X)."""
    if p.target.is_nerve:
        raise UsageError("decalage converts Delta_{Z_d}-valued distributions")
    if p.space.triangles:
        raise UnsupportedError("decalage of a 2-dimensional space would need 3-simplices")
    d = p.target.d
    C = cone(p.space)
    dists = {(1, f"{CONE_VERTEX}.{v}"): q for v, q in p.vertex_dists.items()}
    for eid, q in p.edge_dists.items():
        dists[(1, eid)] = D.pushforward(lambda a: ((a[1] - a[0]) % d,), q)
        dists[(2, f"{CONE_VERTEX}.{eid}")] = D.pushforward(lambda a: (a[0], (a[1] - a[0]) % d), q)
    return require_valid(SimpDist(C, Target.nerve(d), p.semiring, dists))


def cone_base(C: SSet2) -> SSet2:
    """Recover X from cone(X)."""
    if CONE_VERTEX not in C.vertices:
        raise UsageError("not a cone: no cone vertex")
    return SSet2(
        tuple(v for v in C.vertices if v != CONE_VERTEX),
        tuple(e for e in C.edges if e.src != CONE_VERTEX),
    )


def decalage_invert(q: SimpDist) -> SimpDist:
    """Inverse of `decalage_convert`: triangle outcome (a, b) goes back to the edge outcome (a, a + b)."""
    if not q.target.is_nerve:
        raise UsageError("decalage_invert expects a nerve-valued distribution on a cone")
    d = q.target.d
    X = cone_base(q.space)
    if cone(X) != q.space:
        raise UsageError("the space is not the cone of a 1-dimensional space")
    dists = {(0, v): q.dist(1, f"{CONE_VERTEX}.{v}") for v in X.vertices}
    for e in X.edges:
        dists[(1, e.id)] = D.pushforward(lambda a: (a[0], (a[0] + a[1]) % d), q.dist(2, f"{CONE_VERTEX}.{e.id}"))
    return require_valid(SimpDist(X, Target.delta(d), q.semiring, dists))
