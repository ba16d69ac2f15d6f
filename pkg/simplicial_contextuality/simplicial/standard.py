"""The standard spaces used throughout, and constructions on 2-truncated simplicial sets.

Constructions:
 - `bipartite_cone`: the measurement cone, one triangle per two-element context.
 - `cone`: the join of a point with a 1-dimensional space, used for decalage.
 - `prism`: X x Delta[1] for 1-dimensional X, used for homotopies.
 - `disjoint_union` and `pushout`.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

from simplicial_contextuality.exceptions import PreconditionError, UnsupportedError, UsageError
from simplicial_contextuality.simplicial.sset import Edge, SimplicialMap, SSet2, Triangle

log = logging.getLogger(__name__)

CONE_VERTEX = 'c'


class StandardSpace(Enum):
    DELTA2 = 'Delta2'
    CIRCLE = 'Circle'
    GLUED_TRIANGLE = 'GluedTriangle'
    CHSH_CONE = 'ChshCone'
    CHSH_BOUNDARY = 'ChshBoundary'
    TWO_EDGE_LOOP = 'TwoEdgeLoop'

    @classmethod
    def lookup(cls, name: Union[str, 'StandardSpace']) -> 'StandardSpace':
        if isinstance(name, StandardSpace):
            return name
        for member in cls:
            if name in (member.value, member.name) or name.lower() == member.value.lower():
                return member
        raise UsageError(f"unknown standard space {name!r}, expected one of {[m.value for m in cls]}")


CHSH_ALICE = ('x0', 'x1')
CHSH_BOB = ('y0', 'y1')
CHSH_CONTEXTS = tuple((x, y) for x in CHSH_ALICE for y in CHSH_BOB)


def outer_vertex(measurement: str) -> str:
    return f"o_{measurement}"


def context_edge(first: str, second: str) -> str:
    return f"{first}+{second}"


def context_triangle(first: str, second: str) -> str:
    return f"{first},{second}"


def bipartite_cone(first: Sequence[str], second: Sequence[str], contexts: Sequence[Tuple[str, str]]) -> SSet2:
    """Cone over a bipartite measurement graph.

    Each measurement m becomes an edge: `o_m -> c` for measurements in `first` and `c -> o_m` for those in
    `second`, so an edge label is the outcome of that measurement. A context (m, n) becomes the triangle
    `m,n` with d2 = m, d0 = n and d1 the boundary edge `m+n` carrying the sum of the two outcomes.
    """
    overlap = set(first) & set(second)
    if overlap:
        raise UsageError(f"measurements {sorted(overlap)} occur both first and second in a context")
    vertices = [CONE_VERTEX] + [outer_vertex(m) for m in list(first) + list(second)]
    edges = [Edge(m, outer_vertex(m), CONE_VERTEX) for m in first]
    edges += [Edge(n, CONE_VERTEX, outer_vertex(n)) for n in second]
    triangles = []
    for m, n in contexts:
        edges.append(Edge(context_edge(m, n), outer_vertex(m), outer_vertex(n)))
        triangles.append(Triangle(context_triangle(m, n), d0=n, d1=context_edge(m, n), d2=m))
    return SSet2(tuple(vertices), tuple(edges), tuple(triangles))


def _chsh_boundary() -> SSet2:
    vertices = tuple(outer_vertex(m) for m in CHSH_ALICE + CHSH_BOB)
    edges = tuple(Edge(context_edge(x, y), outer_vertex(x), outer_vertex(y)) for x, y in CHSH_CONTEXTS)
    return SSet2(vertices, edges)


@lru_cache(maxsize=None)
def build_standard(name: Union[str, StandardSpace]) -> SSet2:
    """Build one of the named example spaces."""
    space = StandardSpace.lookup(name)
    if space is StandardSpace.DELTA2:
        return SSet2(
            ('v0', 'v1', 'v2'),
            (Edge('x', 'v0', 'v1'), Edge('y', 'v1', 'v2'), Edge('z', 'v0', 'v2')),
            (Triangle('t', d0='y', d1='z', d2='x'),),
        )
    if space is StandardSpace.CIRCLE:
        return SSet2(('v',), (Edge('e', 'v', 'v'),))
    if space is StandardSpace.GLUED_TRIANGLE:
        # d1 and d2 are the same edge x, so the d0 face y is a loop
        return SSet2(
            ('c', 'v'),
            (Edge('x', 'c', 'v'), Edge('y', 'v', 'v')),
            (Triangle('t', d0='y', d1='x', d2='x'),),
        )
    if space is StandardSpace.CHSH_CONE:
        return bipartite_cone(CHSH_ALICE, CHSH_BOB, CHSH_CONTEXTS)
    if space is StandardSpace.CHSH_BOUNDARY:
        return _chsh_boundary()
    return SSet2(('a', 'b'), (Edge('x', 'a', 'b'), Edge('y', 'a', 'b')))


def inclusion(domain: SSet2, codomain: SSet2) -> SimplicialMap:
    """The map sending every simplex to the simplex of the same id."""
    return SimplicialMap(
        domain,
        codomain,
        {v: v for v in domain.vertices},
        {e.id: e.id for e in domain.edges},
        {t.id: t.id for t in domain.triangles},
    )


def chsh_boundary_inclusion() -> SimplicialMap:
    """The boundary square of the CHSH cone."""
    return inclusion(build_standard(StandardSpace.CHSH_BOUNDARY), build_standard(StandardSpace.CHSH_CONE))


def glued_triangle_circle_inclusion() -> SimplicialMap:
    """The circle as the d0-face loop of the glued triangle."""
    circle = build_standard(StandardSpace.CIRCLE)
    return SimplicialMap(circle, build_standard(StandardSpace.GLUED_TRIANGLE), {'v': 'v'}, {'e': 'y'})


def _require_1d(X: SSet2, what: str) -> None:
    if X.triangles:
        raise UnsupportedError(f"{what} needs a space without triangles, got {len(X.triangles)}")


def cone(X: SSet2) -> SSet2:
    """The join of a point with a 1-dimensional X, cone vertex first.

    Vertex v gives the edge `c.v` (c -> v); edge e gives the triangle `c.e` with d2 = c.src, d1 = c.dst, d0 = e.
    """
    _require_1d(X, 'cone')
    if CONE_VERTEX in X.vertices:
        raise UsageError(f"vertex id {CONE_VERTEX!r} is reserved for the cone point")
    edges = [Edge(f"{CONE_VERTEX}.{v}", CONE_VERTEX, v) for v in X.vertices] + list(X.edges)
    triangles = [
        Triangle(f"{CONE_VERTEX}.{e.id}", d0=e.id, d1=f"{CONE_VERTEX}.{e.dst}", d2=f"{CONE_VERTEX}.{e.src}")
        for e in X.edges
    ]
    return SSet2((CONE_VERTEX,) + X.vertices, tuple(edges), tuple(triangles))


def disjoint_union(X1: SSet2, X2: SSet2) -> Tuple[SSet2, SimplicialMap, SimplicialMap]:
    """The relabelled union of two spaces, with its two injections."""
    parts = []
    for prefix, X in (('0/', X1), ('1/', X2)):
        p = prefix.__add__
        parts.append(
            (
                tuple(p(v) for v in X.vertices),
                tuple(Edge(p(e.id), p(e.src), p(e.dst)) for e in X.edges),
                tuple(Triangle(p(t.id), p(t.d0), p(t.d1), p(t.d2)) for t in X.triangles),
            )
        )
    union = SSet2(*(a + b for a, b in zip(*parts)))

    def injection(prefix: str, X: SSet2) -> SimplicialMap:
        return SimplicialMap(
            X,
            union,
            {v: prefix + v for v in X.vertices},
            {e.id: prefix + e.id for e in X.edges},
            {t.id: prefix + t.id for t in X.triangles},
        )

    return union, injection('0/', X1), injection('1/', X2)


@dataclass(frozen=True)
class Prism:
    """X x Delta[1] with its two ends.

    `bottom` is the inclusion X x {0} and `top` the inclusion X x {1}; `triangle_pairs` maps each edge of X
    to its (lower, upper) triangles.
    """

    space: SSet2
    base: SSet2
    bottom: SimplicialMap
    top: SimplicialMap
    triangle_pairs: Dict[str, Tuple[str, str]]

    def vertical(self, v: str) -> str:
        return f"{v}:I"


def prism(X: SSet2) -> Prism:
    """Triangulate X x Delta[1] for a 1-dimensional X, two triangles per edge."""
    _require_1d(X, 'prism')
    vertices: List[str] = [f"{v}@{i}" for i in (0, 1) for v in X.vertices]
    edges: List[Edge] = [Edge(f"{e.id}@{i}", f"{e.src}@{i}", f"{e.dst}@{i}") for i in (0, 1) for e in X.edges]
    edges += [Edge(f"{v}:I", f"{v}@0", f"{v}@1") for v in X.vertices]
    edges += [Edge(f"{e.id}:diag", f"{e.src}@0", f"{e.dst}@1") for e in X.edges]
    triangles: List[Triangle] = []
    pairs = {}
    for e in X.edges:
        lower = Triangle(f"{e.id}:lower", d0=f"{e.dst}:I", d1=f"{e.id}:diag", d2=f"{e.id}@0")
        upper = Triangle(f"{e.id}:upper", d0=f"{e.id}@1", d1=f"{e.id}:diag", d2=f"{e.src}:I")
        triangles += [lower, upper]
        pairs[e.id] = (lower.id, upper.id)
    space = SSet2(tuple(vertices), tuple(edges), tuple(triangles))

    def end(i: int) -> SimplicialMap:
        return SimplicialMap(X, space, {v: f"{v}@{i}" for v in X.vertices}, {e.id: f"{e.id}@{i}" for e in X.edges})

    log.debug('prism over %s vertices, %s edges', len(X.vertices), len(X.edges))
    return Prism(space, X, end(0), end(1), pairs)


def _injective(f: SimplicialMap) -> bool:
    return all(len(set(m.values())) == len(m) for m in (f.vertex_map, f.edge_map, f.triangle_map))


def pushout(f1: SimplicialMap, f2: SimplicialMap) -> Tuple[SSet2, SimplicialMap, SimplicialMap]:
    """Glue X1 and X2 along the common subspace A included by f1: A -> X1 and f2: A -> X2.

    Simplices of X1 keep their ids. A simplex of X2 in the image of f2 is identified with its partner in X1;
    the others keep their ids unless X1 already uses the id, in which case they are prefixed with '2/'.
    """
    if f1.domain != f2.domain:
        raise UsageError("the two inclusions start from different spaces")
    for f in (f1, f2):
        errors = f.validate()
        if errors:
            raise PreconditionError("not a simplicial map: " + '; '.join(errors))
        if not _injective(f):
            raise PreconditionError("gluing needs injective inclusions of the shared subspace")
    X1, X2 = f1.codomain, f2.codomain
    A = f1.domain

    partners = [{f2.image(dim, a): f1.image(dim, a) for a in A.ids(dim)} for dim in (0, 1, 2)]
    rename: List[Dict[str, str]] = []
    for dim in (0, 1, 2):
        taken = set(X1.ids(dim))
        rename.append({s: partners[dim].get(s, f"2/{s}" if s in taken else s) for s in X2.ids(dim)})
    vertices, edges, triangles = rename

    def shared(dim: int, s: str) -> bool:
        return s in partners[dim]

    space = SSet2(
        X1.vertices + tuple(vertices[v] for v in X2.vertices if not shared(0, v)),
        X1.edges
        + tuple(Edge(edges[e.id], vertices[e.src], vertices[e.dst]) for e in X2.edges if not shared(1, e.id)),
        X1.triangles
        + tuple(
            Triangle(triangles[t.id], edges[t.d0], edges[t.d1], edges[t.d2])
            for t in X2.triangles
            if not shared(2, t.id)
        ),
    )
    g2 = SimplicialMap(X2, space, vertices, edges, triangles)
    log.debug('pushout with %s vertices, %s edges, %s triangles', *(len(space.ids(i)) for i in (0, 1, 2)))
    return space, inclusion(X1, space), g2
