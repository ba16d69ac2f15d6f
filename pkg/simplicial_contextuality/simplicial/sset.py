"""2-truncated simplicial sets, simplicial maps between them, and deterministic maps into NZ_d / Delta_{Z_d}.

Only nondegenerate generators up to dimension 2 are stored. Edge orientation convention:
``d1(e) = src`` and ``d0(e) = dst``; for a triangle the d1-face is the composite of the
d2-face followed by the d0-face, as in the nerve of a group.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Dict, Iterator, List, Mapping, Tuple

from simplicial_contextuality.exceptions import UsageError

Simplex = Tuple[int, str]
Outcome = Tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str

    def face(self, i: int) -> str:
        return (self.dst, self.src)[i]


@dataclass(frozen=True)
class Triangle:
    id: str
    d0: str
    d1: str
    d2: str

    def face(self, i: int) -> str:
        return (self.d0, self.d1, self.d2)[i]


@dataclass(frozen=True)
class SSet2:
    """Vertices, edges and triangles with their face incidences."""

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()
    triangles: Tuple[Triangle, ...] = ()

    @cached_property
    def edge_by_id(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def triangle_by_id(self) -> Dict[str, Triangle]:
        return {t.id: t for t in self.triangles}

    @property
    def dimension(self) -> int:
        if self.triangles:
            return 2
        return 1 if self.edges else 0

    def edge(self, eid: str) -> Edge:
        return self.edge_by_id[eid]

    def triangle(self, tid: str) -> Triangle:
        return self.triangle_by_id[tid]

    def ids(self, dim: int) -> Tuple[str, ...]:
        if dim == 0:
            return self.vertices
        if dim == 1:
            return tuple(e.id for e in self.edges)
        return tuple(t.id for t in self.triangles)

    def simplices(self) -> Iterator[Simplex]:
        for dim in (0, 1, 2):
            for sid in self.ids(dim):
                yield (dim, sid)

    def face(self, dim: int, sid: str, i: int) -> str:
        if dim == 1:
            return self.edge(sid).face(i)
        if dim == 2:
            return self.triangle(sid).face(i)
        raise UsageError("vertices have no faces")

    def triangle_vertices(self, tid: str) -> Tuple[str, str, str]:
        """The vertex tuple (v0, v1, v2) of a triangle."""
        t = self.triangle(tid)
        d2, d0 = self.edge(t.d2), self.edge(t.d0)
        return (d2.src, d2.dst, d0.dst)

    @cached_property
    def coface_table(self) -> Dict[Simplex, List[Tuple[Simplex, int]]]:
        """For each simplex, the (coface, face index) pairs one dimension up."""
        table: Dict[Simplex, List[Tuple[Simplex, int]]] = {s: [] for s in self.simplices()}
        for e in self.edges:
            for i in (0, 1):
                table.setdefault((0, e.face(i)), []).append(((1, e.id), i))
        for t in self.triangles:
            for i in (0, 1, 2):
                table.setdefault((1, t.face(i)), []).append(((2, t.id), i))
        return table

    def cofaces(self, dim: int, sid: str) -> List[Tuple[Simplex, int]]:
        return self.coface_table.get((dim, sid), [])


def validate(X: SSet2) -> List[str]:
    """Check ids and the simplicial identities; return the list of violations (empty when ok)."""
    errors = []
    for kind, ids in (('vertex', X.vertices), ('edge', X.ids(1)), ('triangle', X.ids(2))):
        seen = set()
        for sid in ids:
            if sid in seen:
                errors.append(f"duplicate {kind} id {sid!r}")
            seen.add(sid)

    vertices = set(X.vertices)
    for e in X.edges:
        for end in (e.src, e.dst):
            if end not in vertices:
                errors.append(f"edge {e.id!r} references unknown vertex {end!r}")

    edges = X.edge_by_id
    for t in X.triangles:
        missing = [f for f in (t.d0, t.d1, t.d2) if f not in edges]
        if missing:
            errors.extend(f"triangle {t.id!r} references unknown edge {f!r}" for f in missing)
            continue
        d0, d1, d2 = edges[t.d0], edges[t.d1], edges[t.d2]
        if d0.dst != d1.dst:
            errors.append(f"triangle {t.id!r} violates d0 d0 = d0 d1: {d0.dst!r} != {d1.dst!r}")
        if d2.dst != d0.src:
            errors.append(f"triangle {t.id!r} violates d0 d2 = d1 d0: {d2.dst!r} != {d0.src!r}")
        if d1.src != d2.src:
            errors.append(f"triangle {t.id!r} violates d1 d1 = d1 d2: {d1.src!r} != {d2.src!r}")
    return errors


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """A simplicial map between 2-truncated simplicial sets, given by id-maps in each dimension.

    Simplices are sent to nondegenerate simplices of the same dimension.
    """

    domain: SSet2
    codomain: SSet2
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str] = field(default_factory=dict)
    triangle_map: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def identity(cls, X: SSet2) -> 'SimplicialMap':
        return cls(
            X,
            X,
            {v: v for v in X.vertices},
            {e.id: e.id for e in X.edges},
            {t.id: t.id for t in X.triangles},
        )

    def image(self, dim: int, sid: str) -> str:
        return (self.vertex_map, self.edge_map, self.triangle_map)[dim][sid]

    def validate(self) -> List[str]:
        errors = []
        for dim in (0, 1, 2):
            mapping = (self.vertex_map, self.edge_map, self.triangle_map)[dim]
            targets = set(self.codomain.ids(dim))
            for sid in self.domain.ids(dim):
                if sid not in mapping:
                    errors.append(f"dimension {dim} simplex {sid!r} has no image")
                elif mapping[sid] not in targets:
                    errors.append(f"dimension {dim} simplex {sid!r} maps to unknown {mapping[sid]!r}")
        if errors:
            return errors
        for dim in (1, 2):
            for sid in self.domain.ids(dim):
                image = self.image(dim, sid)
                for i in range(dim + 1):
                    expected = self.image(dim - 1, self.domain.face(dim, sid, i))
                    actual = self.codomain.face(dim, image, i)
                    if expected != actual:
                        errors.append(
                            f"map does not commute with d{i} on {sid!r}: f(d{i}) = {expected!r}, d{i}(f) = {actual!r}"
                        )
        return errors


class TargetKind(str, Enum):
    NERVE = 'nerve'
    DELTA = 'delta'


@dataclass(frozen=True, order=True)
class Target:
    """The simplicial group NZ_d or Delta_{Z_d}.

    Outcomes on an n-simplex are tuples: Z_d^n for the nerve, Z_d^(n+1) for Delta_{Z_d}.
    Both are simplicial groups under coordinatewise addition.
    """

    kind: TargetKind
    d: int

    def __post_init__(self):
        object.__setattr__(self, 'kind', TargetKind(self.kind))
        if self.d < 2:
            raise UsageError(f"Z_d needs d >= 2, got {self.d}")

    @classmethod
    def nerve(cls, d: int) -> 'Target':
        return cls(TargetKind.NERVE, d)

    @classmethod
    def delta(cls, d: int) -> 'Target':
        return cls(TargetKind.DELTA, d)

    @property
    def is_nerve(self) -> bool:
        return self.kind is TargetKind.NERVE

    def __str__(self) -> str:
        return f"{'N' if self.is_nerve else 'Delta_'}Z_{self.d}"

    def stores(self, dim: int) -> bool:
        """NZ_d has a single vertex, so vertex distributions are only carried for Delta_{Z_d}."""
        return dim >= 1 if self.is_nerve else dim >= 0

    def width(self, dim: int) -> int:
        return dim if self.is_nerve else dim + 1

    def outcomes(self, dim: int) -> List[Outcome]:
        return [tuple(o) for o in product(range(self.d), repeat=self.width(dim))]

    def face(self, i: int, outcome: Outcome) -> Outcome:
        n = len(outcome) if self.is_nerve else len(outcome) - 1
        if not self.is_nerve:
            return outcome[:i] + outcome[i + 1 :]
        if i == 0:
            return outcome[1:]
        if i == n:
            return outcome[:-1]
        return outcome[: i - 1] + ((outcome[i - 1] + outcome[i]) % self.d,) + outcome[i + 1 :]

    def add(self, a: Outcome, b: Outcome) -> Outcome:
        return tuple((x + y) % self.d for x, y in zip(a, b))

    def neg(self, a: Outcome) -> Outcome:
        return tuple((-x) % self.d for x in a)

    def zero(self, dim: int) -> Outcome:
        return (0,) * self.width(dim)

    @property
    def label_dim(self) -> int:
        """Dimension of the simplices a deterministic map is labelled on."""
        return 1 if self.is_nerve else 0


@dataclass(frozen=True, order=True)
class DetMap:
    """A simplicial map X -> Y encoded by its labels.

    Nerve targets are labelled on edges (the label of a triangle's d1-face is the sum of the labels
    of its d2- and d0-faces); Delta_{Z_d} targets are labelled on vertices.
    """

    target: Target
    labels: Tuple[Tuple[str, int], ...]

    @classmethod
    def from_labels(cls, target: Target, labels: Mapping[str, int]) -> 'DetMap':
        return cls(target, tuple(sorted((k, int(v) % target.d) for k, v in labels.items())))

    @cached_property
    def label_map(self) -> Dict[str, int]:
        return dict(self.labels)

    def label(self, sid: str) -> int:
        return self.label_map[sid]

    def value(self, X: SSet2, dim: int, sid: str) -> Outcome:
        """The simplex of the target that `sid` is sent to."""
        labels = self.label_map
        if self.target.is_nerve:
            if dim == 0:
                return ()
            if dim == 1:
                return (labels[sid],)
            t = X.triangle(sid)
            return (labels[t.d2], labels[t.d0])
        if dim == 0:
            return (labels[sid],)
        if dim == 1:
            e = X.edge(sid)
            return (labels[e.src], labels[e.dst])
        return tuple(labels[v] for v in X.triangle_vertices(sid))

    def validate(self, X: SSet2) -> List[str]:
        errors = []
        expected = set(X.ids(self.target.label_dim))
        if set(self.label_map) != expected:
            errors.append(f"labels cover {sorted(self.label_map)}, expected {sorted(expected)}")
            return errors
        if self.target.is_nerve:
            for t in X.triangles:
                a, b, c = self.label(t.d2), self.label(t.d0), self.label(t.d1)
                if (a + b) % self.target.d != c:
                    errors.append(f"triangle {t.id!r}: label(d1) = {c} but label(d2) + label(d0) = {a + b}")
        return errors

    def pullback(self, f: SimplicialMap) -> 'DetMap':
        """The composite map f followed by this one, on the domain of f."""
        dim = self.target.label_dim
        return DetMap.from_labels(self.target, {sid: self.label(f.image(dim, sid)) for sid in f.domain.ids(dim)})

    def combine(self, other: 'DetMap') -> 'DetMap':
        """Pointwise group sum of two maps."""
        return DetMap.from_labels(self.target, {k: v + other.label(k) for k, v in self.labels})

    def negate(self) -> 'DetMap':
        return DetMap.from_labels(self.target, {k: -v for k, v in self.labels})

    def __str__(self) -> str:
        return '{' + ', '.join(f"{k}:{v}" for k, v in self.labels) + '}'
