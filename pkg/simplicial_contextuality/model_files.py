"""JSON file formats for spaces, simplicial distributions, empirical models, homotopy and glue requests.

Files are parsed with `json` and mapped onto the `*Spec` dataclasses below with dacite. Rational weights are
written as "p/q" strings, Boolean weights as "0"/"1". Outcome tuples are digit strings ("01") when d <= 10
and comma-joined ("3,11") otherwise; both forms are read back.
"""
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from dacite import Config, DaciteError, from_dict

from simplicial_contextuality.dist import Dist
from simplicial_contextuality.distribution.empirical import EmpiricalModel, realize
from simplicial_contextuality.distribution.simp_dist import SimpDist, change_semiring, from_top, require_valid
from simplicial_contextuality.distribution.simp_dist import validate as validate_simp_dist
from simplicial_contextuality.exceptions import (
    ContextualityError,
    InvalidModelError,
    ModelFileError,
    PreconditionError,
    UsageError,
)
from simplicial_contextuality.local_config import DEFAULT_SEMIRING
from simplicial_contextuality.semiring import Semiring, get_semiring
from simplicial_contextuality.simplicial.sset import DetMap, Edge, Outcome, SimplicialMap, SSet2, Target, Triangle
from simplicial_contextuality.simplicial.sset import validate as validate_space
from simplicial_contextuality.simplicial.standard import StandardSpace, build_standard

log = logging.getLogger(__name__)

Weight = Union[str, int]
Weights = Dict[str, Weight]

DACITE_CONFIG = Config(strict=True)


@dataclass
class EdgeSpec:
    """An edge with its endpoints as `src`/`dst`, or as faces `d1`/`d0`."""

    id: str
    src: Optional[str] = None
    dst: Optional[str] = None
    d0: Optional[str] = None
    d1: Optional[str] = None


@dataclass
class TriangleSpec:
    id: str
    d0: str
    d1: str
    d2: str


@dataclass
class SpaceSpec:
    vertices: List[str]
    edges: List[EdgeSpec] = field(default_factory=list)
    triangles: List[TriangleSpec] = field(default_factory=list)


@dataclass
class TargetSpec:
    kind: str = 'nerve'
    d: Optional[int] = None


@dataclass
class ModelSpec:
    space: Union[str, SpaceSpec]
    d: Optional[int] = None
    target: Union[str, TargetSpec] = 'nerve'
    semiring: str = DEFAULT_SEMIRING
    vertex_dists: Dict[str, Weights] = field(default_factory=dict)
    edge_dists: Dict[str, Weights] = field(default_factory=dict)
    tri_dists: Dict[str, Weights] = field(default_factory=dict)
    boxes: Dict[str, List[Weight]] = field(default_factory=dict)


@dataclass
class ContextSpec:
    measurements: List[str]
    dist: Weights


@dataclass
class EmpiricalSpec:
    """Contexts are lists of measurements with their distributions in `dists` under the comma-joined context.

    A context may also be an object carrying its own `dist`.
    """

    d: int
    contexts: List[Union[List[str], ContextSpec]]
    dists: Dict[str, Weights] = field(default_factory=dict)
    semiring: str = DEFAULT_SEMIRING
    measurements: List[str] = field(default_factory=list)


@dataclass
class MapSpec:
    vertices: Dict[str, str]
    edges: Dict[str, str] = field(default_factory=dict)
    triangles: Dict[str, str] = field(default_factory=dict)


@dataclass
class HomotopySpec:
    space: Union[str, SpaceSpec]
    start: Dict[str, int]
    end: Dict[str, int]
    d: int = 2


@dataclass
class GlueSpec:
    left: str
    right: str
    interface: Union[str, SpaceSpec]
    left_map: MapSpec
    right_map: MapSpec


@dataclass
class GlueRequest:
    left: SimpDist
    right: SimpDist
    left_map: SimplicialMap
    right_map: SimplicialMap


# outcomes


def format_outcome(outcome: Outcome, d: int) -> str:
    if d <= 10:
        return ''.join(str(a) for a in outcome)
    return ','.join(str(a) for a in outcome)


def parse_outcome(text: str, d: int, width: int) -> Outcome:
    text = text.strip()
    try:
        if ',' in text or d > 10:
            parts = [int(a) for a in text.split(',')] if text else []
        else:
            parts = [int(a) for a in text]
    except ValueError:
        raise UsageError(f"outcome {text!r} is not a tuple of integers")
    if len(parts) != width or not all(0 <= a < d for a in parts):
        raise UsageError(f"outcome {text!r} is not an element of Z_{d}^{width}")
    return tuple(parts)


# reading


def _read_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as err:
        raise ModelFileError(f"{path}: line {err.lineno}, column {err.colno}: {err.msg}")
    except OSError as err:
        raise ModelFileError(f"{path}: {err.strerror}")


def _typed(data_class, data: Any, source: str):
    if not isinstance(data, dict):
        raise ModelFileError(f"{source}: expected a JSON object, got {type(data).__name__}")
    try:
        return from_dict(data_class=data_class, data=data, config=DACITE_CONFIG)
    except DaciteError as err:
        raise ModelFileError(f"{source}: {err}")


def _endpoint(e: EdgeSpec, name: str, face: str) -> str:
    given, alias = getattr(e, name), getattr(e, face)
    if given is not None and alias is not None and given != alias:
        raise ModelFileError(f"edges.{e.id}: {name} {given!r} and {face} {alias!r} disagree")
    endpoint = given if given is not None else alias
    if endpoint is None:
        raise ModelFileError(f"edges.{e.id}: needs {name} (or {face})")
    return endpoint


def build_edge(e: EdgeSpec) -> Edge:
    return Edge(e.id, src=_endpoint(e, 'src', 'd1'), dst=_endpoint(e, 'dst', 'd0'))


def build_space(spec: Union[str, SpaceSpec]) -> SSet2:
    if isinstance(spec, str):
        return build_standard(spec)
    space = SSet2(
        tuple(spec.vertices),
        tuple(build_edge(e) for e in spec.edges),
        tuple(Triangle(t.id, t.d0, t.d1, t.d2) for t in spec.triangles),
    )
    errors = validate_space(space)
    if errors:
        raise InvalidModelError(errors, 'space')
    return space


def build_target(spec: ModelSpec) -> Target:
    """The target from `"target": kind` with a top-level `"d"`, or from a `{"kind", "d"}` object."""
    if isinstance(spec.target, str):
        kind, d = spec.target, spec.d
    else:
        kind, d = spec.target.kind, spec.target.d
        if d is not None and spec.d is not None and d != spec.d:
            raise ModelFileError(f"target.d = {d} but d = {spec.d}")
        d = spec.d if d is None else d
    try:
        return Target(kind, 2 if d is None else d)
    except ValueError:
        raise UsageError(f"unknown target kind {kind!r}, expected 'nerve' or 'delta'")


def _dist(semiring: Semiring, weights: Dict[str, Weight], d: int, width: int, where: str) -> Dist:
    try:
        return Dist(semiring, {parse_outcome(k, d, width): semiring.coerce(v) for k, v in weights.items()})
    except ContextualityError as err:
        raise ModelFileError(f"{where}: {err}")


def model_from_spec(spec: ModelSpec, semiring: Optional[Semiring] = None, validated: bool = True) -> SimpDist:
    """Build the simplicial distribution a `ModelSpec` describes.

    A semiring override re-reads the weights in that semiring, except for the rational -> Boolean case
    which pushes the parsed model along the support map.
    """
    declared = get_semiring(spec.semiring)
    semiring = semiring or declared
    to_boolean = semiring.is_boolean and not declared.is_boolean
    reading = declared if to_boolean else semiring

    space = build_space(spec.space)
    target = build_target(spec)
    given: Dict = {}
    groups = (
        (0, 'vertex_dists', spec.vertex_dists),
        (1, 'edge_dists', spec.edge_dists),
        (2, 'tri_dists', spec.tri_dists),
    )
    for dim, name, group in groups:
        known = set(space.ids(dim))
        for sid, weights in group.items():
            if sid not in known or not target.stores(dim):
                raise ModelFileError(f"{name}.{sid}: no dimension {dim} simplex {sid!r} carries a distribution")
            given[(dim, sid)] = _dist(reading, weights, target.d, target.width(dim), f"{name}.{sid}")
    for sid, entries in spec.boxes.items():
        dims = [dim for dim in (2, 1, 0) if sid in space.ids(dim) and target.stores(dim)]
        if not dims:
            raise ModelFileError(f"boxes.{sid}: no simplex {sid!r} carries a distribution")
        dim = dims[0]
        outcomes = target.outcomes(dim)
        if len(entries) != len(outcomes):
            raise ModelFileError(f"boxes.{sid}: {len(entries)} entries, expected {len(outcomes)}")
        weights = {format_outcome(o, target.d): w for o, w in zip(outcomes, entries)}
        given[(dim, sid)] = _dist(reading, weights, target.d, target.width(dim), f"boxes.{sid}")

    p = from_top(space, target, reading, given)
    if to_boolean:
        p = change_semiring(p, semiring)
    return require_valid(p) if validated else p


def load_model(path: Union[str, Path], semiring: Optional[Semiring] = None, validated: bool = True) -> SimpDist:
    spec = _typed(ModelSpec, _read_json(path), str(path))
    log.debug('loaded model file %s', path)
    return model_from_spec(spec, semiring, validated)


def load_scenario(path: Union[str, Path]) -> Tuple[SSet2, Target]:
    """Space and target of a model file; distributions, if present, are ignored."""
    spec = _typed(ModelSpec, _read_json(path), str(path))
    return build_space(spec.space), build_target(spec)


def _contexts(spec: EmpiricalSpec) -> List[Tuple[Tuple[str, ...], Weights, str]]:
    """Each context with its weights, whether given inline or in `dists` under the comma-joined context."""
    found = []
    used = set()
    for i, c in enumerate(spec.contexts):
        if isinstance(c, ContextSpec):
            found.append((tuple(c.measurements), c.dist, f"contexts[{i}].dist"))
            continue
        key = ','.join(c)
        if key not in spec.dists:
            raise ModelFileError(f"dists: no distribution for context {key!r}")
        used.add(key)
        found.append((tuple(c), spec.dists[key], f"dists.{key}"))
    unused = sorted(set(spec.dists) - used)
    if unused:
        raise ModelFileError(f"dists: {', '.join(unused)} name no context")
    return found


def empirical_from_spec(spec: EmpiricalSpec, semiring: Optional[Semiring] = None) -> EmpiricalModel:
    declared = get_semiring(spec.semiring)
    semiring = semiring or declared
    to_boolean = semiring.is_boolean and not declared.is_boolean
    reading = declared if to_boolean else semiring
    contexts = _contexts(spec)
    dists = {}
    for context, weights, where in contexts:
        q = _dist(reading, weights, spec.d, len(context), where)
        dists[context] = q.change_semiring(semiring) if to_boolean else q
    return EmpiricalModel(spec.d, semiring, tuple(c for c, _, _ in contexts), dists, tuple(spec.measurements))


def is_empirical_file(data: Any) -> bool:
    return isinstance(data, dict) and 'contexts' in data


def load_empirical(path: Union[str, Path], semiring: Optional[Semiring] = None) -> EmpiricalModel:
    return empirical_from_spec(_typed(EmpiricalSpec, _read_json(path), str(path)), semiring)


def load_any_model(path: Union[str, Path], semiring: Optional[Semiring] = None) -> SimpDist:
    """A simplicial distribution file, or an empirical model file realized with the automatic layout."""
    data = _read_json(path)
    if is_empirical_file(data):
        return realize(empirical_from_spec(_typed(EmpiricalSpec, data, str(path)), semiring))
    return model_from_spec(_typed(ModelSpec, data, str(path)), semiring)


def parse_labels(text: str) -> Dict[str, int]:
    """Inline labels of the form ``x=0,y=1``."""
    labels = {}
    for item in filter(None, (s.strip() for s in text.split(','))):
        key, sep, value = item.partition('=')
        if not sep:
            raise UsageError(f"label {item!r} is not of the form id=value")
        try:
            labels[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"label {item!r} has a non-integer value")
    return labels


def det_map_from_labels(labels: Dict[str, int], space: SSet2, target: Target) -> DetMap:
    phi = DetMap.from_labels(target, labels)
    errors = phi.validate(space)
    if errors:
        raise InvalidModelError(errors, 'deterministic map')
    return phi


def load_homotopy(path: Union[str, Path]) -> Tuple[SSet2, DetMap, DetMap]:
    spec = _typed(HomotopySpec, _read_json(path), str(path))
    space = build_space(spec.space)
    target = Target.nerve(spec.d)
    return space, det_map_from_labels(spec.start, space, target), det_map_from_labels(spec.end, space, target)


def build_map(spec: MapSpec, domain: SSet2, codomain: SSet2) -> SimplicialMap:
    f = SimplicialMap(domain, codomain, dict(spec.vertices), dict(spec.edges), dict(spec.triangles))
    errors = f.validate()
    if errors:
        raise InvalidModelError(errors, 'simplicial map')
    return f


def load_glue(path: Union[str, Path], semiring: Optional[Semiring] = None) -> GlueRequest:
    """A glue file names two model files (relative to itself), a shared interface space and the two inclusions."""
    spec = _typed(GlueSpec, _read_json(path), str(path))
    base = Path(path).parent
    left = load_model(base / spec.left, semiring)
    right = load_model(base / spec.right, semiring)
    interface = build_space(spec.interface)
    return GlueRequest(
        left,
        right,
        build_map(spec.left_map, interface, left.space),
        build_map(spec.right_map, interface, right.space),
    )


# writing


def standard_name(space: SSet2) -> Optional[str]:
    for member in StandardSpace:
        if build_standard(member) == space:
            return member.value
    return None


def space_to_dict(space: SSet2) -> Dict[str, Any]:
    return {
        'vertices': list(space.vertices),
        'edges': [{'id': e.id, 'src': e.src, 'dst': e.dst} for e in space.edges],
        'triangles': [{'id': t.id, 'd0': t.d0, 'd1': t.d1, 'd2': t.d2} for t in space.triangles],
    }


def dist_to_dict(q: Dist, d: int) -> Dict[str, str]:
    return {format_outcome(o, d): q.semiring.format(w) for o, w in q.items()}


def model_to_dict(p: SimpDist) -> Dict[str, Any]:
    d = p.target.d
    return {
        'semiring': p.semiring.name,
        'd': d,
        'target': p.target.kind.value,
        'space': standard_name(p.space) or space_to_dict(p.space),
        'vertex_dists': {sid: dist_to_dict(q, d) for sid, q in p.vertex_dists.items()},
        'edge_dists': {sid: dist_to_dict(q, d) for sid, q in p.edge_dists.items()},
        'tri_dists': {sid: dist_to_dict(q, d) for sid, q in p.tri_dists.items()},
    }


def det_map_to_dict(phi: DetMap) -> Dict[str, int]:
    return dict(phi.labels)


def witness_to_list(witness: Dist) -> List[Dict[str, Any]]:
    """A distribution over deterministic maps as a list of {map, weight} records."""
    return [{'map': det_map_to_dict(phi), 'weight': witness.semiring.format(w)} for phi, w in witness.items()]


def fraction_text(value: Fraction) -> str:
    return str(Fraction(value))


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def save_model(p: SimpDist, path: Union[str, Path]) -> None:
    with open(path, 'w') as f:
        f.write(dumps(model_to_dict(p)) + '\n')


def validate_file(path: Union[str, Path], semiring: Optional[Semiring] = None) -> List[str]:
    """Every problem found in a model or empirical model file; an empty list when it is valid."""
    data = _read_json(path)
    try:
        if is_empirical_file(data):
            e = empirical_from_spec(_typed(EmpiricalSpec, data, str(path)), semiring)
            errors = [f"context {list(c)} has more than two measurements" for c in e.contexts if len(c) > 2]
            return errors + e.validate()
        p = model_from_spec(_typed(ModelSpec, data, str(path)), semiring, validated=False)
    except InvalidModelError as err:
        return err.errors
    except (ModelFileError, PreconditionError) as err:
        return [str(err)]
    return validate_simp_dist(p)
