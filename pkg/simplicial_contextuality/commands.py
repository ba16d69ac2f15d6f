"""Dispatch of command line verbs onto the analyses.

`run` never raises for toolkit errors: a `ContextualityError` becomes a report with a nonzero exit code
carrying the error text. Exit codes are 0 (done), 1 (the validated file has problems) and 2 (error).
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from simplicial_contextuality import model_files as mf
from simplicial_contextuality import render
from simplicial_contextuality.distribution.empirical import Layout, realize
from simplicial_contextuality.distribution.simp_dist import SimpDist, is_strongly_contextual, support
from simplicial_contextuality.exceptions import ContextualityError, UsageError
from simplicial_contextuality.gluing import glue_models
from simplicial_contextuality.local_config import NUM_WORKERS, VERTEX_CAP
from simplicial_contextuality.monoid import (
    inverse,
    invertible_fraction,
    invertible_support,
    is_weakly_invertible,
    isupp_member,
    mult,
)
from simplicial_contextuality.polytope.chsh import chsh_check
from simplicial_contextuality.polytope.contextuality import contextual_fraction, is_noncontextual
from simplicial_contextuality.polytope.homotopy import HomotopyStatus, distribution_homotopy
from simplicial_contextuality.polytope.vertices import enumerate_vertices, is_vertex
from simplicial_contextuality.semiring import NONNEG_RATIONAL, Semiring, get_semiring
from simplicial_contextuality.simplicial.det_maps import homotopy_classes
from simplicial_contextuality.simplicial.sset import Target
from simplicial_contextuality.simplicial.standard import StandardSpace, build_standard

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ERROR = 2


class Verb(str, Enum):
    VALIDATE = 'validate'
    CHECK = 'check'
    CF = 'cf'
    STRONG = 'strong'
    WI = 'wi'
    IF = 'if'
    ISUPP = 'isupp'
    MULT = 'mult'
    INVERSE = 'inverse'
    VERTICES = 'vertices'
    CHSH = 'chsh'
    REALIZE = 'realize'
    HOMOTOPY = 'homotopy'
    GLUE = 'glue'
    SPACES = 'spaces'


class OutputFormat(str, Enum):
    TABLE = 'table'
    JSON = 'json'


# number of input files each verb takes; vertices takes a scenario file or --space
ARITY: Dict[Verb, Optional[int]] = {Verb.MULT: 2, Verb.SPACES: 0, Verb.VERTICES: None}


@dataclass
class Command:
    verb: Verb
    inputs: List[str] = field(default_factory=list)
    format: OutputFormat = OutputFormat.TABLE
    semiring: Optional[str] = None
    cap: int = VERTEX_CAP
    num_workers: int = NUM_WORKERS
    show_float: bool = False
    labels: Optional[str] = None
    layout: str = Layout.AUTO.value
    space: Optional[str] = None

    def __post_init__(self):
        self.verb = Verb(self.verb)
        self.format = OutputFormat(self.format)

    def validate(self) -> None:
        expected = ARITY.get(self.verb, 1)
        if expected is None:
            if bool(self.inputs) == bool(self.space) or len(self.inputs) > 1:
                raise UsageError(f"{self.verb.value} needs either one scenario file or --space")
        elif len(self.inputs) != expected:
            raise UsageError(f"{self.verb.value} needs {expected} input file(s), got {len(self.inputs)}")

    @property
    def semiring_override(self) -> Optional[Semiring]:
        return get_semiring(self.semiring) if self.semiring else None


@dataclass
class Report:
    exit_code: int
    text: str
    data: Dict[str, Any]
    format: OutputFormat = OutputFormat.TABLE

    @property
    def output(self) -> str:
        return mf.dumps(self.data) if self.format is OutputFormat.JSON else self.text


def _load(cmd: Command, i: int = 0) -> SimpDist:
    return mf.load_any_model(cmd.inputs[i], cmd.semiring_override)


def _model_report(p: SimpDist, cmd: Command) -> Report:
    return Report(EXIT_OK, render.render_box_table(p, cmd.show_float), mf.model_to_dict(p))


def _validate(cmd: Command) -> Report:
    errors = mf.validate_file(cmd.inputs[0], cmd.semiring_override)
    if errors:
        text = "invalid\n" + "\n".join(f"  {e}" for e in errors)
        return Report(EXIT_INVALID, text, {'valid': False, 'errors': errors})
    return Report(EXIT_OK, 'valid', {'valid': True, 'errors': []})


def _check(cmd: Command) -> Report:
    p = _load(cmd)
    result = is_noncontextual(p)
    data: Dict[str, Any] = {
        'noncontextual': result.noncontextual,
        'witness': mf.witness_to_list(result.witness) if result.witness else None,
    }
    lines = ['noncontextual' if result else 'contextual']
    if p.semiring == NONNEG_RATIONAL:
        cf = contextual_fraction(p)
        data['contextual_fraction'] = mf.fraction_text(cf)
        lines.append(f"CF={cf}")
    if result.witness:
        lines.append(render.witness_table(result.witness, cmd.show_float))
    return Report(EXIT_OK, '\n'.join(lines), data)


def _cf(cmd: Command) -> Report:
    cf = contextual_fraction(_load(cmd))
    data = {'contextual_fraction': mf.fraction_text(cf), 'noncontextual_fraction': mf.fraction_text(1 - cf)}
    return Report(EXIT_OK, f"CF={render.format_weight(cf, NONNEG_RATIONAL, cmd.show_float)}", data)


def _strong(cmd: Command) -> Report:
    p = _load(cmd)
    size = len(support(p))
    strong = size == 0
    text = 'strongly contextual' if strong else f"not strongly contextual ({size} maps in the support)"
    return Report(EXIT_OK, text, {'strongly_contextual': strong, 'support_size': size})


def _wi(cmd: Command) -> Report:
    result = is_weakly_invertible(_load(cmd))
    data = {
        'weakly_invertible': result.invertible,
        'witness': mf.witness_to_list(result.witness) if result.witness else None,
    }
    lines = ['weakly invertible' if result else 'not weakly invertible']
    if result.witness:
        lines.append(render.witness_table(result.witness, cmd.show_float))
    return Report(EXIT_OK, '\n'.join(lines), data)


def _if(cmd: Command) -> Report:
    value = invertible_fraction(_load(cmd))
    data = {'invertible_fraction': mf.fraction_text(value), 'non_invertible_fraction': mf.fraction_text(1 - value)}
    return Report(EXIT_OK, f"IF={render.format_weight(value, NONNEG_RATIONAL, cmd.show_float)}", data)


def _isupp(cmd: Command) -> Report:
    p = _load(cmd)
    if cmd.labels:
        phi = mf.det_map_from_labels(mf.parse_labels(cmd.labels), p.space, p.target)
        member = isupp_member(p, phi)
        text = f"{phi} is {'' if member else 'not '}in the invertible support"
        return Report(EXIT_OK, text, {'map': mf.det_map_to_dict(phi), 'member': member})
    maps = invertible_support(p)
    text = '\n'.join(str(phi) for phi in maps) if maps else 'empty invertible support'
    return Report(EXIT_OK, text, {'invertible_support': [mf.det_map_to_dict(phi) for phi in maps]})


def _mult(cmd: Command) -> Report:
    return _model_report(mult(_load(cmd, 0), _load(cmd, 1)), cmd)


def _inverse(cmd: Command) -> Report:
    return _model_report(inverse(_load(cmd)), cmd)


def _vertices(cmd: Command) -> Report:
    if cmd.space:
        space, target = build_standard(cmd.space), Target.nerve(2)
    else:
        space, target = mf.load_scenario(cmd.inputs[0])
    t0 = time.perf_counter()
    reports = enumerate_vertices(space, target, NONNEG_RATIONAL, cmd.cap, cmd.num_workers)
    log.info('vertices: %s found in %.2f secs', len(reports), time.perf_counter() - t0)
    deterministic = sum(r.is_deterministic for r in reports)
    data = {
        'count': len(reports),
        'deterministic': deterministic,
        'vertices': [
            {
                'model': mf.model_to_dict(r.coordinates),
                'deterministic': r.is_deterministic,
                'strongly_contextual': r.is_strongly_contextual,
                'contextual_fraction': mf.fraction_text(r.contextual_fraction),
            }
            for r in reports
        ],
    }
    text = render.vertex_table(reports, cmd.show_float) + f"\n{len(reports)} vertices, {deterministic} deterministic"
    return Report(EXIT_OK, text, data)


def _chsh(cmd: Command) -> Report:
    report = chsh_check(_load(cmd))
    data = {
        'correlators': {k: mf.fraction_text(v) for k, v in report.correlators.items()},
        'inequalities': [
            {
                'signs': list(i.signs),
                'value': mf.fraction_text(i.value),
                'slack': mf.fraction_text(i.slack),
                'satisfied': i.satisfied,
            }
            for i in report.inequalities
        ],
        'all_satisfied': report.all_satisfied,
    }
    text = render.chsh_tables(report) + f"\nall satisfied: {report.all_satisfied}"
    return Report(EXIT_OK, text, data)


def _realize(cmd: Command) -> Report:
    e = mf.load_empirical(cmd.inputs[0], cmd.semiring_override)
    return _model_report(realize(e, Layout(cmd.layout)), cmd)


def _homotopy(cmd: Command) -> Report:
    space, phi0, phi1 = mf.load_homotopy(cmd.inputs[0])
    homotopic = homotopy_classes(phi0, phi1, space)
    result = distribution_homotopy(phi0, phi1, space)
    data: Dict[str, Any] = {'homotopic': homotopic, 'status': result.status.value, 'solution': None}
    lines = [
        f"deterministic homotopy: {'yes' if homotopic else 'no'}",
        f"distribution homotopy: {result.status.value}",
    ]
    if result.status is HomotopyStatus.UNIQUE:
        solution = result.solution
        vertex, strong = is_vertex(solution), is_strongly_contextual(solution)  # type: ignore
        cf = contextual_fraction(solution)  # type: ignore
        data.update(
            {
                'solution': mf.model_to_dict(solution),  # type: ignore
                'vertex': vertex,
                'strongly_contextual': strong,
                'contextual_fraction': mf.fraction_text(cf),
            }
        )
        lines += [
            f"vertex: {vertex}, strongly contextual: {strong}, CF={cf}",
            render.render_box_table(solution, cmd.show_float),  # type: ignore
        ]
    return Report(EXIT_OK, '\n'.join(lines), data)


def _glue(cmd: Command) -> Report:
    request = mf.load_glue(cmd.inputs[0], cmd.semiring_override)
    result = glue_models(request.left, request.right, request.left_map, request.right_map)
    data = {
        'model': mf.model_to_dict(result.model),
        'witness': mf.witness_to_list(result.witness) if result.witness else None,
        'note': result.note,
    }
    lines = [render.render_box_table(result.model, cmd.show_float), f"witness: {result.note}"]
    if result.witness:
        lines.append(render.witness_table(result.witness, cmd.show_float))
    return Report(EXIT_OK, '\n'.join(lines), data)


def _spaces(cmd: Command) -> Report:
    records = []
    for member in StandardSpace:
        X = build_standard(member)
        records.append(
            {'name': member.value, 'vertices': len(X.vertices), 'edges': len(X.edges), 'triangles': len(X.triangles)}
        )
    frame = pd.DataFrame.from_records(records, columns=['name', 'vertices', 'edges', 'triangles'])
    return Report(EXIT_OK, frame.to_string(index=False), {'spaces': records})


HANDLERS: Dict[Verb, Callable[[Command], Report]] = {
    Verb.VALIDATE: _validate,
    Verb.CHECK: _check,
    Verb.CF: _cf,
    Verb.STRONG: _strong,
    Verb.WI: _wi,
    Verb.IF: _if,
    Verb.ISUPP: _isupp,
    Verb.MULT: _mult,
    Verb.INVERSE: _inverse,
    Verb.VERTICES: _vertices,
    Verb.CHSH: _chsh,
    Verb.REALIZE: _realize,
    Verb.HOMOTOPY: _homotopy,
    Verb.GLUE: _glue,
    Verb.SPACES: _spaces,
}


def run(cmd: Command) -> Report:
    """Run one command; toolkit errors come back as a report with exit code 2."""
    log.debug('running %s on %s', cmd.verb.value, cmd.inputs)
    try:
        cmd.validate()
        report = HANDLERS[cmd.verb](cmd)
    except ContextualityError as err:
        log.debug('%s failed: %s', cmd.verb.value, err)
        report = Report(EXIT_ERROR, str(err), {'error': str(err)})
    report.format = cmd.format
    return report
