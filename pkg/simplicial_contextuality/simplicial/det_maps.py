"""Enumerate the simplicial maps from a 2-truncated simplicial set into NZ_d or Delta_{Z_d}."""
import logging
import time
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional

from simplicial_contextuality.exceptions import UnsupportedError, UsageError
from simplicial_contextuality.simplicial.sset import DetMap, SSet2, Target
from simplicial_contextuality.simplicial.standard import prism

log = logging.getLogger(__name__)


def iter_det_maps(X: SSet2, target: Target, fixed: Optional[Mapping[str, int]] = None) -> Iterator[DetMap]:
    """Yield every DetMap X -> target that extends the partial labelling `fixed`.

    Nerve labellings are found by backtracking over edges in id order, checking each triangle
    as soon as its three edges are labelled.
    """
    fixed = {k: v % target.d for k, v in (fixed or {}).items()}
    label_ids = X.ids(target.label_dim)
    unknown = set(fixed) - set(label_ids)
    if unknown:
        raise UsageError(f"partial labelling names unknown simplices {sorted(unknown)}")

    if not target.is_nerve:
        free = [v for v in label_ids if v not in fixed]
        for values in product(range(target.d), repeat=len(free)):
            yield DetMap.from_labels(target, {**fixed, **dict(zip(free, values))})
        return

    order = list(label_ids)
    position = {eid: i for i, eid in enumerate(order)}
    # check each triangle once, at the last of its edges in the search order
    checks: Dict[int, List] = {}
    for t in X.triangles:
        last = max(position[t.d0], position[t.d1], position[t.d2])
        checks.setdefault(last, []).append(t)

    labels: Dict[str, int] = {}

    def consistent(i: int) -> bool:
        return all((labels[t.d2] + labels[t.d0] - labels[t.d1]) % target.d == 0 for t in checks.get(i, ()))

    def extend(i: int) -> Iterator[DetMap]:
        if i == len(order):
            yield DetMap.from_labels(target, labels)
            return
        eid = order[i]
        candidates = (fixed[eid],) if eid in fixed else range(target.d)
        for value in candidates:
            labels[eid] = value
            if consistent(i):
                yield from extend(i + 1)
        labels.pop(eid, None)

    yield from extend(0)


def enumerate_det_maps(X: SSet2, target: Target, fixed: Optional[Mapping[str, int]] = None) -> List[DetMap]:
    """All simplicial maps X -> target, in lexicographic label order."""
    t0 = time.perf_counter()
    maps = list(iter_det_maps(X, target, fixed))
    log.debug('enumerated %s maps into %s in %.4f secs', len(maps), target, time.perf_counter() - t0)
    return maps


def homotopy_classes(phi0: DetMap, phi1: DetMap, X: SSet2) -> bool:
    """True if some map on X x Delta[1] restricts to `phi0` on X x {0} and to `phi1` on X x {1}."""
    if phi0.target != phi1.target or not phi0.target.is_nerve:
        raise UsageError("homotopies are searched between maps into the same nerve target")
    if X.triangles:
        raise UnsupportedError("homotopy search needs a 1-dimensional space")
    P = prism(X)
    fixed = {}
    for phi, end in ((phi0, P.bottom), (phi1, P.top)):
        for eid in X.ids(1):
            fixed[end.image(1, eid)] = phi.label(eid)
    return next(iter_det_maps(P.space, phi0.target, fixed), None) is not None
