"""Gluing simplicial distributions along a shared subspace.

Two models p1 on X1 and p2 on X2 that restrict to the same distribution on a common subspace A give one model
on the pushout X1 +_A X2. When both are noncontextual and their witnesses push forward to the same distribution
over the maps on A, gluing the witnesses fibrewise gives a witness for the glued model.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from simplicial_contextuality import dist as D
from simplicial_contextuality.dist import Dist
from simplicial_contextuality.distribution.simp_dist import SimpDist, require_valid, restrict, stored_simplices
from simplicial_contextuality.exceptions import PreconditionError, UsageError
from simplicial_contextuality.polytope.contextuality import is_noncontextual
from simplicial_contextuality.simplicial.sset import DetMap, Simplex, SimplicialMap, SSet2
from simplicial_contextuality.simplicial.standard import pushout

log = logging.getLogger(__name__)


@dataclass
class GlueResult:
    model: SimpDist
    left_map: SimplicialMap
    right_map: SimplicialMap
    witness: Optional[Dist] = None
    note: str = ''

    @property
    def space(self) -> SSet2:
        return self.model.space


def _preimages(g: SimplicialMap) -> Dict[Simplex, str]:
    return {(dim, g.image(dim, sid)): sid for dim in (0, 1, 2) for sid in g.domain.ids(dim)}


def _merge(phi1: DetMap, phi2: DetMap, g1: SimplicialMap, g2: SimplicialMap) -> DetMap:
    dim = phi1.target.label_dim
    labels = {g2.image(dim, sid): v for sid, v in phi2.labels}
    labels.update({g1.image(dim, sid): v for sid, v in phi1.labels})
    return DetMap.from_labels(phi1.target, labels)


def _glue_witnesses(
    p1: SimpDist, p2: SimpDist, f1: SimplicialMap, f2: SimplicialMap, g1: SimplicialMap, g2: SimplicialMap
) -> Tuple[Optional[Dist], str]:
    if not p1.semiring.zero_sum_free:
        return None, f"witnesses are not glued over the {p1.semiring.name} semiring"
    r1, r2 = is_noncontextual(p1), is_noncontextual(p2)
    if not (r1 and r2):
        return None, "at least one side is contextual"
    w1, w2 = r1.witness, r2.witness
    image1 = D.pushforward(lambda phi: phi.pullback(f1), w1)  # type: ignore
    if image1 != D.pushforward(lambda phi: phi.pullback(f2), w2):  # type: ignore
        return None, "the witnesses disagree on the shared subspace"
    glued = D.glue_pullback(w1, w2, lambda phi: phi.pullback(f1), lambda phi: phi.pullback(f2))  # type: ignore
    return D.pushforward(lambda pair: _merge(pair[0], pair[1], g1, g2), glued), "glued witness"


def glue_models(p1: SimpDist, p2: SimpDist, f1: SimplicialMap, f2: SimplicialMap) -> GlueResult:
    """Glue p1 on X1 and p2 on X2 along the inclusions f1: A -> X1 and f2: A -> X2."""
    if (p1.target, p1.semiring) != (p2.target, p2.semiring):
        raise UsageError("glued models need the same target and semiring")
    if f1.codomain != p1.space or f2.codomain != p2.space:
        raise UsageError("the inclusions do not land in the spaces of the models")
    if restrict(p1, f1) != restrict(p2, f2):
        raise PreconditionError("the models disagree on the shared subspace")

    space, g1, g2 = pushout(f1, f2)
    from_left, from_right = _preimages(g1), _preimages(g2)
    dists = {}
    for s in stored_simplices(space, p1.target):
        if s in from_left:
            dists[s] = p1[(s[0], from_left[s])]
        else:
            dists[s] = p2[(s[0], from_right[s])]
    model = require_valid(SimpDist(space, p1.target, p1.semiring, dists))

    witness, note = _glue_witnesses(p1, p2, f1, f2, g1, g2)
    log.info('glued models into a space with %s simplices: %s', len(model.simplices), note)
    return GlueResult(model, g1, g2, witness, note)
