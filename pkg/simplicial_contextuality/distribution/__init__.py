from .empirical import EmpiricalModel, Layout, decalage_convert, decalage_invert, realize, realize_delta
from .simp_dist import (
    SimpDist,
    box,
    change_semiring,
    combine,
    deterministic_embed,
    from_boxes,
    from_top,
    in_support,
    is_strongly_contextual,
    mix,
    require_valid,
    restrict,
    stored_simplices,
    support,
    theta,
    top_simplices,
    validate,
)
