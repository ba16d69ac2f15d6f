from .det_maps import enumerate_det_maps, homotopy_classes, iter_det_maps
from .sset import DetMap, Edge, SimplicialMap, SSet2, Target, TargetKind, Triangle, validate
from .standard import (
    Prism,
    StandardSpace,
    build_standard,
    chsh_boundary_inclusion,
    cone,
    disjoint_union,
    glued_triangle_circle_inclusion,
    prism,
    pushout,
)
