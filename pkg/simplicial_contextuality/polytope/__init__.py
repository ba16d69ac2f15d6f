from .chsh import ChshReport, chsh_check
from .contextuality import (
    Decomposition,
    NoncontextualityResult,
    contextual_fraction,
    decompose,
    is_noncontextual,
    noncontextual_fraction,
    scc_certificate,
)
from .homotopy import HomotopyResult, HomotopyStatus, distribution_homotopy
from .lp import LinearProgram, LPResult, LPSense, LPStatus, lp_solve
from .polytope import DistributionPolytope, distribution_polytope
from .vertices import VertexReport, enumerate_vertices, fiber_vertices, is_vertex, vertex_points
