from .basis import (
    LagrangeBasis,
    NodeFamily,
    QuadratureRule,
    gauss_legendre,
    quadrature_for,
    reference_basis,
    reference_matrices,
    reference_nodes,
)
from .grid import (
    BoundaryTrace,
    EllipseMask,
    LineGrid1D,
    StructuredGrid2D,
    boundary_trace_map,
    build_grid_2d,
    build_line,
    point_functional,
)
from .assembly import (
    assemble_line_mass,
    assemble_line_stiffness,
    assemble_mass_2d,
    assemble_stiffness_2d,
)
from .snapshot import write_snapshot
