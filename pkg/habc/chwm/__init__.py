from .layout import Block, FieldLayout, LayoutOptions, build_field_layout
from .contribution import Contribution
from .interior import SurfaceLoad, assemble_interior, assemble_surface
from .boundary import (
    assemble_first_order_bottom,
    assemble_first_order_side,
    assemble_habc_bottom,
    assemble_habc_side,
    corner_coupling,
)
from .system import SystemMatrices, assemble_system, dump_system
