"""
Enumerations shared across the simulator
"""
from enum import Enum


class Side(str, Enum):
    """Lateral artificial boundary"""
    IN = 'in'
    OUT = 'out'


class BoundaryTag(str, Enum):
    """Boundary tags of the structured basin grid"""
    SURFACE = 'surface'
    INFLOW = 'inflow'
    OUTFLOW = 'outflow'
    BOTTOM = 'bottom'
    OBSTACLE = 'obstacle'


class CornerMode(str, Enum):
    """Closure of the auxiliary lines at the bottom corners"""
    ODE = 'ode'
    NEUMANN = 'neumann'


class CompatMode(str, Enum):
    """Choice of the compatibility coefficients"""
    A = 'a'  # a_f = 1, a_s = c_s / c_f
    B = 'b'  # a_s = 1, a_f = c_f / c_s


class AbcKind(str, Enum):
    """Absorbing condition family on the artificial boundaries"""
    PADE = 'pade'
    FIRST_ORDER = 'first-order'


SIDE_TAGS = {
    Side.IN: BoundaryTag.INFLOW,
    Side.OUT: BoundaryTag.OUTFLOW,
}
