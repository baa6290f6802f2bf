from .enums import AbcKind, BoundaryTag, CompatMode, CornerMode, Side, SIDE_TAGS
from .params import PhysicalParams, phase_speed
from .case import CaseSpec
from .record import RunRecord

__all__ = [
    'AbcKind',
    'BoundaryTag',
    'CompatMode',
    'CornerMode',
    'Side',
    'SIDE_TAGS',
    'PhysicalParams',
    'phase_speed',
    'CaseSpec',
    'RunRecord',
]
