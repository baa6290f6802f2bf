"""
Global unknown layout of the coupled system.

Blocks in order: phi (basin nodes), eta (surface nodes), then for each
lateral side and each active Padé index the auxiliary line phi_aux and its
surface scalar eta_aux, then one bottom auxiliary line per active index.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import ConfigError
from ..models.enums import AbcKind, Side

logger = logging.getLogger(__name__)

PHI = 'phi'
ETA = 'eta'
PHI_AUX = 'phi_aux'
ETA_AUX = 'eta_aux'
PHI_BOTTOM = 'phi_bottom'


@dataclass(frozen=True)
class Block:
    name: str
    offset: int
    size: int
    side: Optional[Side] = None
    index: Optional[int] = None

    @property
    def stop(self):
        return self.offset + self.size

    @property
    def slice(self):
        return slice(self.offset, self.stop)

    @property
    def indices(self):
        return np.arange(self.offset, self.stop)

    def dof(self, local):
        """Global index of a block-local node."""
        return self.offset + local


@dataclass(frozen=True)
class LayoutOptions:
    """
    Which blocks the system carries.

    eta_aux scalars exist when the lateral condition is Padé-type, the surface is
    coupled and epsilon > 0; without added mass they are eliminated.
    """
    ste_enabled: bool = False
    habc_sides: bool = True
    habc_bottom: bool = True
    surface: bool = True
    sigma: float = 0.0
    epsilon: float = 0.0
    abc_kind: AbcKind = AbcKind.PADE

    def __post_init__(self):
        object.__setattr__(self, 'abc_kind', AbcKind(self.abc_kind))
        if self.ste_enabled and (self.sigma <= 0.0 or self.epsilon <= 0.0):
            raise ConfigError(
                f"surface tension needs sigma > 0 and epsilon > 0 (sigma={self.sigma}, "
                f"epsilon={self.epsilon})",
                key="sigma",
            )

    @classmethod
    def from_case(cls, case, surface=True):
        params = case.params
        return cls(ste_enabled=params.ste_enabled, habc_sides=case.habc_sides,
                   habc_bottom=case.habc_bottom, surface=surface, sigma=params.sigma,
                   epsilon=params.epsilon, abc_kind=case.abc_kind)

    @property
    def side_lines(self):
        return self.habc_sides and self.abc_kind is AbcKind.PADE

    @property
    def bottom_lines(self):
        return self.habc_bottom and self.abc_kind is AbcKind.PADE

    @property
    def eta_aux(self):
        return self.side_lines and self.surface and self.epsilon > 0.0


class FieldLayout:
    """Ordered, contiguous blocks over the global unknown vector."""

    def __init__(self, blocks: Tuple[Block, ...], active: Tuple[int, ...]):
        self.blocks = tuple(blocks)
        self.active = tuple(active)
        self._by_key = {(b.name, b.side, b.index): b for b in self.blocks}

    def __repr__(self):
        return f"<FieldLayout blocks={len(self.blocks)} dimension={self.dimension}>"

    @property
    def dimension(self):
        return self.blocks[-1].stop if self.blocks else 0

    def block(self, name, side=None, index=None):
        key = (name, Side(side) if side is not None else None, index)
        try:
            return self._by_key[key]
        except KeyError:
            raise KeyError(f"layout has no block {key}")

    def has(self, name, side=None, index=None):
        return (name, Side(side) if side is not None else None, index) in self._by_key

    @property
    def phi(self):
        return self.block(PHI)

    @property
    def eta(self):
        return self._by_key.get((ETA, None, None))

    def phi_aux(self, side, n):
        return self.block(PHI_AUX, side, n)

    def eta_aux(self, side, n):
        return self.block(ETA_AUX, side, n)

    def phi_bottom(self, m):
        return self.block(PHI_BOTTOM, None, m)

    def sizes(self):
        """Total size per block family."""
        totals = {}
        for b in self.blocks:
            totals[b.name] = totals.get(b.name, 0) + b.size
        return totals


def build_field_layout(grid, pade, options: LayoutOptions):
    """
    Lay out the unknowns for a grid, a Padé set and the enabled conditions.

    Args:
        grid: StructuredGrid2D
        pade: PadeSet (its active indices are shared by every boundary)
        options: LayoutOptions
    """
    blocks = []
    offset = 0

    def push(name, size, side=None, index=None):
        nonlocal offset
        blocks.append(Block(name=name, offset=offset, size=size, side=side, index=index))
        offset += size

    push(PHI, grid.n_dofs)
    if options.surface:
        push(ETA, grid.n_nodes_x)
    if options.side_lines:
        for side in (Side.IN, Side.OUT):
            for n in pade.active:
                push(PHI_AUX, grid.n_nodes_y, side, n)
                if options.eta_aux:
                    push(ETA_AUX, 1, side, n)
    if options.bottom_lines:
        for m in pade.active:
            push(PHI_BOTTOM, grid.n_nodes_x, None, m)

    layout = FieldLayout(tuple(blocks), pade.active)
    logger.info(f"Layout: {layout.sizes()} total {layout.dimension}")
    return layout
