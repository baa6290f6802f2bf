"""
Structured high-order grids for the basin and its boundary lines.

Lattice node (ix, iy) has lattice index iy * n_nodes_x + ix with y running
from the bottom row to the surface row. Degrees of freedom number the active
lattice nodes in lattice order.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from ..errors import ConfigError
from ..models.enums import BoundaryTag
from ..utils.validators import element_count
from .basis import NodeFamily, reference_nodes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EllipseMask:
    """Elliptical obstacle removed from the basin."""
    center: Tuple[float, float]
    semi_axes: Tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, 'center', tuple(float(c) for c in self.center))
        object.__setattr__(self, 'semi_axes', tuple(float(a) for a in self.semi_axes))
        a, b = self.semi_axes
        if not (a > 0.0 and b > 0.0):
            raise ConfigError(f"ellipse semi-axes must be > 0, got {self.semi_axes}", key="obstacle")

    @classmethod
    def from_lengths(cls, center, lengths, interpretation='semi'):
        """
        Build from the two characteristic lengths.

        Args:
            center: (x0, y0)
            lengths: (horizontal, vertical) lengths
            interpretation: 'semi' when the lengths are semi-axes, 'full' for full axes
        """
        if interpretation == 'semi':
            return cls(center, lengths)
        if interpretation == 'full':
            return cls(center, (0.5 * lengths[0], 0.5 * lengths[1]))
        raise ConfigError(f"unknown ellipse interpretation '{interpretation}'", key="obstacle_axes")

    def contains(self, x, y):
        (x0, y0), (a, b) = self.center, self.semi_axes
        return ((np.asarray(x) - x0) / a) ** 2 + ((np.asarray(y) - y0) / b) ** 2 < 1.0

    def check_inside(self, x_range, y_range):
        (x0, y0), (a, b) = self.center, self.semi_axes
        if not (x_range[0] < x0 - a and x0 + a < x_range[1]
                and y_range[0] < y0 - b and y0 + b < y_range[1]):
            raise ConfigError(
                f"ellipse at {self.center} with semi-axes {self.semi_axes} touches the outer boundary",
                key="obstacle",
            )


def line_coordinates(start, n_elem, h, xi):
    """Node coordinates of a uniform line of n_elem elements with local nodes xi."""
    p = len(xi) - 1
    coords = np.empty(n_elem * p + 1)
    for e in range(n_elem):
        coords[e * p:(e + 1) * p + 1] = start + (e + xi) * h
    return coords


@dataclass(frozen=True)
class LineGrid1D:
    """A 1D grid hosting a boundary field; endpoints are addressed by label."""
    start: float
    stop: float
    n_elem: int
    p: int
    coords: np.ndarray = field(repr=False)
    labels: Dict[str, int] = field(default_factory=dict)
    family: NodeFamily = NodeFamily.GLL

    @property
    def n_nodes(self):
        return len(self.coords)

    @property
    def h(self):
        return (self.stop - self.start) / self.n_elem

    @property
    def length(self):
        return self.stop - self.start

    def element_nodes(self):
        base = np.arange(self.n_elem)[:, None] * self.p
        return base + np.arange(self.p + 1)[None, :]


def build_line(start, stop, n_elem, p, labels=None, family=NodeFamily.GLL):
    xi = reference_nodes(p, family)
    h = (stop - start) / n_elem
    coords = line_coordinates(start, n_elem, h, xi)
    coords[-1] = stop
    return LineGrid1D(start=start, stop=stop, n_elem=n_elem, p=p, coords=coords,
                      labels=dict(labels or {}), family=NodeFamily(family))


def point_functional(line, label):
    """DOF index of a labelled endpoint of a line."""
    try:
        return line.labels[label]
    except KeyError:
        raise ConfigError(f"unknown endpoint label '{label}' (line has {sorted(line.labels)})",
                          key="label")


class StructuredGrid2D:
    """
    Uniform rectangle grid of Q_p elements with an optional obstacle mask.

    Attributes:
        x_lattice, y_lattice: 1D node coordinates per direction
        active: (ny, nx) boolean element mask
        dof_of_node: lattice index -> DOF index (-1 for removed nodes)
        node_of_dof: DOF index -> lattice index
        coords: (n_dofs, 2) node coordinates
        elements: (n_active, (p+1)^2) DOF indices, local index j*(p+1)+i
    """

    def __init__(self, x_range, y_range, nx, ny, p, family=NodeFamily.GLL, mask=None):
        self.x_range = tuple(float(v) for v in x_range)
        self.y_range = tuple(float(v) for v in y_range)
        self.nx, self.ny, self.p = int(nx), int(ny), int(p)
        self.family = NodeFamily(family)
        self.mask = mask
        self.hx = (self.x_range[1] - self.x_range[0]) / self.nx
        self.hy = (self.y_range[1] - self.y_range[0]) / self.ny

        xi = reference_nodes(self.p, self.family)
        self.x_lattice = line_coordinates(self.x_range[0], self.nx, self.hx, xi)
        self.y_lattice = line_coordinates(self.y_range[0], self.ny, self.hy, xi)
        self.x_lattice[-1], self.y_lattice[-1] = self.x_range[1], self.y_range[1]
        self.n_nodes_x = self.nx * self.p + 1
        self.n_nodes_y = self.ny * self.p + 1

        self.active = np.ones((self.ny, self.nx), dtype=bool)
        if mask is not None:
            self._apply_mask(mask)

        lattice_elements = self._lattice_elements()
        used = np.zeros(self.n_nodes_x * self.n_nodes_y, dtype=bool)
        used[lattice_elements.ravel()] = True
        self.node_of_dof = np.flatnonzero(used)
        self.dof_of_node = np.full(used.size, -1, dtype=np.int64)
        self.dof_of_node[self.node_of_dof] = np.arange(self.node_of_dof.size)
        self.elements = self.dof_of_node[lattice_elements]

        iy, ix = np.divmod(self.node_of_dof, self.n_nodes_x)
        self.coords = np.column_stack((self.x_lattice[ix], self.y_lattice[iy]))

    def __repr__(self):
        return (f"<StructuredGrid2D {self.nx}x{self.ny} p={self.p} dofs={self.n_dofs} "
                f"active={self.n_active_elements}>")

    @property
    def n_dofs(self):
        return len(self.node_of_dof)

    @property
    def n_active_elements(self):
        return int(self.active.sum())

    @property
    def active_area(self):
        return self.n_active_elements * self.hx * self.hy

    def _apply_mask(self, mask):
        mask.check_inside(self.x_range, self.y_range)
        cx = self.x_range[0] + (np.arange(self.nx) + 0.5) * self.hx
        cy = self.y_range[0] + (np.arange(self.ny) + 0.5) * self.hy
        inside = mask.contains(cx[None, :], cy[:, None])
        # Outer rows and columns carry the boundary conditions and must stay whole
        border = np.zeros_like(inside)
        border[0, :] = border[-1, :] = border[:, 0] = border[:, -1] = True
        if np.any(inside & border):
            raise ConfigError("obstacle removes an element adjacent to the outer boundary",
                              key="obstacle")
        assert not inside[-1, :].any(), "surface row must stay active"
        self.active = ~inside
        logger.info(f"Obstacle removed {int(inside.sum())} of {inside.size} elements")

    def _lattice_elements(self):
        p, n = self.p, self.p + 1
        ey, ex = np.nonzero(self.active)
        local_j, local_i = np.divmod(np.arange(n * n), n)
        rows = ey[:, None] * p + local_j[None, :]
        cols = ex[:, None] * p + local_i[None, :]
        return rows * self.n_nodes_x + cols

    def lattice_index(self, ix, iy):
        return iy * self.n_nodes_x + ix

    def boundary_nodes(self, tag):
        """DOF indices of an outer boundary, ordered along it."""
        tag = BoundaryTag(tag)
        if tag is BoundaryTag.SURFACE:
            lattice = self.lattice_index(np.arange(self.n_nodes_x), self.n_nodes_y - 1)
        elif tag is BoundaryTag.BOTTOM:
            lattice = self.lattice_index(np.arange(self.n_nodes_x), 0)
        elif tag is BoundaryTag.INFLOW:
            lattice = self.lattice_index(0, np.arange(self.n_nodes_y))
        elif tag is BoundaryTag.OUTFLOW:
            lattice = self.lattice_index(self.n_nodes_x - 1, np.arange(self.n_nodes_y))
        else:
            return self.obstacle_nodes()
        return self.dof_of_node[lattice]

    def obstacle_nodes(self):
        """DOF indices on faces exposed by removed elements."""
        if self.mask is None or self.active.all():
            return np.empty(0, dtype=np.int64)
        p = self.p
        exposed = set()
        for ey, ex in zip(*np.nonzero(~self.active)):
            for dy, dx in ((0, -1), (0, 1), (-1, 0), (1, 0)):
                ny_, nx_ = ey + dy, ex + dx
                if not (0 <= ny_ < self.ny and 0 <= nx_ < self.nx) or not self.active[ny_, nx_]:
                    continue
                if dx:
                    ix = (ex + (1 if dx > 0 else 0)) * p
                    nodes = [self.lattice_index(ix, ey * p + j) for j in range(p + 1)]
                else:
                    iy = (ey + (1 if dy > 0 else 0)) * p
                    nodes = [self.lattice_index(ex * p + i, iy) for i in range(p + 1)]
                exposed.update(nodes)
        dofs = self.dof_of_node[np.array(sorted(exposed), dtype=np.int64)]
        return dofs[dofs >= 0]

    def nodes_in_x(self, x_min, x_max, tol=1e-12):
        """DOF indices whose x lies in [x_min, x_max]."""
        x = self.coords[:, 0]
        return np.flatnonzero((x >= x_min - tol) & (x <= x_max + tol))


def build_grid_2d(rect, h, p, mask: Optional[EllipseMask] = None, family=NodeFamily.GLL):
    """
    Uniform grid over rect = ((x_min, x_max), (y_min, y_max)).

    Raises:
        ConfigError: side lengths not multiples of h, bad order, ellipse on the boundary
    """
    (x0, x1), (y0, y1) = rect
    if not 1 <= p <= 4:
        raise ConfigError(f"element order must lie in 1..4, got {p}", key="p")
    nx = element_count(x1 - x0, h)
    ny = element_count(y1 - y0, h)
    grid = StructuredGrid2D((x0, x1), (y0, y1), nx, ny, p, family=family, mask=mask)
    logger.debug(f"Built {grid!r}")
    return grid


@dataclass(frozen=True)
class BoundaryTrace:
    """A boundary line together with the 2D DOFs it sits on."""
    tag: BoundaryTag
    line: LineGrid1D
    nodes: np.ndarray = field(repr=False)


_LINE_LABELS = {
    BoundaryTag.SURFACE: ('P_in', 'P_out'),
    BoundaryTag.BOTTOM: ('Q_in', 'Q_out'),
    BoundaryTag.INFLOW: ('Q', 'P'),
    BoundaryTag.OUTFLOW: ('Q', 'P'),
}


def boundary_trace_map(grid, tag):
    """
    Line grid of an outer boundary and the order-preserving map to 2D DOFs.

    Horizontal lines run in +x, vertical lines from bottom (Q) to surface (P).
    """
    tag = BoundaryTag(tag)
    if tag not in _LINE_LABELS:
        raise ConfigError(f"'{tag.value}' is not an outer boundary", key="tag")
    first, last = _LINE_LABELS[tag]
    if tag in (BoundaryTag.SURFACE, BoundaryTag.BOTTOM):
        start, stop, n_elem = grid.x_range[0], grid.x_range[1], grid.nx
    else:
        start, stop, n_elem = grid.y_range[0], grid.y_range[1], grid.ny
    line = build_line(start, stop, n_elem, grid.p, family=grid.family,
                      labels={first: 0, last: n_elem * grid.p})
    nodes = grid.boundary_nodes(tag)
    if np.any(nodes < 0):
        raise ConfigError(f"boundary '{tag.value}' has removed nodes", key="tag")
    return BoundaryTrace(tag=tag, line=line, nodes=nodes)
