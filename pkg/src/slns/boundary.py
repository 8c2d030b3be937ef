"""Wall metadata and vorticity boundary values from the streamfunction.

No-slip walls do not prescribe vorticity directly; the wall vorticity
is reconstructed from the streamfunction each step with Thom's formula

    omega_wall = -(2/h^2) (psi_1 - psi_wall) + 2 U / h

where psi_1 is the streamfunction at the first interior node along the
inward normal, h the first interior spacing (the fine spacing on
refined grids), and U the wall's tangential speed.

Sign convention: U is measured along the counterclockwise tangent of
the domain boundary (bottom +x, right +y, top -x, left -y).  With that
orientation the formula above holds on every wall without per-side sign
flips, and a positive U always injects positive vorticity.  The
physical wall velocity vector is U times the tangent, so a cavity lid
specified as WallSpec(Side.TOP, 1.0) moves in the -x direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from slns.grid import Grid, ScalarField

__all__ = [
    "Side",
    "WallSpec",
    "WallVorticity",
    "wall_tangent",
    "thom_vorticity",
    "apply_wall_vorticity",
    "wall_speed_map",
]


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTTOM = "bottom"
    TOP = "top"


_TANGENTS = {
    Side.BOTTOM: (1.0, 0.0),
    Side.RIGHT: (0.0, 1.0),
    Side.TOP: (-1.0, 0.0),
    Side.LEFT: (0.0, -1.0),
}


def wall_tangent(side: Side) -> tuple[float, float]:
    """Counterclockwise unit tangent of a wall."""
    return _TANGENTS[side]


@dataclass(frozen=True)
class WallSpec:
    """A wall and its tangential speed (counterclockwise-positive)."""

    side: Side
    tangential_speed: float = 0.0


def wall_speed_map(walls, g: Grid) -> dict[Side, float]:
    """Tangential speed per side; unspecified walls are at rest.

    Rejects specs on sides of periodic axes and duplicate sides.
    """
    speeds = {s: 0.0 for s in Side}
    seen = set()
    for w in walls:
        if w.side in seen:
            raise ValueError(f"duplicate wall spec for {w.side}")
        seen.add(w.side)
        if w.side in (Side.LEFT, Side.RIGHT) and g.periodic_x:
            raise ValueError(f"{w.side} is not a wall: x axis is periodic")
        if w.side in (Side.BOTTOM, Side.TOP) and g.periodic_y:
            raise ValueError(f"{w.side} is not a wall: y axis is periodic")
        speeds[w.side] = float(w.tangential_speed)
    return speeds


def thom_vorticity(psi0: float, psi1: float, h: float, u: float) -> float:
    """Wall vorticity -(2/h^2)(psi1 - psi0) + 2u/h."""
    if h <= 0:
        raise ValueError(f"wall-normal spacing must be positive, got {h}")
    return -(2.0 / (h * h)) * (psi1 - psi0) + 2.0 * u / h


@dataclass(frozen=True)
class WallVorticity:
    """Vorticity values on the wall nodes of a grid.

    Arrays are present only for walls of non-periodic axes.  Corner
    values (both axes bounded) are the average of the two adjacent
    walls' formulas, stored identically in both arrays so imposing them
    is order-independent.
    """

    grid: Grid
    left: np.ndarray | None = None
    right: np.ndarray | None = None
    bottom: np.ndarray | None = None
    top: np.ndarray | None = None

    def impose(self, values: np.ndarray) -> None:
        """Overwrite wall rows/columns of a (nx, ny) array in place."""
        if self.left is not None:
            values[0, :] = self.left
        if self.right is not None:
            values[-1, :] = self.right
        if self.bottom is not None:
            values[:, 0] = self.bottom
        if self.top is not None:
            values[:, -1] = self.top


def apply_wall_vorticity(psi: ScalarField, walls, g: Grid) -> WallVorticity:
    """Thom wall vorticity from the most recent streamfunction.

    h is the first interior spacing along the inward normal; psi1 the
    streamfunction one node inside.  Corners average the two walls.
    """
    if not psi.grid.same_layout(g):
        raise ValueError("streamfunction does not live on the given grid")
    speeds = wall_speed_map(walls, g)
    v = psi.values
    x, y = g.x_coords, g.y_coords
    left = right = bottom = top = None

    if not g.periodic_x:
        h = x[1] - x[0]
        left = thom_vorticity_array(v[0, :], v[1, :], h, speeds[Side.LEFT])
        h = x[-1] - x[-2]
        right = thom_vorticity_array(v[-1, :], v[-2, :], h, speeds[Side.RIGHT])
    if not g.periodic_y:
        h = y[1] - y[0]
        bottom = thom_vorticity_array(v[:, 0], v[:, 1], h, speeds[Side.BOTTOM])
        h = y[-1] - y[-2]
        top = thom_vorticity_array(v[:, -1], v[:, -2], h, speeds[Side.TOP])

    if left is not None and bottom is not None:
        for (i, j), (wx, wy) in {
            (0, 0): (left, bottom),
            (-1, 0): (right, bottom),
            (0, -1): (left, top),
            (-1, -1): (right, top),
        }.items():
            avg = 0.5 * (wx[j] + wy[i])
            wx[j] = avg
            wy[i] = avg
    return WallVorticity(grid=g, left=left, right=right, bottom=bottom, top=top)


def thom_vorticity_array(psi0, psi1, h, u):
    """Vectorized Thom formula along a whole wall."""
    if h <= 0:
        raise ValueError(f"wall-normal spacing must be positive, got {h}")
    return -(2.0 / (h * h)) * (np.asarray(psi1) - np.asarray(psi0)) + 2.0 * u / h
