"""Structured tensor-product grids and fields living on them.

Grids are Cartesian products of two strictly increasing coordinate
arrays.  An axis may be periodic, in which case the stored nodes are the
distinct representatives and the last interval wraps around to the first
node; index arithmetic on periodic axes is modular.  Nonuniform spacing
is allowed (the cavity benchmark refines toward the walls), but some
consumers (the bicubic interpolant) require per-axis uniformity and
check for it.

All containers here are immutable after construction so they can be
shared freely between solver stages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "Grid",
    "ScalarField",
    "VectorField",
    "make_uniform_grid",
    "make_boundary_refined_grid",
    "clamp_to_boundary",
    "clamp_points",
    "wrap_points",
]

# Relative tolerance used when deciding whether an axis is uniformly
# spaced.  Coordinates built by linspace differ from exact uniformity by
# a few ulp, far below this.
_UNIFORM_RTOL = 1e-9


@dataclass(frozen=True)
class Grid:
    """Tensor-product grid with optional per-axis periodicity.

    Parameters
    ----------
    x_coords, y_coords : ndarray
        Strictly increasing node positions.  For a periodic axis these
        are the distinct representatives; the point ``x_coords[0] +
        period_x`` is identified with ``x_coords[0]``.
    periodic_x, periodic_y : bool
        Axis periodicity flags.
    period_x, period_y : float or None
        Axis period; required for periodic axes, must exceed the
        coordinate span so the wrap interval is positive.
    """

    x_coords: np.ndarray
    y_coords: np.ndarray
    periodic_x: bool = False
    periodic_y: bool = False
    period_x: float | None = None
    period_y: float | None = None

    def __post_init__(self) -> None:
        for name in ("x_coords", "y_coords"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.ndim != 1 or arr.size < 3:
                raise ValueError(
                    f"{name} must be a 1D array with at least 3 nodes, "
                    f"got shape {arr.shape}"
                )
            if not np.all(np.diff(arr) > 0):
                raise ValueError(f"{name} must be strictly increasing")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite entries")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        for axis, periodic, period, coords in (
            ("x", self.periodic_x, self.period_x, self.x_coords),
            ("y", self.periodic_y, self.period_y, self.y_coords),
        ):
            if periodic:
                if period is None:
                    raise ValueError(f"periodic axis {axis} requires a period")
                span = coords[-1] - coords[0]
                if not period > span:
                    raise ValueError(
                        f"period along {axis} ({period}) must exceed the "
                        f"coordinate span ({span}) so the wrap interval is "
                        "positive"
                    )
            elif period is not None:
                raise ValueError(f"period given for non-periodic axis {axis}")

    # -- basic geometry -------------------------------------------------

    @property
    def nx(self) -> int:
        return self.x_coords.size

    @property
    def ny(self) -> int:
        return self.y_coords.size

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    @property
    def x_min(self) -> float:
        return float(self.x_coords[0])

    @property
    def y_min(self) -> float:
        return float(self.y_coords[0])

    @property
    def x_max(self) -> float:
        """Upper domain bound: last node, or first node + period."""
        if self.periodic_x:
            return float(self.x_coords[0] + self.period_x)
        return float(self.x_coords[-1])

    @property
    def y_max(self) -> float:
        if self.periodic_y:
            return float(self.y_coords[0] + self.period_y)
        return float(self.y_coords[-1])

    def x_spacings(self) -> np.ndarray:
        """Interval widths along x; includes the wrap interval if periodic."""
        d = np.diff(self.x_coords)
        if self.periodic_x:
            wrap = self.x_coords[0] + self.period_x - self.x_coords[-1]
            d = np.append(d, wrap)
        return d

    def y_spacings(self) -> np.ndarray:
        d = np.diff(self.y_coords)
        if self.periodic_y:
            wrap = self.y_coords[0] + self.period_y - self.y_coords[-1]
            d = np.append(d, wrap)
        return d

    def min_spacing(self) -> float:
        """Smallest interval width over both axes."""
        return float(min(self.x_spacings().min(), self.y_spacings().min()))

    def uniform_x(self) -> bool:
        d = self.x_spacings()
        return bool(np.all(np.abs(d - d[0]) <= _UNIFORM_RTOL * abs(d[0])))

    def uniform_y(self) -> bool:
        d = self.y_spacings()
        return bool(np.all(np.abs(d - d[0]) <= _UNIFORM_RTOL * abs(d[0])))

    @property
    def has_walls(self) -> bool:
        """True if at least one axis is bounded by physical walls."""
        return not (self.periodic_x and self.periodic_y)

    def node_mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Node coordinates as two (nx, ny) arrays, x-index first."""
        return np.meshgrid(self.x_coords, self.y_coords, indexing="ij")

    def same_layout(self, other: "Grid") -> bool:
        """True when both grids have identical nodes and periodicity."""
        return (
            self.periodic_x == other.periodic_x
            and self.periodic_y == other.periodic_y
            and self.period_x == other.period_x
            and self.period_y == other.period_y
            and np.array_equal(self.x_coords, other.x_coords)
            and np.array_equal(self.y_coords, other.y_coords)
        )


@dataclass(frozen=True)
class ScalarField:
    """Node values of a scalar quantity on a grid.

    values[i, j] corresponds to the node (x_coords[i], y_coords[j]).
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.shape != self.grid.shape:
            raise ValueError(
                f"values shape {arr.shape} does not match grid shape "
                f"{self.grid.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("field values must be finite")
        # Private copy: freezing a caller's buffer in place would be a
        # surprising side effect.
        arr = np.array(arr, dtype=float, order="C", copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @classmethod
    def zeros(cls, grid: Grid) -> "ScalarField":
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def from_function(
        cls, grid: Grid, fn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    ) -> "ScalarField":
        """Sample ``fn(x, y)`` at every node; fn must broadcast over arrays."""
        gx, gy = grid.node_mesh()
        return cls(grid, np.asarray(fn(gx, gy), dtype=float))

    def with_values(self, values: np.ndarray) -> "ScalarField":
        return ScalarField(self.grid, values)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class VectorField:
    """Velocity-like pair of scalar fields on a shared grid."""

    u1: ScalarField
    u2: ScalarField

    def __post_init__(self) -> None:
        if not self.u1.grid.same_layout(self.u2.grid):
            raise ValueError("vector components must live on the same grid")

    @property
    def grid(self) -> Grid:
        return self.u1.grid

    @classmethod
    def zeros(cls, grid: Grid) -> "VectorField":
        return cls(ScalarField.zeros(grid), ScalarField.zeros(grid))

    def max_speed(self) -> float:
        """Largest nodal speed, measured in the maximum norm per component."""
        return float(
            max(np.max(np.abs(self.u1.values)), np.max(np.abs(self.u2.values)))
        )


def make_uniform_grid(
    nx: int,
    ny: int,
    bounds: tuple[tuple[float, float], tuple[float, float]],
    periodic_x: bool = False,
    periodic_y: bool = False,
) -> Grid:
    """Equispaced grid over ``bounds = ((x0, x1), (y0, y1))``.

    On a periodic axis with n nodes over period L the spacing is L/n and
    the upper bound is not stored as a node (it is the wrap image of the
    first node).  On a bounded axis the spacing is L/(n-1) and both
    endpoints are nodes.
    """
    (x0, x1), (y0, y1) = bounds
    if nx < 3 or ny < 3:
        raise ValueError(f"need at least 3 nodes per axis, got {nx}x{ny}")
    if not (x1 > x0 and y1 > y0):
        raise ValueError(f"degenerate bounds {bounds}")

    def axis(n: int, lo: float, hi: float, periodic: bool) -> np.ndarray:
        if periodic:
            return lo + (hi - lo) * np.arange(n) / n
        return np.linspace(lo, hi, n)

    return Grid(
        x_coords=axis(nx, x0, x1, periodic_x),
        y_coords=axis(ny, y0, y1, periodic_y),
        periodic_x=periodic_x,
        periodic_y=periodic_y,
        period_x=(x1 - x0) if periodic_x else None,
        period_y=(y1 - y0) if periodic_y else None,
    )


def make_boundary_refined_grid(
    n: int,
    bounds: tuple[tuple[float, float], tuple[float, float]],
    fine_ratio: float = 0.5,
) -> Grid:
    """Wall-bounded n-by-n grid with two refined intervals at each wall.

    Per axis the n-1 intervals are: two of width ``fine_ratio*h`` at each
    wall and n-5 of width h in the interior, with h chosen so the widths
    sum to the axis length, i.e. h = L / (n - 5 + 4*fine_ratio).
    """
    if n < 7:
        raise ValueError(f"boundary-refined grid needs n >= 7, got {n}")
    if not 0.0 < fine_ratio < 1.0:
        raise ValueError(f"fine_ratio must lie in (0, 1), got {fine_ratio}")
    (x0, x1), (y0, y1) = bounds
    if not (x1 > x0 and y1 > y0):
        raise ValueError(f"degenerate bounds {bounds}")

    def axis(lo: float, hi: float) -> np.ndarray:
        length = hi - lo
        h = length / (n - 5 + 4.0 * fine_ratio)
        widths = np.full(n - 1, h)
        widths[:2] = fine_ratio * h
        widths[-2:] = fine_ratio * h
        coords = lo + np.concatenate(([0.0], np.cumsum(widths)))
        coords[-1] = hi  # absorb accumulated roundoff at the far wall
        return coords

    return Grid(x_coords=axis(x0, x1), y_coords=axis(y0, y1))


def clamp_to_boundary(
    p: tuple[float, float] | np.ndarray, g: Grid
) -> tuple[float, float]:
    """Closest point of the domain closure to p (per-axis clamping).

    Periodic axes are left untouched: a point can only "leave" the
    domain across a wall.  Interior points come back unchanged.
    """
    px, py = float(p[0]), float(p[1])
    if not g.periodic_x:
        px = min(max(px, g.x_min), g.x_max)
    if not g.periodic_y:
        py = min(max(py, g.y_min), g.y_max)
    return (px, py)


def clamp_points(px: np.ndarray, py: np.ndarray, g: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized clamp_to_boundary; returns new arrays."""
    if not g.periodic_x:
        px = np.clip(px, g.x_min, g.x_max)
    if not g.periodic_y:
        py = np.clip(py, g.y_min, g.y_max)
    return px, py


def wrap_points(px: np.ndarray, py: np.ndarray, g: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Map coordinates on periodic axes into the base period.

    Non-periodic axes pass through unchanged.  The result lies in
    [x_min, x_min + period) up to roundoff at the upper edge.
    """
    if g.periodic_x:
        px = g.x_min + np.mod(px - g.x_min, g.period_x)
    if g.periodic_y:
        py = g.y_min + np.mod(py - g.y_min, g.period_y)
    return px, py
