"""Backward tracing of characteristic curves.

Each grid node is carried backward through the (time-frozen) velocity
field over one time step, split into enough substeps to respect a CFL
bound on the substep Courant number.  The foot of the characteristic is
where the vorticity is interpolated from; feet that leave the domain
through a wall are clamped to the closest boundary point, feet crossing
a periodic edge wrap around.

The velocity field is frozen in time during tracing.  Second-order
accuracy in time comes from evaluating that frozen field at the half
step, via the two-level extrapolation (3/2) u^n - (1/2) u^{n-1}, and
using Heun substeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import ceil

import numpy as np

from slns.grid import Grid, ScalarField, VectorField, clamp_points, wrap_points
from slns.interpolation import (
    InterpolationScheme,
    apply_bilinear_weights,
    bilinear_weights,
    make_interpolator,
)

__all__ = [
    "TraceScheme",
    "TracerConfig",
    "extrapolate_velocity",
    "substep_count",
    "trace_foot",
    "trace_feet",
]


class TraceScheme(Enum):
    EULER = "euler"
    HEUN = "heun"


@dataclass(frozen=True)
class TracerConfig:
    """Controls for the backward characteristic tracer."""

    scheme: TraceScheme = TraceScheme.HEUN
    cfl_max: float = 0.9
    velocity_scheme: InterpolationScheme = InterpolationScheme.BILINEAR

    def __post_init__(self) -> None:
        if not 0.0 < self.cfl_max <= 1.0:
            raise ValueError(f"cfl_max must lie in (0, 1], got {self.cfl_max}")


def extrapolate_velocity(u_n: VectorField, u_prev: VectorField) -> VectorField:
    """Velocity at the half step: (3/2) u^n - (1/2) u^{n-1}."""
    if not u_n.grid.same_layout(u_prev.grid):
        raise ValueError("velocity fields live on different grids")
    g = u_n.grid
    return VectorField(
        ScalarField(g, 1.5 * u_n.u1.values - 0.5 * u_prev.u1.values),
        ScalarField(g, 1.5 * u_n.u2.values - 0.5 * u_prev.u2.values),
    )


def substep_count(u_bound: float, dt: float, h_min: float, cfl_max: float) -> int:
    """Substeps needed so each substep moves at most cfl_max cells.

    N = max(1, ceil(u_bound dt / (cfl_max h_min))).  The tiny relative
    shrink keeps exact-boundary inputs (ratio an integer up to roundoff)
    from being pushed to the next integer.
    """
    if dt <= 0 or h_min <= 0 or cfl_max <= 0:
        raise ValueError("dt, h_min and cfl_max must be positive")
    if u_bound < 0:
        raise ValueError("u_bound must be nonnegative")
    ratio = u_bound * dt / (cfl_max * h_min)
    return max(1, ceil(ratio * (1.0 - 1e-12)))


class _VelocitySampler:
    """Evaluates both velocity components at arbitrary points.

    For the bilinear default, the cell search and weights are computed
    once and applied to both components.  Other schemes fall back to two
    independent interpolators.
    """

    def __init__(self, u: VectorField, scheme: InterpolationScheme):
        self._u = u
        self._scheme = scheme
        if scheme is not InterpolationScheme.BILINEAR:
            self._i1 = make_interpolator(u.u1, scheme)
            self._i2 = make_interpolator(u.u2, scheme)

    def __call__(self, px, py):
        if self._scheme is InterpolationScheme.BILINEAR:
            w = bilinear_weights(self._u.grid, px, py)
            return (
                apply_bilinear_weights(self._u.u1.values, *w),
                apply_bilinear_weights(self._u.u2.values, *w),
            )
        return self._i1.evaluate(px, py), self._i2.evaluate(px, py)


def _project(px, py, g: Grid):
    """Bring points back into the domain: clamp walls, wrap periodic."""
    px, py = clamp_points(px, py, g)
    return wrap_points(px, py, g)


def trace_feet(
    px: np.ndarray,
    py: np.ndarray,
    u_half: VectorField,
    dt: float,
    cfg: TracerConfig,
    n_substeps: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Feet of the characteristics starting at (px, py), vectorized.

    The velocity field is frozen; substep count defaults to the CFL
    rule with the global speed bound.  Returned feet lie in the domain
    closure (walls) or the base period (periodic axes).
    """
    g = u_half.grid
    if n_substeps is None:
        n_substeps = substep_count(
            u_half.max_speed(), dt, g.min_spacing(), cfg.cfl_max
        )
    dtau = dt / n_substeps
    sample = _VelocitySampler(u_half, cfg.velocity_scheme)

    px = np.array(px, dtype=float, copy=True)
    py = np.array(py, dtype=float, copy=True)
    for _ in range(n_substeps):
        v1, v2 = sample(px, py)
        if cfg.scheme is TraceScheme.EULER:
            px, py = _project(px - dtau * v1, py - dtau * v2, g)
        else:
            qx, qy = _project(px - dtau * v1, py - dtau * v2, g)
            w1, w2 = sample(qx, qy)
            px, py = _project(
                px - 0.5 * dtau * (v1 + w1),
                py - 0.5 * dtau * (v2 + w2),
                g,
            )
        if not (np.all(np.isfinite(px)) and np.all(np.isfinite(py))):
            raise FloatingPointError(
                "non-finite position during characteristic tracing"
            )
    return px, py


def trace_foot(
    x: tuple[float, float],
    u_half: VectorField,
    dt: float,
    cfg: TracerConfig,
    g: Grid,
    n_substeps: int | None = None,
) -> tuple[float, float]:
    """Single-point convenience wrapper around trace_feet."""
    if not u_half.grid.same_layout(g):
        raise ValueError("velocity field does not live on the given grid")
    fx, fy = trace_feet(
        np.array([x[0]], dtype=float),
        np.array([x[1]], dtype=float),
        u_half,
        dt,
        cfg,
        n_substeps=n_substeps,
    )
    return (float(fx[0]), float(fy[0]))
