"""One semi-Lagrangian vorticity update (advection + diffusion).

The new vorticity at an internal node is assembled in three stages:

1. trace the characteristic backward from the node to its foot,
2. displace the foot by the diffusion stencil points and weights,
3. interpolate the current vorticity there and take the weighted sum.

Wall nodes are not updated this way; their values come from Thom's
formula (imposed on the source field before interpolation, so feet
landing near a wall see the fresh boundary data) and are copied through
to the result.  With zero viscosity the stencil collapses to the foot
itself and the update is pure advection.

The update is explicit: its cost is interpolation only, and the time
step is not restricted by the diffusive CFL limit.  Accuracy does
degrade if the time step is pushed too far on a fixed grid; the
compatibility ratio quantifies that regime and the driver warns when it
is breached.
"""

from __future__ import annotations

import warnings

import numpy as np

from slns.grid import Grid, ScalarField, VectorField
from slns.boundary import WallVorticity
from slns.interpolation import InterpolationScheme, make_interpolator
from slns.stencil import build_stencil_arrays
from slns.trajectory import TracerConfig, trace_feet

__all__ = [
    "advance_vorticity",
    "compatibility_ratio",
    "check_compatibility",
    "CompatibilityWarning",
]


class CompatibilityWarning(UserWarning):
    """Time step too large for the grid to keep first-order accuracy."""


def _internal_nodes(g: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Meshgrid coordinates of the nodes updated by the scheme.

    Periodic axes have no boundary; wall axes exclude their two
    boundary layers (handled by the vorticity boundary condition).
    """
    ix = np.arange(g.nx) if g.periodic_x else np.arange(1, g.nx - 1)
    iy = np.arange(g.ny) if g.periodic_y else np.arange(1, g.ny - 1)
    return np.meshgrid(ix, iy, indexing="ij")


def advance_vorticity(
    omega: ScalarField,
    wall_vorticity: WallVorticity | None,
    u_half: VectorField,
    nu: float,
    dt: float,
    tracer: TracerConfig,
    scheme: InterpolationScheme,
) -> ScalarField:
    """Vorticity after one time step of length dt.

    ``u_half`` is the (frozen) advecting velocity, normally the
    half-step extrapolation.  ``wall_vorticity`` holds Thom boundary
    values computed from the current streamfunction; pass None on fully
    periodic grids.
    """
    g = omega.grid
    if not u_half.grid.same_layout(g):
        raise ValueError("velocity does not live on the vorticity grid")
    if nu < 0:
        raise ValueError(f"viscosity must be nonnegative, got {nu}")
    if dt <= 0:
        raise ValueError(f"time step must be positive, got {dt}")
    if g.has_walls and wall_vorticity is None:
        raise ValueError("wall-bounded grid needs wall vorticity values")

    source = omega.values.copy()
    if wall_vorticity is not None:
        wall_vorticity.impose(source)
    interp = make_interpolator(ScalarField(g, source), scheme)

    mix, miy = _internal_nodes(g)
    px = g.x_coords[mix].ravel()
    py = g.y_coords[miy].ravel()
    fx, fy = trace_feet(px, py, u_half, dt, tracer)

    if nu == 0.0:
        new_vals = interp.evaluate(fx, fy)
    else:
        qx, qy, w, _, _, _ = build_stencil_arrays(fx, fy, nu, dt, g)
        vals = interp.evaluate(qx.ravel(), qy.ravel()).reshape(qx.shape)
        new_vals = (w * vals).sum(axis=1)

    if not np.all(np.isfinite(new_vals)):
        k = int(np.argmax(~np.isfinite(new_vals)))
        raise FloatingPointError(
            f"non-finite vorticity produced at node "
            f"({int(mix.ravel()[k])}, {int(miy.ravel()[k])}), "
            f"position ({px[k]:.6g}, {py[k]:.6g})"
        )

    out = source
    out[mix.ravel(), miy.ravel()] = new_vals
    return ScalarField(g, out)


def compatibility_ratio(nu: float, dt: float, t_end: float, h: float) -> float:
    """Size of nu^(1/3) dt / (T^(2/3) h^(2/3)); must stay well below 1.

    This is the quantity controlling whether the near-wall accuracy
    loss of the corrected stencils stays subdominant over a run of
    length T.  h is the smallest grid spacing (conservative).
    """
    if min(dt, t_end, h) <= 0 or nu < 0:
        raise ValueError("need nu >= 0 and positive dt, t_end, h")
    return nu ** (1.0 / 3.0) * dt / (t_end ** (2.0 / 3.0) * h ** (2.0 / 3.0))


def check_compatibility(
    nu: float, dt: float, t_end: float, h: float, threshold: float = 0.5
) -> float:
    """Warn when the compatibility ratio exceeds the threshold."""
    ratio = compatibility_ratio(nu, dt, t_end, h)
    if ratio > threshold:
        warnings.warn(
            f"time step dt={dt:g} is large for grid spacing h={h:g} and "
            f"horizon T={t_end:g}: compatibility ratio {ratio:.3g} exceeds "
            f"{threshold:g}; expect degraded accuracy near boundaries",
            CompatibilityWarning,
            stacklevel=2,
        )
    return ratio
