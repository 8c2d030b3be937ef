"""Displacement stencils realizing diffusion along traced characteristics.

Away from boundaries the vorticity update averages the interpolated
field at four points displaced from the characteristic foot by +-delta
along each axis, delta = sqrt(4 nu dt), each carrying weight 1/4.  The
displacement/weight pairs match the zeroth, first and second moments of
the exact diffusion kernel per axis:

    sum(alpha)              = 1/2
    alpha+ d+ - alpha- d-   = 0
    alpha+ d+^2 + alpha- d-^2 = 2 nu dt

When a displaced point would exit through a wall, the exit-side
displacement is shortened to the wall distance d_M and the opposite one
lengthened to 4 nu dt / d_M, with weights rebalanced so the three
moment conditions still hold.  The third moment is sacrificed there,
which is what limits the near-wall time accuracy.  Two degenerate
situations (foot exactly on a wall; the lengthened displacement exiting
the opposite wall) fall back to clamped points and are flagged, since
some moment condition is then unsatisfiable.

Both axes are corrected independently; a foot near a corner may carry
corrections on both.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from slns.grid import Grid

__all__ = [
    "DiffusionStencil",
    "interior_delta",
    "build_stencil",
    "build_stencil_arrays",
]


@dataclass(frozen=True)
class DiffusionStencil:
    """Displacements (k, 2) and matching weights (k,) for one foot.

    ``corrected_x``/``corrected_y`` mark axes where the near-wall
    rebalancing was applied; ``degenerate`` marks stencils whose moment
    conditions could not all be met (wall-touching foot, or opposite
    wall closer than the lengthened displacement).
    """

    displacements: np.ndarray
    weights: np.ndarray
    corrected_x: bool = False
    corrected_y: bool = False
    degenerate: bool = False

    def __post_init__(self) -> None:
        d = np.asarray(self.displacements, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if d.ndim != 2 or d.shape[1] != 2 or w.shape != (d.shape[0],):
            raise ValueError("displacements must be (k, 2), weights (k,)")
        if abs(w.sum() - 1.0) > 1e-14:
            raise ValueError(f"weights sum to {w.sum()!r}, expected 1")
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "displacements", d)
        object.__setattr__(self, "weights", w)


def interior_delta(nu: float, dt: float) -> float:
    """Interior displacement magnitude sqrt(4 nu dt)."""
    if nu < 0:
        raise ValueError(f"diffusivity must be nonnegative, got {nu}")
    if dt <= 0:
        raise ValueError(f"time step must be positive, got {dt}")
    return sqrt(4.0 * nu * dt)


def _axis_stencil(z, lo, hi, periodic, delta, nu_dt_4):
    """Vectorized one-axis displacements and weights.

    Parameters are arrays over feet (z) and scalars for the rest;
    ``nu_dt_4 = 4 nu dt = delta^2``.  Returns (d_neg, d_pos, w_neg,
    w_pos, corrected, degenerate) where d_neg is the magnitude of the
    displacement in the negative axis direction.
    """
    m = z.shape[0]
    d_neg = np.full(m, delta)
    d_pos = np.full(m, delta)
    w_neg = np.full(m, 0.25)
    w_pos = np.full(m, 0.25)
    corrected = np.zeros(m, dtype=bool)
    degenerate = np.zeros(m, dtype=bool)
    if periodic:
        return d_neg, d_pos, w_neg, w_pos, corrected, degenerate

    dist_lo = np.maximum(z - lo, 0.0)
    dist_hi = np.maximum(hi - z, 0.0)
    exit_lo = delta > dist_lo
    exit_hi = delta > dist_hi
    need = exit_lo | exit_hi
    if not np.any(need):
        return d_neg, d_pos, w_neg, w_pos, corrected, degenerate
    corrected[:] = need

    # Wall side: the violated wall, or the nearer one if both violated
    # (both-violated is already a flagged fallback regime).
    lo_side = exit_lo & (~exit_hi | (dist_lo <= dist_hi))
    d_wall = np.where(lo_side, dist_lo, dist_hi)
    d_room = np.where(lo_side, dist_hi, dist_lo)

    on_wall = need & (d_wall == 0.0)
    degenerate |= on_wall
    # Lengthened opposite displacement, capped at the opposite wall.
    with np.errstate(divide="ignore", invalid="ignore"):
        d_opp = np.where(d_wall > 0, nu_dt_4 / np.where(d_wall > 0, d_wall, 1.0), np.inf)
    over = need & (d_opp > d_room)
    degenerate |= over
    d_opp = np.minimum(d_opp, d_room)

    # Weight of the wall-side entry; reduces to 1/4 when d_opp == d_wall.
    # Both weights come from the same quotient: computing a_opp as
    # 0.5 - a_wall would cancel catastrophically for wall-hugging feet
    # (a_wall -> 1/2) and break the first-moment identity.
    denom = np.where(d_opp + d_wall > 0, d_opp + d_wall, 1.0)
    a_wall = np.where(d_opp + d_wall > 0, 0.5 * d_opp / denom, 0.25)
    a_opp = np.where(d_opp + d_wall > 0, 0.5 * d_wall / denom, 0.25)
    # Wall-touching fallback keeps plain 1/4 weights on clamped points.
    a_wall = np.where(on_wall, 0.25, a_wall)
    a_opp = np.where(on_wall, 0.25, a_opp)
    d_opp = np.where(on_wall, np.minimum(delta, d_room), d_opp)

    d_neg = np.where(need, np.where(lo_side, d_wall, d_opp), d_neg)
    d_pos = np.where(need, np.where(lo_side, d_opp, d_wall), d_pos)
    w_neg = np.where(need, np.where(lo_side, a_wall, a_opp), w_neg)
    w_pos = np.where(need, np.where(lo_side, a_opp, a_wall), w_pos)
    return d_neg, d_pos, w_neg, w_pos, corrected, degenerate


def build_stencil_arrays(zx: np.ndarray, zy: np.ndarray, nu: float, dt: float,
                         g: Grid):
    """Stencils for a batch of feet, as flat arrays.

    Returns ``(qx, qy, w, corrected_x, corrected_y, degenerate)`` with
    qx, qy, w of shape (m, 4) in entry order (x-, x+, y-, y+); qx/qy are
    absolute evaluation coordinates, nudged into the closure so
    downstream interpolation never sees an out-of-domain point.
    Requires nu > 0 (the nu = 0 stencil collapses to the foot itself and
    has no displaced points).
    """
    if nu <= 0:
        raise ValueError("build_stencil_arrays requires nu > 0")
    zx = np.asarray(zx, dtype=float)
    zy = np.asarray(zy, dtype=float)
    delta = interior_delta(nu, dt)
    nu_dt_4 = 4.0 * nu * dt

    dxn, dxp, wxn, wxp, cx, degx = _axis_stencil(
        zx, g.x_min, g.x_max, g.periodic_x, delta, nu_dt_4)
    dyn, dyp, wyn, wyp, cy, degy = _axis_stencil(
        zy, g.y_min, g.y_max, g.periodic_y, delta, nu_dt_4)

    m = zx.shape[0]
    qx = np.empty((m, 4))
    qy = np.empty((m, 4))
    w = np.empty((m, 4))
    qx[:, 0] = zx - dxn
    qx[:, 1] = zx + dxp
    qx[:, 2] = zx
    qx[:, 3] = zx
    qy[:, 0] = zy
    qy[:, 1] = zy
    qy[:, 2] = zy - dyn
    qy[:, 3] = zy + dyp
    w[:, 0] = wxn
    w[:, 1] = wxp
    w[:, 2] = wyn
    w[:, 3] = wyp
    if not g.periodic_x:
        np.clip(qx, g.x_min, g.x_max, out=qx)
    if not g.periodic_y:
        np.clip(qy, g.y_min, g.y_max, out=qy)
    return qx, qy, w, cx, cy, degx | degy


def build_stencil(z, nu: float, dt: float, g: Grid) -> DiffusionStencil:
    """Stencil for a single characteristic foot.

    With nu = 0 the four displaced points collapse onto the foot and the
    stencil is a single entry of weight 1.  The displacements are the
    defining offset values, not point differences after embedding at z
    (those pick up ulp(|z|) representation noise and would spoil the
    moment identities at small nu dt).
    """
    zx, zy = float(z[0]), float(z[1])
    if nu == 0.0:
        return DiffusionStencil(np.zeros((1, 2)), np.ones(1))
    delta = interior_delta(nu, dt)
    nu_dt_4 = 4.0 * nu * dt
    dxn, dxp, wxn, wxp, cx, degx = _axis_stencil(
        np.array([zx]), g.x_min, g.x_max, g.periodic_x, delta, nu_dt_4)
    dyn, dyp, wyn, wyp, cy, degy = _axis_stencil(
        np.array([zy]), g.y_min, g.y_max, g.periodic_y, delta, nu_dt_4)
    disp = np.array([
        [-dxn[0], 0.0],
        [dxp[0], 0.0],
        [0.0, -dyn[0]],
        [0.0, dyp[0]],
    ])
    w = np.array([wxn[0], wxp[0], wyn[0], wyp[0]])
    return DiffusionStencil(
        displacements=disp,
        weights=w,
        corrected_x=bool(cx[0]),
        corrected_y=bool(cy[0]),
        degenerate=bool(degx[0] or degy[0]),
    )
