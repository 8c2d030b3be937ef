"""Time stepping: initialization, single steps, and full runs.

A full step executes five stages in a fixed order:

1. wall vorticity from the current streamfunction (Thom formula),
2. advecting velocity: half-step extrapolation (Heun tracer) or the
   current velocity (Euler tracer),
3. semi-Lagrangian advection-diffusion of vorticity at interior nodes,
4. Poisson solve for the new streamfunction,
5. velocity reconstruction from the new streamfunction.

The ordering matters: the vorticity interpolated in stage 3 carries the
stage-1 wall values, and those must come from the streamfunction of the
*current* step.  A characterization test guards against reordering.

Runs stop either at a fixed end time or at a steady state, detected by
the time-step-normalized change max|d omega|/dt falling below a
tolerance.  The steady residual normally decreases after an initial
transient; sustained growth is logged as a warning since it usually
means the time step is too aggressive for the grid.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import ceil

import numpy as np

from slns.boundary import apply_wall_vorticity
from slns.elliptic import (
    PoissonBC,
    PoissonOperator,
    assemble_poisson,
    solve_poisson,
    velocity_from_streamfunction,
)
from slns.grid import Grid, ScalarField, VectorField
from slns.interpolation import InterpolationScheme
from slns.sl_update import advance_vorticity, check_compatibility
from slns.trajectory import TracerConfig, TraceScheme, extrapolate_velocity

__all__ = [
    "RunConfig",
    "SolverState",
    "HistoryRecord",
    "SolverAbort",
    "initialize",
    "step",
    "run",
    "steady_residual",
]

log = logging.getLogger(__name__)


class SolverAbort(RuntimeError):
    """A stage of a time step failed; message names step and stage."""


@dataclass(frozen=True)
class RunConfig:
    """Physical and numerical parameters of a run.

    Exactly one stopping rule must be set: ``t_end`` (transient run) or
    ``steady_tol`` (march to steady state).
    """

    nu: float
    dt: float
    t_end: float | None = None
    steady_tol: float | None = None
    tracer: TracerConfig = field(default_factory=TracerConfig)
    interp_scheme: InterpolationScheme = InterpolationScheme.CUBIC_SPLINE
    output_every: int = 0
    max_steps: int = 1_000_000
    poisson_tol: float = 1e-10
    compat_threshold: float = 0.5

    def __post_init__(self) -> None:
        if self.nu < 0:
            raise ValueError(f"viscosity must be nonnegative, got {self.nu}")
        if self.dt <= 0:
            raise ValueError(f"time step must be positive, got {self.dt}")
        if (self.t_end is None) == (self.steady_tol is None):
            raise ValueError(
                "exactly one of t_end and steady_tol must be set"
            )
        if self.t_end is not None and self.t_end < 0:
            raise ValueError("t_end must be nonnegative")
        if self.steady_tol is not None and self.steady_tol <= 0:
            raise ValueError("steady_tol must be positive")
        if self.output_every < 0:
            raise ValueError("output cadence must be nonnegative")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass(frozen=True)
class SolverState:
    """Complete solver state after ``step_index`` steps (time t)."""

    omega: ScalarField
    psi: ScalarField
    u_now: VectorField
    u_prev: VectorField
    t: float = 0.0
    step_index: int = 0


@dataclass(frozen=True)
class HistoryRecord:
    """One diagnostics sample of a run."""

    step: int
    time: float
    residual: float
    max_abs_omega: float


def _poisson_bc(g: Grid) -> PoissonBC:
    return PoissonBC.PERIODIC if not g.has_walls else PoissonBC.DIRICHLET_ZERO


def initialize(
    cfg: RunConfig,
    walls,
    psi0: ScalarField | None = None,
    omega0: ScalarField | None = None,
    operator: PoissonOperator | None = None,
) -> SolverState:
    """Consistent state at t=0 from either a streamfunction or vorticity.

    Given psi0, the vorticity is the discrete -Laplace of it with Thom
    wall values; given omega0, one Poisson solve produces psi.  Both
    velocities start equal (the first extrapolated half-step velocity
    then equals u^0).
    """
    if (psi0 is None) == (omega0 is None):
        raise ValueError("exactly one of psi0 and omega0 must be given")
    g = (psi0 or omega0).grid
    if operator is None:
        operator = assemble_poisson(g, _poisson_bc(g))
    elif not operator.grid.same_layout(g):
        raise ValueError("operator assembled on a different grid")

    if psi0 is not None:
        psi = psi0
        om_vals = operator.apply(psi0).values.copy()
        if g.has_walls:
            apply_wall_vorticity(psi0, walls, g).impose(om_vals)
        omega = ScalarField(g, om_vals)
    else:
        omega = omega0
        psi = solve_poisson(operator, omega0, cfg.poisson_tol)

    u = velocity_from_streamfunction(psi, walls)
    return SolverState(omega=omega, psi=psi, u_now=u, u_prev=u)


def step(
    s: SolverState,
    cfg: RunConfig,
    walls,
    operator: PoissonOperator | None = None,
) -> SolverState:
    """Advance one time step through the five stages."""
    g = s.omega.grid
    if operator is None:
        operator = assemble_poisson(g, _poisson_bc(g))

    def stage(name, fn):
        try:
            return fn()
        except Exception as exc:
            raise SolverAbort(
                f"step {s.step_index + 1} aborted in stage '{name}': {exc}"
            ) from exc

    wall_bc = stage(
        "wall vorticity",
        lambda: apply_wall_vorticity(s.psi, walls, g) if g.has_walls else None,
    )
    if cfg.tracer.scheme is TraceScheme.HEUN:
        u_half = stage(
            "velocity extrapolation",
            lambda: extrapolate_velocity(s.u_now, s.u_prev),
        )
    else:
        u_half = s.u_now
    omega_new = stage(
        "advection-diffusion",
        lambda: advance_vorticity(
            s.omega, wall_bc, u_half, cfg.nu, cfg.dt, cfg.tracer,
            cfg.interp_scheme,
        ),
    )
    psi_new = stage(
        "poisson solve",
        lambda: solve_poisson(operator, omega_new, cfg.poisson_tol),
    )
    u_new = stage(
        "velocity reconstruction",
        lambda: velocity_from_streamfunction(psi_new, walls),
    )
    return SolverState(
        omega=omega_new,
        psi=psi_new,
        u_now=u_new,
        u_prev=s.u_now,
        t=s.t + cfg.dt,
        step_index=s.step_index + 1,
    )


def steady_residual(before: SolverState, after: SolverState, dt: float) -> float:
    """Steady-state metric max_i |omega_new - omega_old| / dt."""
    return float(
        np.max(np.abs(after.omega.values - before.omega.values)) / dt
    )


def _transient_step_count(t_end: float, dt: float) -> int:
    """Number of steps to reach t >= t_end, robust to roundoff."""
    if t_end == 0:
        return 0
    ratio = t_end / dt
    n = round(ratio)
    if abs(ratio - n) < 1e-9 * max(1.0, ratio):
        return max(0, n)
    return ceil(ratio)


def run(
    s: SolverState,
    cfg: RunConfig,
    walls,
    on_record=None,
    on_snapshot=None,
) -> tuple[SolverState, list[HistoryRecord]]:
    """Advance until the stopping rule fires; collect diagnostics.

    Records are appended every ``output_every`` steps (plus the final
    step); ``on_record`` is called with each fresh record, and
    ``on_snapshot`` with the matching full state (for output writers
    that need fields, not just scalar diagnostics).  Steady runs
    failing to converge within ``max_steps`` raise, reporting the last
    residual.
    """
    g = s.omega.grid
    operator = assemble_poisson(g, _poisson_bc(g))
    horizon = cfg.t_end if cfg.t_end is not None else cfg.dt * cfg.max_steps
    check_compatibility(
        cfg.nu, cfg.dt, max(horizon, cfg.dt), g.min_spacing(),
        cfg.compat_threshold,
    )

    history: list[HistoryRecord] = []

    def record(res, state):
        rec = HistoryRecord(
            step=state.step_index,
            time=state.t,
            residual=res,
            max_abs_omega=state.omega.max_abs(),
        )
        history.append(rec)
        if on_record is not None:
            on_record(rec)
        if on_snapshot is not None:
            on_snapshot(state)

    if cfg.t_end is not None:
        n_steps = _transient_step_count(cfg.t_end, cfg.dt)
        for k in range(n_steps):
            s_new = step(s, cfg, walls, operator)
            res = steady_residual(s, s_new, cfg.dt)
            s = s_new
            last = k == n_steps - 1
            if last or (cfg.output_every and
                        s.step_index % cfg.output_every == 0):
                record(res, s)
        return s, history

    best = np.inf
    growing = 0
    alerted = False
    for _ in range(cfg.max_steps):
        s_new = step(s, cfg, walls, operator)
        res = steady_residual(s, s_new, cfg.dt)
        s = s_new
        done = res < cfg.steady_tol
        if done or (cfg.output_every and
                    s.step_index % cfg.output_every == 0):
            record(res, s)
        if done:
            return s, history
        # Alert on sustained residual growth past the initial transient.
        if res < best:
            best = res
            growing = 0
        elif res > 2.0 * best and s.step_index > 50:
            growing += 1
            if growing > 25 and not alerted:
                log.warning(
                    "steady-state residual growing: %.3e at step %d "
                    "(best so far %.3e); time step may be too large",
                    res, s.step_index, best,
                )
                alerted = True
    raise RuntimeError(
        f"no steady state within {cfg.max_steps} steps; "
        f"last residual {res:.3e} (tolerance {cfg.steady_tol:.1e})"
    )
