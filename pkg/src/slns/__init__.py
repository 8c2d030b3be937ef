"""Semi-Lagrangian solver for the 2D incompressible Navier-Stokes equations.

The solver works in vorticity-streamfunction variables on structured
tensor-product grids.  Both advection and diffusion are treated by
backward characteristic tracing combined with a four-point stencil, so
the only implicit work per time step is one Poisson solve for the
streamfunction.

Subpackage layout:

``grid``
    Structured grids, scalar/vector fields, boundary clamping.
``interpolation``
    Bilinear, monotonized-bicubic and tensor-product cubic-spline
    interpolation of grid data at arbitrary points.
``trajectory``
    Backward characteristic tracing with CFL-limited substeps.
``stencil``
    Four-point diffusion stencils with near-wall moment corrections.
``sl_update``
    The combined advection-diffusion vorticity update.
``elliptic``
    Poisson solve for the streamfunction and velocity recovery.
``boundary``
    Wall vorticity values from the streamfunction (no-slip walls).
``driver``
    Time stepping loop, run configuration, diagnostics history.
``cases``
    Built-in benchmark problems (analytic decay, lid-driven cavity).
``cli``
    Command line entry point (``slns run|convergence|cavity``).
"""

from slns.boundary import Side, WallSpec
from slns.cases import (
    CAVITY_REFERENCE,
    CONVERGENCE_TABLE,
    LidDrivenCavityCase,
    TaylorGreenCase,
    cavity_diagnostics,
    centerline_profiles,
    convergence_run_config,
    lid_driven_cavity,
)
from slns.driver import (
    HistoryRecord,
    RunConfig,
    SolverAbort,
    SolverState,
    initialize,
    run,
    step,
)
from slns.grid import (
    Grid,
    ScalarField,
    VectorField,
    make_uniform_grid,
    make_boundary_refined_grid,
)
from slns.interpolation import InterpolationScheme

__all__ = [
    "Grid",
    "ScalarField",
    "VectorField",
    "make_uniform_grid",
    "make_boundary_refined_grid",
    "Side",
    "WallSpec",
    "InterpolationScheme",
    "RunConfig",
    "SolverState",
    "SolverAbort",
    "HistoryRecord",
    "initialize",
    "step",
    "run",
    "TaylorGreenCase",
    "LidDrivenCavityCase",
    "lid_driven_cavity",
    "convergence_run_config",
    "cavity_diagnostics",
    "centerline_profiles",
    "CONVERGENCE_TABLE",
    "CAVITY_REFERENCE",
]
