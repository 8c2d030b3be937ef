"""Poisson solve for the streamfunction and velocity reconstruction.

The discrete operator approximates -Laplace on the tensor-product grid.
It is assembled in the symmetric finite-element form

    A = kron(Kx, My) + kron(Mx, Ky)

with per-axis 1D stiffness matrices K (entries 1/h per interval) and
lumped mass matrices M (node weight = half the sum of adjacent interval
widths).  Dividing a row of A by the node's 2D mass recovers the
finite-difference second-difference row; on uniform grids that is the
classical five-point stencil with entries 1/h^2.  Keeping the symmetric
form makes the matrix exactly symmetric on nonuniform grids, so the
finite-difference equation (A psi)/m = omega is solved as A psi = m*omega.

Supported boundary conditions: homogeneous Dirichlet (wall-bounded
grids, streamfunction zero on walls) and fully periodic.  The periodic
operator is singular with constant nullspace; its data is projected to
zero mass-weighted mean and the solution normalized the same way.

The solve uses a cached sparse LU factorization.  The operator is
reused across time steps, so the factorization cost is paid once per
run; for the grid sizes in scope (<= 200x200) this outperforms iterating.
"""

from __future__ import annotations

from enum import Enum

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import factorized

from slns.boundary import Side, wall_speed_map, wall_tangent
from slns.grid import Grid, ScalarField, VectorField

__all__ = [
    "PoissonBC",
    "PoissonOperator",
    "PoissonSolveError",
    "assemble_poisson",
    "solve_poisson",
    "velocity_from_streamfunction",
]


class PoissonBC(Enum):
    DIRICHLET_ZERO = "dirichlet_zero"
    PERIODIC = "periodic"


class PoissonSolveError(RuntimeError):
    """Raised when the linear solve misses the residual contract."""


def _axis_matrices(coords, periodic, period):
    """1D stiffness and lumped mass over the axis unknowns.

    Dirichlet: unknowns are the interior nodes 1..n-2 and wall values
    are identically zero, so no boundary terms appear.  Periodic: all n
    nodes are unknowns and the last interval wraps.
    """
    if periodic:
        n = coords.size
        h = np.append(np.diff(coords), coords[0] + period - coords[-1])
        rows, cols, vals = [], [], []
        for i in range(n):
            ip = (i + 1) % n
            im = (i - 1) % n
            rows += [i, i, i]
            cols += [im, i, ip]
            vals += [-1.0 / h[im], 1.0 / h[im] + 1.0 / h[i], -1.0 / h[i]]
        k = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
        m = (h[np.arange(n) - 1] + h) / 2.0
        return k, m
    h = np.diff(coords)
    nu = coords.size - 2  # unknown count
    hl = h[:-1]
    hr = h[1:]
    k = sp.diags(
        [
            -1.0 / hr[:-1],
            1.0 / hl + 1.0 / hr,
            -1.0 / hr[:-1],
        ],
        offsets=[-1, 0, 1],
        shape=(nu, nu),
        format="csr",
    )
    m = (hl + hr) / 2.0
    return k, m


class PoissonOperator:
    """Assembled discrete -Laplace with cached factorization."""

    def __init__(self, grid: Grid, bc: PoissonBC):
        if bc is PoissonBC.PERIODIC:
            if not (grid.periodic_x and grid.periodic_y):
                raise ValueError("periodic operator needs a fully periodic grid")
        else:
            if grid.periodic_x or grid.periodic_y:
                raise ValueError(
                    "Dirichlet operator needs a wall-bounded grid; mixed "
                    "periodicity is not supported"
                )
        self.grid = grid
        self.bc = bc

        kx, mx = _axis_matrices(grid.x_coords, grid.periodic_x, grid.period_x)
        ky, my = _axis_matrices(grid.y_coords, grid.periodic_y, grid.period_y)
        self.matrix = (
            sp.kron(kx, sp.diags(my)) + sp.kron(sp.diags(mx), ky)
        ).tocsc()
        self.mass = np.kron(mx, my)
        if bc is PoissonBC.PERIODIC:
            self._ux = np.arange(grid.nx)
            self._uy = np.arange(grid.ny)
        else:
            self._ux = np.arange(1, grid.nx - 1)
            self._uy = np.arange(1, grid.ny - 1)
        self._solve = None

    @property
    def unknown_shape(self) -> tuple[int, int]:
        return (self._ux.size, self._uy.size)

    def _gather(self, values: np.ndarray) -> np.ndarray:
        return values[np.ix_(self._ux, self._uy)].ravel()

    def _scatter(self, flat: np.ndarray) -> np.ndarray:
        out = np.zeros(self.grid.shape)
        out[np.ix_(self._ux, self._uy)] = flat.reshape(self.unknown_shape)
        return out

    def apply(self, psi: ScalarField) -> ScalarField:
        """Finite-difference -Laplace of a field.

        Returns a full-shaped field; Dirichlet boundary rows are zero
        (the operator only acts on unknown nodes).
        """
        if not psi.grid.same_layout(self.grid):
            raise ValueError("field does not live on the operator's grid")
        flat = self.matrix @ self._gather(psi.values)
        return ScalarField(self.grid, self._scatter(flat / self.mass))

    def _factor(self):
        if self._solve is None:
            a = self.matrix
            if self.bc is PoissonBC.PERIODIC:
                # Pin the first unknown to lift the constant nullspace.
                # Valid because the data is projected to zero total mass
                # first, making the unpinned system consistent.
                a = a.tolil(copy=True)
                a[0, :] = 0.0
                a[0, 0] = 1.0
                a = a.tocsc()
            self._solve = factorized(a)
        return self._solve


def assemble_poisson(g: Grid, bc: PoissonBC) -> PoissonOperator:
    return PoissonOperator(g, bc)


def solve_poisson(
    op: PoissonOperator, omega: ScalarField, tol: float = 1e-10
) -> ScalarField:
    """Streamfunction with -Laplace(psi) = omega on the unknown nodes.

    Dirichlet solutions are zero on all walls.  Periodic data is
    projected to zero mass-weighted mean first (discrete compatibility)
    and the solution is normalized to zero mean.  The relative residual
    of the finite-difference equation is checked against ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not omega.grid.same_layout(op.grid):
        raise ValueError("field does not live on the operator's grid")
    w = op._gather(omega.values)
    data_scale = np.linalg.norm(w)
    if op.bc is PoissonBC.PERIODIC:
        w = w - (op.mass @ w) / op.mass.sum()
    b = op.mass * w
    if op.bc is PoissonBC.PERIODIC:
        b[0] = 0.0
    x = op._factor()(b)
    if op.bc is PoissonBC.PERIODIC:
        x = x - (op.mass @ x) / op.mass.sum()

    # Residual of the finite-difference form (A x)/m = w, scaled by the
    # original data so that data with a dominant (projected-out) mean
    # part does not inflate round-off into a spurious failure.
    r = (op.matrix @ x) / op.mass - w
    resid = np.linalg.norm(r) / data_scale if data_scale > 0 else np.linalg.norm(r)
    if not np.isfinite(resid) or resid > tol:
        raise PoissonSolveError(
            f"Poisson solve residual {resid:.3e} exceeds tolerance {tol:.1e}"
        )
    return ScalarField(op.grid, op._scatter(x))


def velocity_from_streamfunction(psi: ScalarField, walls=()) -> VectorField:
    """Velocity (d psi/dy, -d psi/dx) by centered differences.

    Interior nodes use the centered difference over the two adjacent
    intervals, (f_{i+1} - f_{i-1})/(h_l + h_r); periodic axes wrap.
    Wall nodes carry the physical boundary velocity: tangential speed
    times the wall tangent (counterclockwise convention), zero normal
    component; corners average the two adjacent walls.
    """
    g = psi.grid
    v = psi.values
    u1 = np.zeros(g.shape)
    u2 = np.zeros(g.shape)

    def centered(values, coords, periodic, period, axis):
        """d(values)/d(coord) along one axis, interior/periodic nodes."""
        out = np.zeros_like(values)
        arr = np.moveaxis(values, axis, 0)
        res = np.moveaxis(out, axis, 0)
        if periodic:
            up = np.roll(arr, -1, axis=0)
            dn = np.roll(arr, 1, axis=0)
            c = np.concatenate([coords, [coords[0] + period]])
            width = np.empty(coords.size)
            width[0] = c[1] - (coords[-1] - period)
            width[1:-1] = c[2:-1] - c[:-3]
            width[-1] = c[-1] - c[-3]
            res[:] = (up - dn) / width[:, None]
        else:
            res[1:-1] = (arr[2:] - arr[:-2]) / (
                (coords[2:] - coords[:-2])[:, None]
            )
        return out

    u1[:] = centered(v, g.y_coords, g.periodic_y, g.period_y, axis=1)
    u2[:] = -centered(v, g.x_coords, g.periodic_x, g.period_x, axis=0)

    if g.has_walls:
        speeds = wall_speed_map(walls, g)

        def fill(side, index, axis):
            tx, ty = wall_tangent(side)
            s = speeds[side]
            if axis == 0:
                u1[index, :] = s * tx
                u2[index, :] = s * ty
            else:
                u1[:, index] = s * tx
                u2[:, index] = s * ty

        if not g.periodic_x:
            fill(Side.LEFT, 0, 0)
            fill(Side.RIGHT, -1, 0)
        if not g.periodic_y:
            fill(Side.BOTTOM, 0, 1)
            fill(Side.TOP, -1, 1)
        if not (g.periodic_x or g.periodic_y):
            for i, j, sa, sb in (
                (0, 0, Side.LEFT, Side.BOTTOM),
                (-1, 0, Side.RIGHT, Side.BOTTOM),
                (0, -1, Side.LEFT, Side.TOP),
                (-1, -1, Side.RIGHT, Side.TOP),
            ):
                va = np.array(wall_tangent(sa)) * speeds[sa]
                vb = np.array(wall_tangent(sb)) * speeds[sb]
                u1[i, j], u2[i, j] = 0.5 * (va + vb)

    return VectorField(ScalarField(g, u1), ScalarField(g, u2))
