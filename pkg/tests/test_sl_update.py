"""Tests for the one-step semi-Lagrangian vorticity update.

Oracles: exact transport of node values under grid-aligned constant
advection, the exact heat-kernel decay factor for a Laplacian
eigenfunction, and algebraic invariants (constant preservation, value
bounds) that hold by construction.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from slns.boundary import WallVorticity
from slns.grid import ScalarField, VectorField, make_uniform_grid
from slns.interpolation import InterpolationScheme
from slns.sl_update import (
    CompatibilityWarning,
    advance_vorticity,
    check_compatibility,
    compatibility_ratio,
)
from slns.trajectory import TracerConfig


def periodic_grid(n):
    return make_uniform_grid(n, n, ((0.0, 2 * np.pi), (0.0, 2 * np.pi)),
                             periodic_x=True, periodic_y=True)


def velocity(g, f1, f2):
    return VectorField(ScalarField.from_function(g, f1),
                       ScalarField.from_function(g, f2))


@pytest.mark.parametrize("scheme", list(InterpolationScheme))
@pytest.mark.parametrize("nu", [0.0, 0.05])
def test_constant_preserved_periodic(scheme, nu):
    """A constant field is a fixed point for any velocity and nu."""
    g = periodic_grid(24)
    om = ScalarField(g, np.full(g.shape, 2.5))
    u = velocity(g, lambda x, y: np.sin(x), lambda x, y: np.cos(y))
    out = advance_vorticity(om, None, u, nu, 0.3, TracerConfig(), scheme)
    assert_allclose(out.values, 2.5, rtol=1e-13)


def test_constant_preserved_walls():
    """Same fixed point on a wall-bounded grid with matching wall data."""
    g = make_uniform_grid(16, 16, ((0.0, 1.0), (0.0, 1.0)))
    om = ScalarField(g, np.full(g.shape, -1.25))
    bc = WallVorticity(
        grid=g,
        left=np.full(g.ny, -1.25), right=np.full(g.ny, -1.25),
        bottom=np.full(g.nx, -1.25), top=np.full(g.nx, -1.25),
    )
    u = velocity(g, lambda x, y: y - 0.5, lambda x, y: 0.5 - x)
    out = advance_vorticity(om, bc, u, 0.01, 0.05, TracerConfig(),
                            InterpolationScheme.CUBIC_SPLINE)
    assert_allclose(out.values, -1.25, rtol=1e-12)


def test_pure_advection_grid_aligned_shift():
    """nu=0, u=(1,0), dt = one spacing: values shift by one node."""
    g = periodic_grid(32)
    rng = np.random.default_rng(22)
    om = ScalarField(g, rng.standard_normal(g.shape))
    u = velocity(g, lambda x, y: np.ones_like(x), lambda x, y: np.zeros_like(x))
    dt = 2 * np.pi / 32
    for scheme in InterpolationScheme:
        out = advance_vorticity(om, None, u, 0.0, dt, TracerConfig(), scheme)
        assert_allclose(out.values, np.roll(om.values, 1, axis=0), atol=1e-12)


def test_heat_eigenfunction_decay():
    """u=0: sin x sin y decays by e^(-2 nu dt) up to tiny stencil error.

    The four-point stencil applied to this eigenfunction multiplies it
    by cos(sqrt(4 nu dt)) = 1 - 2 nu dt + (2/3)(nu dt)^2..., matching
    the exact factor to O((nu dt)^2); spline interpolation at n=64 adds
    O(dx^4) error.  A 5e-6 absolute band covers both with margin.
    """
    g = periodic_grid(64)
    nu, dt = 0.02, 0.01
    om = ScalarField.from_function(g, lambda x, y: np.sin(x) * np.sin(y))
    u = VectorField.zeros(g)
    out = advance_vorticity(om, None, u, nu, dt, TracerConfig(),
                            InterpolationScheme.CUBIC_SPLINE)
    decayed = np.exp(-2.0 * nu * dt) * om.values
    assert np.max(np.abs(out.values - decayed)) < 5e-6
    # and the decay is genuinely resolved: distance to the undecayed
    # field is the full decay amount
    assert np.max(np.abs(out.values - om.values)) > 1e-4


def test_bicubic_value_bounds():
    """Positive weights + limited interpolant keep values in range."""
    g = periodic_grid(20)
    rng = np.random.default_rng(23)
    om = ScalarField(g, np.where(rng.random(g.shape) > 0.5, 1.0, -1.0))
    u = velocity(g, lambda x, y: np.sin(2 * x) * np.cos(y),
                 lambda x, y: np.cos(x) * np.sin(2 * y))
    out = advance_vorticity(om, None, u, 0.03, 0.4, TracerConfig(),
                            InterpolationScheme.MONOTONIZED_BICUBIC)
    assert out.values.max() <= om.values.max() + 1e-12
    assert out.values.min() >= om.values.min() - 1e-12


def test_boundary_rows_copied_from_wall_data():
    g = make_uniform_grid(10, 10, ((0.0, 1.0), (0.0, 1.0)))
    om = ScalarField.zeros(g)
    bc = WallVorticity(
        grid=g,
        left=np.zeros(g.ny), right=np.zeros(g.ny),
        bottom=np.zeros(g.nx), top=np.full(g.nx, 5.0),
    )
    u = VectorField.zeros(g)
    out = advance_vorticity(om, bc, u, 0.0, 0.1, TracerConfig(),
                            InterpolationScheme.BILINEAR)
    assert_allclose(out.values[:, -1], 5.0)
    assert_allclose(out.values[:, 0], 0.0)


def test_wall_data_feeds_near_boundary_update():
    """Fresh wall values are part of the interpolation source.

    Downward flow near the lid sends backward-traced feet up into the
    lid, so interior nodes near it must feel the imposed wall vorticity
    after one step.
    """
    g = make_uniform_grid(12, 12, ((0.0, 1.0), (0.0, 1.0)))
    om = ScalarField.zeros(g)
    bc = WallVorticity(
        grid=g,
        left=np.zeros(g.ny), right=np.zeros(g.ny),
        bottom=np.zeros(g.nx), top=np.full(g.nx, 3.0),
    )
    u = velocity(g, lambda x, y: np.zeros_like(x),
                 lambda x, y: -np.ones_like(x))
    out = advance_vorticity(om, bc, u, 0.0, 0.2, TracerConfig(),
                            InterpolationScheme.BILINEAR)
    # nodes within advection reach of the lid pick up wall vorticity
    assert out.values[5, -2] > 0.5
    # far-from-lid interior remains zero
    assert_allclose(out.values[5, 1:5], 0.0, atol=1e-13)


def test_missing_wall_data_rejected():
    g = make_uniform_grid(8, 8, ((0.0, 1.0), (0.0, 1.0)))
    with pytest.raises(ValueError, match="wall"):
        advance_vorticity(ScalarField.zeros(g), None, VectorField.zeros(g),
                          0.0, 0.1, TracerConfig(),
                          InterpolationScheme.BILINEAR)


def test_large_time_step_no_growth():
    """Short stability probe in the large-Courant, large-diffusion regime."""
    n = 48
    g = periodic_grid(n)
    dx = 2 * np.pi / n
    nu = 0.02
    dt = 4.0 * 2 * dx ** 2 / nu  # diffusive number 4
    rng = np.random.default_rng(24)
    om = ScalarField(g, rng.standard_normal(g.shape))
    u = velocity(g, lambda x, y: np.sin(x) * np.cos(y),
                 lambda x, y: -np.cos(x) * np.sin(y))
    m0 = om.max_abs()
    for _ in range(20):
        om = advance_vorticity(om, None, u, nu, dt, TracerConfig(),
                               InterpolationScheme.MONOTONIZED_BICUBIC)
    assert om.max_abs() <= m0 + 1e-10


def test_compatibility_ratio_and_warning():
    nu, dt, t_end, h = 0.02, 0.5, 4.0, 0.01
    expect = nu ** (1 / 3) * dt / (t_end ** (2 / 3) * h ** (2 / 3))
    assert compatibility_ratio(nu, dt, t_end, h) == pytest.approx(expect)
    with pytest.warns(CompatibilityWarning):
        check_compatibility(0.02, 10.0, 4.0, 0.01)
    import warnings as _w
    with _w.catch_warnings():
        _w.simplefilter("error")
        check_compatibility(0.02, 0.01, 4.0, 0.1)  # small ratio: no warning
