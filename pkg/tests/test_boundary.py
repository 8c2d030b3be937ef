"""Tests for wall specs and Thom vorticity values."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from slns.boundary import (
    Side,
    WallSpec,
    apply_wall_vorticity,
    thom_vorticity,
    wall_speed_map,
    wall_tangent,
)
from slns.grid import ScalarField, make_boundary_refined_grid, make_uniform_grid


def test_thom_values():
    assert thom_vorticity(0.0, 0.0, 0.01, 0.0) == 0.0
    # -(2/h^2)(psi1-psi0) + 2U/h = -2e4*0.001 + 200 = 180
    assert thom_vorticity(0.0, 0.001, 0.01, 1.0) == pytest.approx(180.0)
    assert thom_vorticity(0.5, 0.5, 0.01, 1.0) == pytest.approx(200.0)
    with pytest.raises(ValueError):
        thom_vorticity(0.0, 0.0, 0.0, 1.0)


def test_thom_linearity():
    """Affine in (psi0, psi1, U); scaling psi with U=0 scales omega."""
    rng = np.random.default_rng(16)
    for _ in range(50):
        p0, p1, lam = rng.standard_normal(3)
        h = rng.uniform(0.01, 1.0)
        base = thom_vorticity(p0, p1, h, 0.0)
        assert thom_vorticity(lam * p0, lam * p1, h, 0.0) == pytest.approx(
            lam * base, rel=1e-12, abs=1e-12)
    # first term scaling: doubling h quarters it (U=0)
    a = thom_vorticity(0.0, 1.0, 0.1, 0.0)
    b = thom_vorticity(0.0, 1.0, 0.2, 0.0)
    assert a == pytest.approx(4.0 * b)


def test_tangent_orientation():
    """Counterclockwise circuit: bottom +x, right +y, top -x, left -y."""
    assert wall_tangent(Side.BOTTOM) == (1.0, 0.0)
    assert wall_tangent(Side.RIGHT) == (0.0, 1.0)
    assert wall_tangent(Side.TOP) == (-1.0, 0.0)
    assert wall_tangent(Side.LEFT) == (0.0, -1.0)


def test_wall_speed_map_validation():
    g = make_uniform_grid(8, 8, ((0.0, 1.0), (0.0, 1.0)), periodic_x=True)
    with pytest.raises(ValueError, match="periodic"):
        wall_speed_map([WallSpec(Side.LEFT, 1.0)], g)
    speeds = wall_speed_map([WallSpec(Side.TOP, 2.0)], g)
    assert speeds[Side.TOP] == 2.0 and speeds[Side.BOTTOM] == 0.0
    with pytest.raises(ValueError, match="duplicate"):
        wall_speed_map([WallSpec(Side.TOP), WallSpec(Side.TOP)], g)


def test_quiescent_walls_zero():
    g = make_uniform_grid(9, 9, ((0.0, 1.0), (0.0, 1.0)))
    bc = apply_wall_vorticity(ScalarField.zeros(g), [], g)
    for arr in (bc.left, bc.right, bc.bottom, bc.top):
        assert_allclose(arr, 0.0)


def test_lid_vorticity_from_rest():
    """Psi = 0, lid speed 1: lid vorticity 2/h, corners averaged to 1/h."""
    g = make_boundary_refined_grid(7, ((0.0, 1.0), (0.0, 1.0)), 0.5)
    h = g.y_coords[-1] - g.y_coords[-2]  # 0.125
    bc = apply_wall_vorticity(
        ScalarField.zeros(g), [WallSpec(Side.TOP, 1.0)], g)
    assert_allclose(bc.top[1:-1], 2.0 / h)
    # corners: average of lid (2/h) and side wall (0)
    assert bc.top[0] == pytest.approx(1.0 / h)
    assert bc.top[-1] == pytest.approx(1.0 / h)
    assert_allclose(bc.bottom, 0.0)
    assert_allclose(bc.left[:-1], 0.0)
    assert bc.left[-1] == pytest.approx(1.0 / h)  # shared top-left corner


def test_first_interior_spacing_used():
    """Refined grids use the local fine spacing in Thom's formula."""
    g = make_boundary_refined_grid(9, ((0.0, 1.0), (0.0, 1.0)), 0.25)
    rng = np.random.default_rng(17)
    psi_vals = rng.standard_normal(g.shape)
    psi_vals[0, :] = psi_vals[-1, :] = 0.0
    psi_vals[:, 0] = psi_vals[:, -1] = 0.0
    psi = ScalarField(g, psi_vals)
    bc = apply_wall_vorticity(psi, [], g)
    h = g.x_coords[1] - g.x_coords[0]
    j = 4
    expect = -(2.0 / h ** 2) * (psi_vals[1, j] - psi_vals[0, j])
    assert bc.left[j] == pytest.approx(expect, rel=1e-12)


def test_corner_values_consistent_between_arrays():
    g = make_uniform_grid(8, 8, ((0.0, 1.0), (0.0, 1.0)))
    rng = np.random.default_rng(18)
    psi_vals = rng.standard_normal(g.shape)
    psi = ScalarField(g, psi_vals)
    bc = apply_wall_vorticity(psi, [WallSpec(Side.TOP, 1.0),
                                    WallSpec(Side.LEFT, -0.5)], g)
    assert bc.top[0] == bc.left[-1]
    assert bc.top[-1] == bc.right[-1]
    assert bc.bottom[0] == bc.left[0]
    assert bc.bottom[-1] == bc.right[0]


def test_impose_writes_walls_only():
    g = make_uniform_grid(6, 6, ((0.0, 1.0), (0.0, 1.0)))
    bc = apply_wall_vorticity(
        ScalarField.zeros(g), [WallSpec(Side.TOP, 1.0)], g)
    vals = np.full(g.shape, 7.0)
    bc.impose(vals)
    h = g.y_coords[-1] - g.y_coords[-2]
    assert_allclose(vals[1:-1, -1], 2.0 / h)
    assert_allclose(vals[1:-1, 1:-1], 7.0)  # interior untouched
    assert_allclose(vals[1:-1, 0], 0.0)
