"""Tests for grid construction, fields, and boundary clamping."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from slns.grid import (
    Grid,
    ScalarField,
    VectorField,
    clamp_to_boundary,
    clamp_points,
    make_boundary_refined_grid,
    make_uniform_grid,
    wrap_points,
)


def test_uniform_grid_nodes():
    """Three nodes on [0,1] sit at 0, 0.5, 1."""
    g = make_uniform_grid(3, 3, ((0.0, 1.0), (0.0, 1.0)))
    assert_allclose(g.x_coords, [0.0, 0.5, 1.0])
    assert_allclose(g.y_coords, [0.0, 0.5, 1.0])
    assert g.has_walls  # wall-bounded on both axes
    assert g.x_max == 1.0


def test_uniform_periodic_spacing():
    """Periodic axis with n nodes over period L has spacing L/n."""
    g = make_uniform_grid(50, 50, ((0.0, 2 * np.pi), (0.0, 2 * np.pi)),
                          periodic_x=True, periodic_y=True)
    assert g.nx == 50
    assert_allclose(g.x_spacings(), 2 * np.pi / 50, rtol=1e-13)
    assert g.x_coords[-1] < 2 * np.pi  # upper bound is not a stored node
    assert_allclose(g.x_max, 2 * np.pi)


def test_uniform_grid_rejects_too_few_nodes():
    with pytest.raises(ValueError):
        make_uniform_grid(2, 5, ((0.0, 1.0), (0.0, 1.0)))


def test_uniform_grid_rejects_degenerate_bounds():
    with pytest.raises(ValueError):
        make_uniform_grid(5, 5, ((1.0, 1.0), (0.0, 1.0)))


def test_refined_grid_seven_nodes():
    """n=7 at ratio 0.5: interval pattern {h/2,h/2,h,h,h/2,h/2} with h=1/4."""
    g = make_boundary_refined_grid(7, ((0.0, 1.0), (0.0, 1.0)), fine_ratio=0.5)
    assert_allclose(g.x_coords, [0.0, 0.125, 0.25, 0.5, 0.75, 0.875, 1.0],
                    atol=1e-15)
    assert_allclose(g.y_coords, g.x_coords, atol=1e-15)


def test_refined_grid_hundred_nodes():
    """n=100 at ratio 0.5: 95 coarse intervals of width h = 1/97."""
    g = make_boundary_refined_grid(100, ((0.0, 1.0), (0.0, 1.0)), fine_ratio=0.5)
    d = np.diff(g.x_coords)
    h = 1.0 / 97.0
    assert_allclose(d[2:-2], h, rtol=1e-12)
    assert_allclose(d[:2], h / 2, rtol=1e-12)
    assert_allclose(d[-2:], h / 2, rtol=1e-12)
    assert g.min_spacing() == pytest.approx(h / 2, rel=1e-12)


def test_refined_grid_interval_sum_matches_length():
    """Interval widths sum to the axis length to 1e-12 relative."""
    for n in (7, 23, 100, 333):
        for ratio in (0.1, 0.5, 0.9):
            g = make_boundary_refined_grid(n, ((0.0, 2.0), (-1.0, 1.0)), ratio)
            assert np.diff(g.x_coords).sum() == pytest.approx(2.0, rel=1e-12)
            assert np.diff(g.y_coords).sum() == pytest.approx(2.0, rel=1e-12)
            assert np.all(np.diff(g.x_coords) > 0)


def test_refined_grid_rejects_bad_ratio():
    with pytest.raises(ValueError):
        make_boundary_refined_grid(7, ((0.0, 1.0), (0.0, 1.0)), fine_ratio=1.0)
    with pytest.raises(ValueError):
        make_boundary_refined_grid(7, ((0.0, 1.0), (0.0, 1.0)), fine_ratio=0.0)
    with pytest.raises(ValueError):
        make_boundary_refined_grid(6, ((0.0, 1.0), (0.0, 1.0)))


def test_clamp_to_boundary():
    g = make_uniform_grid(5, 5, ((0.0, 1.0), (0.0, 1.0)))
    assert clamp_to_boundary((-0.1, 0.5), g) == (0.0, 0.5)
    assert clamp_to_boundary((0.3, 0.4), g) == (0.3, 0.4)
    assert clamp_to_boundary((1.2, -0.3), g) == (1.0, 0.0)


def test_clamp_idempotent_random():
    """Clamping is idempotent and the identity on interior points."""
    g = make_uniform_grid(5, 5, ((0.0, 1.0), (0.0, 1.0)))
    rng = np.random.default_rng(7)
    pts = rng.uniform(-0.5, 1.5, size=(200, 2))
    for p in pts:
        q = clamp_to_boundary(p, g)
        assert clamp_to_boundary(q, g) == q
    inside = rng.uniform(0.2, 0.8, size=(50, 2))
    for p in inside:
        assert clamp_to_boundary(p, g) == tuple(p)


def test_clamp_points_skips_periodic_axis():
    g = make_uniform_grid(8, 8, ((0.0, 1.0), (0.0, 1.0)), periodic_x=True)
    px, py = clamp_points(np.array([-0.3, 1.7]), np.array([-0.3, 1.7]), g)
    assert_allclose(px, [-0.3, 1.7])  # periodic axis untouched
    assert_allclose(py, [0.0, 1.0])


def test_wrap_points_periodic():
    g = make_uniform_grid(8, 8, ((0.0, 1.0), (0.0, 1.0)),
                          periodic_x=True, periodic_y=True)
    px, py = wrap_points(np.array([1.25, -0.25]), np.array([3.0, -2.0]), g)
    assert_allclose(px, [0.25, 0.75])
    assert_allclose(py, [0.0, 0.0], atol=1e-15)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(np.array([0.0, 0.5, 0.4]), np.array([0.0, 0.5, 1.0]))
    with pytest.raises(ValueError):
        # periodic axis needs a period larger than the span
        Grid(np.array([0.0, 0.5, 1.0]), np.array([0.0, 0.5, 1.0]),
             periodic_x=True, period_x=1.0)


def test_scalar_field_shape_and_finiteness():
    g = make_uniform_grid(4, 3, ((0.0, 1.0), (0.0, 1.0)))
    f = ScalarField.zeros(g)
    assert f.values.shape == (4, 3)
    with pytest.raises(ValueError):
        ScalarField(g, np.zeros((3, 4)))
    bad = np.zeros((4, 3))
    bad[1, 1] = np.nan
    with pytest.raises(ValueError):
        ScalarField(g, bad)


def test_scalar_field_from_function_layout():
    """values[i, j] holds f(x_i, y_j)."""
    g = make_uniform_grid(4, 3, ((0.0, 3.0), (0.0, 2.0)))
    f = ScalarField.from_function(g, lambda x, y: x + 10 * y)
    assert f.values[2, 1] == pytest.approx(g.x_coords[2] + 10 * g.y_coords[1])


def test_vector_field_grid_mismatch():
    g1 = make_uniform_grid(4, 4, ((0.0, 1.0), (0.0, 1.0)))
    g2 = make_uniform_grid(5, 4, ((0.0, 1.0), (0.0, 1.0)))
    with pytest.raises(ValueError):
        VectorField(ScalarField.zeros(g1), ScalarField.zeros(g2))
    v = VectorField(ScalarField.zeros(g1), ScalarField.zeros(g1))
    assert v.max_speed() == 0.0
