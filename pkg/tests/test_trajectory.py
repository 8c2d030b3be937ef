"""Tests for backward characteristic tracing."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from slns.grid import ScalarField, VectorField, make_uniform_grid
from slns.trajectory import (
    TraceScheme,
    TracerConfig,
    extrapolate_velocity,
    substep_count,
    trace_feet,
    trace_foot,
)


def uniform_velocity(g, u1, u2):
    return VectorField(
        ScalarField(g, np.full(g.shape, float(u1))),
        ScalarField(g, np.full(g.shape, float(u2))),
    )


def rotation_velocity(g):
    """u = (-y, x): rigid rotation about the origin."""
    return VectorField(
        ScalarField.from_function(g, lambda x, y: -y),
        ScalarField.from_function(g, lambda x, y: x),
    )


def test_extrapolation_fixed_point():
    """A steady field is its own half-step extrapolation."""
    g = make_uniform_grid(4, 4, ((0.0, 1.0), (0.0, 1.0)))
    u = uniform_velocity(g, 0.7, -0.2)
    v = extrapolate_velocity(u, u)
    assert_allclose(v.u1.values, 0.7)
    assert_allclose(v.u2.values, -0.2)


def test_extrapolation_values():
    g = make_uniform_grid(4, 4, ((0.0, 1.0), (0.0, 1.0)))
    one = uniform_velocity(g, 1.0, 1.0)
    zero = VectorField.zeros(g)
    two = uniform_velocity(g, 2.0, 2.0)
    assert_allclose(extrapolate_velocity(one, zero).u1.values, 1.5)
    assert_allclose(extrapolate_velocity(zero, two).u1.values, -1.0)


def test_extrapolation_grid_mismatch():
    g1 = make_uniform_grid(4, 4, ((0.0, 1.0), (0.0, 1.0)))
    g2 = make_uniform_grid(5, 5, ((0.0, 1.0), (0.0, 1.0)))
    with pytest.raises(ValueError):
        extrapolate_velocity(VectorField.zeros(g1), VectorField.zeros(g2))


def test_substep_count():
    assert substep_count(0.0, 1.0, 0.1, 0.9) == 1
    assert substep_count(2.0, 1.0, 0.1, 0.9) == 23  # ceil(22.22)
    # exact boundary of the constraint stays at one substep
    assert substep_count(0.9, 1.0, 1.0, 0.9) == 1
    assert substep_count(0.09, 1.0, 0.1, 0.9) == 1
    with pytest.raises(ValueError):
        substep_count(1.0, -1.0, 0.1, 0.9)


def test_substep_courant_bound():
    """u_bound * dtau <= cfl_max * h_min for randomized inputs."""
    rng = np.random.default_rng(13)
    for _ in range(300):
        u = rng.uniform(0, 10)
        dt = rng.uniform(1e-3, 10)
        h = rng.uniform(1e-3, 1)
        cfl = rng.uniform(0.05, 1.0)
        n = substep_count(u, dt, h, cfl)
        assert u * (dt / n) <= cfl * h * (1 + 1e-9)


@pytest.mark.parametrize("scheme", [TraceScheme.EULER, TraceScheme.HEUN])
def test_constant_velocity_exact(scheme):
    """Constant velocity: foot = x - u dt exactly, any substep count."""
    g = make_uniform_grid(16, 16, ((0.0, 2 * np.pi), (0.0, 2 * np.pi)),
                          periodic_x=True, periodic_y=True)
    u = uniform_velocity(g, 1.0, 0.0)
    cfg = TracerConfig(scheme=scheme)
    foot = trace_foot((1.0, 1.0), u, 0.5, cfg, g)
    assert foot[0] == pytest.approx(0.5, abs=1e-13)
    assert foot[1] == pytest.approx(1.0, abs=1e-13)
    foot = trace_foot((1.0, 1.0), u, 0.5, cfg, g, n_substeps=7)
    assert foot[0] == pytest.approx(0.5, abs=1e-13)


def test_zero_velocity_identity():
    g = make_uniform_grid(8, 8, ((0.0, 1.0), (0.0, 1.0)))
    u = VectorField.zeros(g)
    cfg = TracerConfig()
    assert trace_foot((0.3, 0.7), u, 1.0, cfg, g) == (0.3, 0.7)


def test_periodic_wraparound():
    """A foot crossing the periodic edge reappears on the other side."""
    g = make_uniform_grid(16, 16, ((0.0, 2 * np.pi), (0.0, 2 * np.pi)),
                          periodic_x=True, periodic_y=True)
    u = uniform_velocity(g, 1.0, 0.0)
    foot = trace_foot((0.5, 1.0), u, 1.0, TracerConfig(), g)
    assert foot[0] == pytest.approx(0.5 - 1.0 + 2 * np.pi, rel=1e-12)


def test_wall_clamping():
    """Feet leaving through a wall stick to the closest boundary point."""
    g = make_uniform_grid(8, 8, ((0.0, 1.0), (0.0, 1.0)))
    u = uniform_velocity(g, 1.0, 0.0)
    foot = trace_foot((0.25, 0.5), u, 1.0, TracerConfig(), g)
    assert foot == (0.0, 0.5)


def test_rotation_heun_accuracy():
    """Heun foot within 1e-4 of the exact backward rotation."""
    g = make_uniform_grid(64, 64, ((-2.0, 2.0), (-2.0, 2.0)))
    u = rotation_velocity(g)
    cfg = TracerConfig(scheme=TraceScheme.HEUN)
    foot = trace_foot((1.0, 0.0), u, 0.1, cfg, g, n_substeps=100)
    # Exact backward motion rotates by angle -dt.
    exact = (np.cos(0.1), -np.sin(0.1))
    assert foot[0] == pytest.approx(exact[0], abs=1e-4)
    assert foot[1] == pytest.approx(exact[1], abs=1e-4)


def test_rotation_heun_second_order():
    """Error vs the rotation oracle decays at rate >= 1.8 in dtau.

    The velocity is sampled with the spline scheme so interpolation
    error does not mask the time discretization order.
    """
    from slns.interpolation import InterpolationScheme

    g = make_uniform_grid(96, 96, ((-2.0, 2.0), (-2.0, 2.0)))
    u = rotation_velocity(g)
    cfg = TracerConfig(scheme=TraceScheme.HEUN,
                       velocity_scheme=InterpolationScheme.CUBIC_SPLINE)
    dt = 0.8
    exact = np.array([np.cos(dt), -np.sin(dt)])

    def err(n):
        foot = trace_foot((1.0, 0.0), u, dt, cfg, g, n_substeps=n)
        return np.hypot(foot[0] - exact[0], foot[1] - exact[1])

    e1, e2 = err(8), err(16)
    rate = np.log2(e1 / e2)
    assert rate >= 1.8


def test_batch_matches_single():
    g = make_uniform_grid(32, 32, ((-2.0, 2.0), (-2.0, 2.0)))
    u = rotation_velocity(g)
    cfg = TracerConfig()
    px = np.array([1.0, 0.5, -0.25])
    py = np.array([0.0, 0.5, 1.0])
    fx, fy = trace_feet(px, py, u, 0.2, cfg)
    for k in range(3):
        single = trace_foot((px[k], py[k]), u, 0.2, cfg, g)
        assert fx[k] == pytest.approx(single[0], rel=1e-14)
        assert fy[k] == pytest.approx(single[1], rel=1e-14)


def test_feet_stay_in_closure():
    """Randomized fields: all feet end inside the domain closure."""
    rng = np.random.default_rng(14)
    g = make_uniform_grid(12, 12, ((0.0, 1.0), (0.0, 1.0)))
    u = VectorField(
        ScalarField(g, rng.uniform(-2, 2, g.shape)),
        ScalarField(g, rng.uniform(-2, 2, g.shape)),
    )
    gx, gy = g.node_mesh()
    fx, fy = trace_feet(gx.ravel(), gy.ravel(), u, 0.3, TracerConfig())
    assert np.all((fx >= 0.0) & (fx <= 1.0))
    assert np.all((fy >= 0.0) & (fy <= 1.0))
