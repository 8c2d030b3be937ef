"""Command-line front end: configure runs, execute them, export CSV.

Three subcommands cover the package's workflows::

    slns run <config.ini>      custom run from a structured config file
    slns convergence           the tabulated analytic convergence study
    slns cavity --re <R>       a lid-driven cavity marched to steady state

All outputs are comma-separated text with a ``#``-prefixed header that
echoes the resolved configuration, so any output file identifies the
run that produced it and can be reproduced from its own header.  Node
values are written with 17 significant digits, which round-trips IEEE
doubles exactly.

Exit codes: 0 success, 1 configuration or validation error, 2 runtime
failure inside the solver, 3 reference-comparison failure.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .boundary import Side, WallSpec
from .cases import (
    CAVITY_FINE_SPACING,
    CAVITY_REFERENCE,
    CAVITY_WALL_COUPLING_LIMIT,
    CONVERGENCE_TABLE,
    LidDrivenCavityCase,
    TaylorGreenCase,
    analytic_errors,
    cavity_diagnostics,
    cavity_time_step,
    centerline_extrema,
    centerline_profiles,
    check_cavity_regime,
    convergence_run_config,
    observed_order,
)
from .driver import RunConfig, SolverAbort, SolverState, initialize, run
from .grid import Grid, ScalarField, make_uniform_grid
from .interpolation import InterpolationScheme

__all__ = [
    "main",
    "EXIT_OK",
    "EXIT_VALIDATION",
    "EXIT_RUNTIME",
    "EXIT_COMPARISON",
    "ConfigError",
    "RunSetup",
    "parse_run_config",
    "load_run_config",
    "config_echo",
    "write_field_csv",
    "read_field_csv",
    "write_history_csv",
    "write_profiles_csv",
    "field_filename",
]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_COMPARISON = 3

#: Relative tolerance on the velocity diagnostics per Reynolds number.
_VELOCITY_RTOL = {100.0: 0.02, 1000.0: 0.05}
#: Relative tolerance on the central vorticity per Reynolds number.
_VORTICITY_RTOL = {100.0: 0.05, 1000.0: 0.05}

_SCHEMES = {
    "bilinear": InterpolationScheme.BILINEAR,
    "bicubic": InterpolationScheme.MONOTONIZED_BICUBIC,
    "spline": InterpolationScheme.CUBIC_SPLINE,
}


class ConfigError(ValueError):
    """A configuration file failed validation; message names the field."""


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunSetup:
    """Everything a custom run needs, resolved from a config file."""

    grid: Grid
    walls: tuple[WallSpec, ...]
    cfg: RunConfig
    omega0: ScalarField
    outdir: Path
    echo: tuple[str, ...]


def _get(cp, section, key, conv, default=None, required=False):
    if not cp.has_option(section, key):
        if required:
            raise ConfigError(f"{section}.{key} is required")
        return default
    raw = cp.get(section, key)
    try:
        if conv is bool:
            return cp.getboolean(section, key)
        return conv(raw)
    except (ValueError, TypeError) as exc:
        raise ConfigError(
            f"{section}.{key} = {raw!r} is not a valid {conv.__name__}"
        ) from exc


def _reject_unknown(cp, section, known):
    if not cp.has_section(section):
        return
    for key in cp.options(section):
        if key not in known:
            raise ConfigError(f"unknown option {section}.{key}")


def _parse_grid(cp) -> Grid:
    _reject_unknown(cp, "grid", {
        "kind", "nx", "ny", "x_min", "x_max", "y_min", "y_max",
        "periodic_x", "periodic_y", "fine_spacing",
    })
    kind = _get(cp, "grid", "kind", str, default="uniform")
    nx = _get(cp, "grid", "nx", int, required=True)
    ny = _get(cp, "grid", "ny", int, default=nx)
    x_min = _get(cp, "grid", "x_min", float, default=0.0)
    x_max = _get(cp, "grid", "x_max", float, default=1.0)
    y_min = _get(cp, "grid", "y_min", float, default=0.0)
    y_max = _get(cp, "grid", "y_max", float, default=1.0)
    if not (x_max > x_min and y_max > y_min):
        raise ConfigError("grid bounds must be nondegenerate "
                          "(x_max > x_min and y_max > y_min)")
    bounds = ((x_min, x_max), (y_min, y_max))
    if kind == "uniform":
        periodic_x = _get(cp, "grid", "periodic_x", bool, default=False)
        periodic_y = _get(cp, "grid", "periodic_y", bool, default=False)
        return make_uniform_grid(nx, ny, bounds,
                                 periodic_x=periodic_x,
                                 periodic_y=periodic_y)
    if kind == "near-wall-refined":
        if _get(cp, "grid", "periodic_x", bool, default=False) or \
           _get(cp, "grid", "periodic_y", bool, default=False):
            raise ConfigError(
                "grid.periodic_x/periodic_y: near-wall-refined grids "
                "have walls on every side"
            )
        from .cases import near_wall_refined_axis

        fine = _get(cp, "grid", "fine_spacing", float, required=True)
        try:
            ax = near_wall_refined_axis(nx, x_min, x_max, fine)
            ay = (ax if (ny == nx and bounds[1] == bounds[0])
                  else near_wall_refined_axis(ny, y_min, y_max, fine))
        except ValueError as exc:
            raise ConfigError(f"grid.fine_spacing: {exc}") from exc
        return Grid(x_coords=ax, y_coords=np.array(ay, copy=True))
    raise ConfigError(
        f"grid.kind = {kind!r} is not one of 'uniform', 'near-wall-refined'"
    )


_WALL_KEYS = {
    "wall_bottom": Side.BOTTOM,
    "wall_right": Side.RIGHT,
    "wall_top": Side.TOP,
    "wall_left": Side.LEFT,
}


def _parse_physics(cp) -> tuple[float, tuple[WallSpec, ...]]:
    _reject_unknown(cp, "physics", {"nu", "reynolds"} | set(_WALL_KEYS))
    nu = _get(cp, "physics", "nu", float)
    reynolds = _get(cp, "physics", "reynolds", float)
    if (nu is None) == (reynolds is None):
        raise ConfigError(
            "physics: exactly one of physics.nu and physics.reynolds "
            "must be set"
        )
    if nu is None:
        if reynolds <= 0:
            raise ConfigError("physics.reynolds must be positive")
        nu = 1.0 / reynolds
    if nu < 0:
        raise ConfigError("physics.nu must be nonnegative")
    walls = tuple(
        WallSpec(side, _get(cp, "physics", key, float))
        for key, side in _WALL_KEYS.items()
        if cp.has_option("physics", key)
    )
    return nu, walls


def parse_run_config(cp: configparser.ConfigParser) -> RunSetup:
    """Resolve a parsed config into a validated run setup.

    Raises ConfigError naming the offending section.field on any
    validation problem.
    """
    for section in cp.sections():
        if section not in ("grid", "physics", "time", "numerics",
                           "initial", "output"):
            raise ConfigError(f"unknown config section [{section}]")
    grid = _parse_grid(cp)
    nu, walls = _parse_physics(cp)
    for spec in walls:
        axis_periodic = (
            grid.periodic_y if spec.side in (Side.TOP, Side.BOTTOM)
            else grid.periodic_x
        )
        if axis_periodic:
            raise ConfigError(
                f"physics.wall_{spec.side.name.lower()}: that side is "
                "periodic, not a wall"
            )

    _reject_unknown(cp, "time", {"dt", "t_end", "steady_tol", "max_steps"})
    dt = _get(cp, "time", "dt", float, required=True)
    t_end = _get(cp, "time", "t_end", float)
    steady_tol = _get(cp, "time", "steady_tol", float)
    max_steps = _get(cp, "time", "max_steps", int, default=1_000_000)
    if (t_end is None) == (steady_tol is None):
        raise ConfigError(
            "time: exactly one of time.t_end and time.steady_tol must be set"
        )

    _reject_unknown(cp, "numerics", {"scheme", "poisson_tol"})
    scheme_name = _get(cp, "numerics", "scheme", str, default="spline")
    if scheme_name not in _SCHEMES:
        raise ConfigError(
            f"numerics.scheme = {scheme_name!r} is not one of "
            f"{sorted(_SCHEMES)}"
        )
    poisson_tol = _get(cp, "numerics", "poisson_tol", float, default=1e-10)

    try:
        cfg = RunConfig(
            nu=nu, dt=dt, t_end=t_end, steady_tol=steady_tol,
            max_steps=max_steps, interp_scheme=_SCHEMES[scheme_name],
            poisson_tol=poisson_tol,
            output_every=_get(cp, "output", "every", int, default=0),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    _reject_unknown(cp, "initial", {"kind"})
    initial = _get(cp, "initial", "kind", str, default="rest")
    if initial == "rest":
        omega0 = ScalarField.zeros(grid)
    elif initial == "analytic":
        omega0 = TaylorGreenCase(nu=nu).initial_vorticity(grid)
    else:
        raise ConfigError(
            f"initial.kind = {initial!r} is not one of 'rest', 'analytic'"
        )

    _reject_unknown(cp, "output", {"dir", "every"})
    outdir = Path(_get(cp, "output", "dir", str, default="out"))
    return RunSetup(grid=grid, walls=walls, cfg=cfg, omega0=omega0,
                    outdir=outdir, echo=tuple(config_echo(cp)))


def load_run_config(path) -> RunSetup:
    """Parse and validate a config file from disk."""
    cp = configparser.ConfigParser()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"config parse error in {path}: {exc}") from exc
    return parse_run_config(cp)


def config_echo(cp: configparser.ConfigParser) -> list[str]:
    """Canonical one-line-per-option echo of a parsed config."""
    lines = []
    for section in cp.sections():
        lines.append(f"[{section}]")
        for key in cp.options(section):
            lines.append(f"{key} = {cp.get(section, key)}")
    return lines


def echo_from_mapping(sections: dict[str, dict[str, object]]) -> list[str]:
    """Echo lines for a config synthesized by a subcommand."""
    cp = configparser.ConfigParser()
    for name, options in sections.items():
        cp.add_section(name)
        for key, value in options.items():
            cp.set(name, key, str(value))
    return config_echo(cp)


# ---------------------------------------------------------------------------
# CSV writers and readers
# ---------------------------------------------------------------------------


def _write_header(fh, kind: str, echo, extra=()):
    fh.write(f"# slns {kind}\n")
    for line in extra:
        fh.write(f"# {line}\n")
    for line in echo:
        fh.write(f"# {line}\n")


def field_filename(step_index: int) -> str:
    """Canonical snapshot name for a step index."""
    return f"fields_{step_index:06d}.csv"


def write_field_csv(path, state: SolverState, echo=()):
    """Write one field snapshot: x, y, omega, psi, u1, u2 per node.

    Rows iterate the x index in the outer loop and the y index in the
    inner loop, so row count is nx * ny.
    """
    g = state.omega.grid
    xs, ys = np.meshgrid(g.x_coords, g.y_coords, indexing="ij")
    cols = [xs, ys, state.omega.values, state.psi.values,
            state.u_now.u1.values, state.u_now.u2.values]
    flat = [np.asarray(c).ravel(order="C") for c in cols]
    with open(path, "w", encoding="utf-8") as fh:
        _write_header(
            fh, "field snapshot", echo,
            extra=(f"step = {state.step_index}", f"time = {state.t!r}"),
        )
        fh.write("x,y,omega,psi,u1,u2\n")
        for row in zip(*flat):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def read_field_csv(path):
    """Read a field snapshot back into arrays.

    Returns a dict with the header lines and the six columns reshaped
    to (nx, ny), reconstructing the grid axes from the coordinate
    columns.
    """
    header = []
    with open(path, "r", encoding="utf-8") as fh:
        pos = fh.tell()
        line = fh.readline()
        while line.startswith("#"):
            header.append(line[1:].strip())
            pos = fh.tell()
            line = fh.readline()
        names = line.strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if names != ["x", "y", "omega", "psi", "u1", "u2"]:
        missing = set(["x", "y", "omega", "psi", "u1", "u2"]) - set(names)
        raise ValueError(
            f"field CSV {path} has columns {names}; missing {sorted(missing)}"
        )
    x = np.unique(data[:, 0])
    y = np.unique(data[:, 1])
    nx, ny = x.size, y.size
    if nx * ny != data.shape[0]:
        raise ValueError(
            f"field CSV {path} has {data.shape[0]} rows, expected "
            f"nx*ny = {nx * ny}"
        )
    out = {"header": header, "x": x, "y": y}
    for k, name in enumerate(names[2:], start=2):
        out[name] = data[:, k].reshape(nx, ny)
    return out


def write_history_csv(path, history, echo=()):
    """Write per-record run diagnostics: step, time, residual, max |omega|."""
    with open(path, "w", encoding="utf-8") as fh:
        _write_header(fh, "run diagnostics", echo)
        fh.write("step,time,residual,max_abs_omega\n")
        for rec in history:
            fh.write(
                f"{rec.step},{rec.time:.17g},{rec.residual:.17g},"
                f"{rec.max_abs_omega:.17g}\n"
            )


def write_profiles_csv(path, ys, u, omega, echo=()):
    """Write vertical-centerline profiles: y, u, omega per grid line."""
    with open(path, "w", encoding="utf-8") as fh:
        _write_header(fh, "centerline profiles", echo)
        fh.write("y,u,omega\n")
        for row in zip(ys, u, omega):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _write_cavity_diagnostics(path, diag, extrema, echo=()):
    with open(path, "w", encoding="utf-8") as fh:
        _write_header(fh, "cavity diagnostics", echo)
        fh.write("u_max,v_max,v_min,omega_center,"
                 "u_line_min,u_line_max,v_line_min,v_line_max\n")
        values = tuple(diag) + tuple(extrema)
        fh.write(",".join(f"{v:.17g}" for v in values) + "\n")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _execute(setup: RunSetup) -> tuple[SolverState, list]:
    s = initialize(setup.cfg, setup.walls, omega0=setup.omega0)
    setup.outdir.mkdir(parents=True, exist_ok=True)
    written = set()

    def on_snapshot(state):
        write_field_csv(
            setup.outdir / field_filename(state.step_index), state,
            setup.echo,
        )
        written.add(state.step_index)

    # Step 0 belongs to the output cadence (0 % every == 0).
    if setup.cfg.output_every:
        on_snapshot(s)
    s, history = run(s, setup.cfg, setup.walls, on_snapshot=on_snapshot)
    if s.step_index not in written:
        write_field_csv(
            setup.outdir / field_filename(s.step_index), s, setup.echo
        )
    return s, history


def cmd_run(args) -> int:
    """Execute a custom run described by a config file."""
    try:
        setup = load_run_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        s, history = _execute(setup)
    except (SolverAbort, RuntimeError) as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    write_history_csv(setup.outdir / "diagnostics.csv", history, setup.echo)
    print(f"run complete: {s.step_index} steps to t = {s.t:.6g}; "
          f"outputs in {setup.outdir}")
    return EXIT_OK


def _check_band(label, got, ref, rtol, failures):
    delta = abs(got - ref) / abs(ref)
    status = "ok" if delta <= rtol else "FAIL"
    print(f"  {label:13s} {got:+.5f}  reference {ref:+.5f}  "
          f"rel. delta {delta:.4f} (tol {rtol})  {status}")
    if delta > rtol:
        failures.append(f"{label}: |{got:.5g} - {ref:.5g}| / |{ref:.5g}| "
                        f"= {delta:.4f} > {rtol}")


def cmd_convergence(args) -> int:
    """Run the analytic convergence study and compare to the table."""
    scheme = _SCHEMES[args.scheme]
    meshes = [args.mesh] if args.mesh else [r.n for r in CONVERGENCE_TABLE]
    rows = []
    for n in meshes:
        try:
            grid, om0, cfg = convergence_run_config(n, scheme=scheme)
        except ValueError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        try:
            s = initialize(cfg, [], omega0=om0)
            s, _ = run(s, cfg, [])
        except (SolverAbort, RuntimeError) as exc:
            print(f"run failed: {exc}", file=sys.stderr)
            return EXIT_RUNTIME
        linf, l2 = analytic_errors(s.omega, s.t, cfg.nu)
        rows.append((n, linf, l2))

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    echo = echo_from_mapping({
        "convergence": {"meshes": ",".join(str(n) for n in meshes),
                        "scheme": args.scheme},
    })
    print(f"{'n':>5s} {'Linf rel.':>12s} {'L2 rel.':>12s} {'p2':>7s}")
    csv_rows = []
    orders = []
    for k, (n, linf, l2) in enumerate(rows):
        p2 = "" if k == 0 else f"{observed_order(rows[k-1][2], l2):.3f}"
        if p2:
            orders.append(float(p2))
        print(f"{n:5d} {linf:12.4e} {l2:12.4e} {p2:>7s}")
        csv_rows.append(f"{n},{linf:.17g},{l2:.17g},{p2}")
    with open(outdir / "convergence.csv", "w", encoding="utf-8") as fh:
        _write_header(fh, "convergence table", echo)
        fh.write("n,linf_rel,l2_rel,p2\n")
        fh.write("\n".join(csv_rows) + "\n")

    if scheme is not InterpolationScheme.BILINEAR:
        print("reference comparison skipped: table references apply to "
              "the baseline bilinear scheme")
        return EXIT_OK
    failures = []
    by_n = {r.n: r for r in CONVERGENCE_TABLE}
    for n, linf, l2 in rows:
        ref = by_n[n]
        print(f"mesh {n}:")
        _check_band("Linf rel.", linf, ref.linf_ref, 0.30, failures)
        _check_band("L2 rel.", l2, ref.l2_ref, 0.30, failures)
    for p2 in orders:
        if p2 < 1.0:
            failures.append(f"observed L2 order {p2:.3f} < 1.0")
    if failures:
        print("reference comparison failed:", file=sys.stderr)
        for f in failures:
            print(f"  {f}", file=sys.stderr)
        return EXIT_COMPARISON
    print("all cells within tolerance of the reference table")
    return EXIT_OK


def cmd_cavity(args) -> int:
    """March a lid-driven cavity to steady state and export diagnostics."""
    if args.re <= 0:
        print(f"config error: --re must be positive, got {args.re}",
              file=sys.stderr)
        return EXIT_VALIDATION
    dt = args.dt if args.dt else cavity_time_step(args.re, args.fine_spacing)
    try:
        case = LidDrivenCavityCase(
            reynolds=args.re, dt=dt, n=args.grid,
            fine_spacing=args.fine_spacing, steady_tol=args.tol,
        )
        grid = case.make_grid()
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    h_wall = float(grid.x_coords[1] - grid.x_coords[0])
    coupling = case.nu * case.dt / h_wall**2
    if coupling > CAVITY_WALL_COUPLING_LIMIT:
        print(
            f"config error: wall-vorticity coupling nu dt / h_wall^2 = "
            f"{coupling:.3g} exceeds {CAVITY_WALL_COUPLING_LIMIT}; the "
            f"explicit wall update would be unstable (reduce --dt or the "
            f"refinement)", file=sys.stderr,
        )
        return EXIT_VALIDATION

    benchmark = args.re in CAVITY_REFERENCE and not args.dt
    if benchmark and args.grid == 100 and \
            args.fine_spacing == CAVITY_FINE_SPACING:
        check_cavity_regime(case)

    echo = echo_from_mapping({
        "cavity": {
            "reynolds": case.reynolds, "grid": case.n,
            "fine_spacing": case.fine_spacing, "dt": case.dt,
            "steady_tol": case.steady_tol, "scheme": args.scheme,
        },
    })
    cfg = case.run_config(scheme=_SCHEMES[args.scheme])
    setup = RunSetup(grid=grid, walls=tuple(case.wall_specs()), cfg=cfg,
                     omega0=ScalarField.zeros(grid),
                     outdir=Path(args.out), echo=tuple(echo))
    try:
        s, history = _execute(setup)
    except (SolverAbort, RuntimeError) as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME

    diag = cavity_diagnostics(s)
    extrema = centerline_extrema(s)
    ys, u, om = centerline_profiles(s)
    write_history_csv(setup.outdir / "history.csv", history, echo)
    _write_cavity_diagnostics(setup.outdir / "diagnostics.csv", diag,
                              extrema, echo)
    write_profiles_csv(setup.outdir / "profiles.csv", ys, u, om, echo)
    print(f"steady state after {s.step_index} steps (t = {s.t:.4f}); "
          f"outputs in {setup.outdir}")

    if args.re not in CAVITY_REFERENCE:
        print("no tabulated references for this Reynolds number; "
              "comparison skipped")
        return EXIT_OK
    ref = CAVITY_REFERENCE[args.re]
    v_rtol = _VELOCITY_RTOL[args.re]
    w_rtol = _VORTICITY_RTOL[args.re]
    failures = []
    print(f"Re = {args.re:g} diagnostics:")
    _check_band("u_max", diag.u_max, ref.u_max, v_rtol, failures)
    _check_band("v_max", diag.v_max, ref.v_max, v_rtol, failures)
    _check_band("v_min", diag.v_min, ref.v_min, v_rtol, failures)
    _check_band("omega_center", diag.omega_center, ref.omega_center,
                w_rtol, failures)
    if failures:
        print("reference comparison failed:", file=sys.stderr)
        for f in failures:
            print(f"  {f}", file=sys.stderr)
        return EXIT_COMPARISON
    print("all diagnostics within tolerance of the references")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors use the validation exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="slns",
        description="Semi-Lagrangian vorticity-streamfunction solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a run from a config file")
    p_run.add_argument("config", help="path to the INI-style run config")
    p_run.set_defaults(func=cmd_run)

    p_conv = sub.add_parser(
        "convergence", help="analytic-solution convergence study",
    )
    p_conv.add_argument("--mesh", type=int, default=None,
                        help="run a single tabulated mesh instead of all")
    p_conv.add_argument("--scheme", choices=sorted(_SCHEMES),
                        default="bilinear",
                        help="interpolation scheme (default bilinear)")
    p_conv.add_argument("--out", default="out",
                        help="output directory (default ./out)")
    p_conv.set_defaults(func=cmd_convergence)

    p_cav = sub.add_parser("cavity", help="lid-driven cavity benchmark")
    p_cav.add_argument("--re", type=float, required=True,
                       help="lid Reynolds number")
    p_cav.add_argument("--grid", type=int, default=100,
                       help="nodes per axis (default 100)")
    p_cav.add_argument("--fine-spacing", type=float,
                       default=CAVITY_FINE_SPACING,
                       help="width of the short near-wall interval")
    p_cav.add_argument("--dt", type=float, default=None,
                       help="time step (default: benchmark regime value)")
    p_cav.add_argument("--tol", type=float, default=1e-7,
                       help="steady-state tolerance (default 1e-7)")
    p_cav.add_argument("--scheme", choices=sorted(_SCHEMES),
                       default="spline",
                       help="interpolation scheme (default spline)")
    p_cav.add_argument("--out", default="out",
                       help="output directory (default ./out)")
    p_cav.set_defaults(func=cmd_cavity)
    return parser


def main(argv=None) -> int:
    """Parse arguments and dispatch to a subcommand."""
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
