"""Benchmark command line: single runs, convergence studies, and the
with/without-correction comparison harness.

Exit codes: 0 success, 2 configuration error, 3 solver abort.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from . import io, metrics, timestepper
from .core import EN, PR, RHO, AdmissibilityError
from .problems import PROBLEMS, get_problem
from .reconstruct import Limiter
from .timestepper import Simulation1D, Simulation2D, SolverError

DEFAULT_CFL = {1: 0.4, 2: 0.45}
CONTACT_WINDOW_REF = 30       # windowed-jump width on the reference grid
CONTACT_HALFWIDTH = 20        # comparison window in coarse cells


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    problem: str
    nx: Optional[int] = None
    ny: Optional[int] = None
    cfl: Optional[float] = None
    limiter: Optional[str] = None
    theta: float = 1.3
    use_correction: bool = True
    t_final: Optional[float] = None
    out: str = "out"
    dump_every: int = 0
    convergence: Optional[str] = None
    compare_correction: bool = False
    ref_n: int = 6000

    def validate(self):
        if self.problem not in PROBLEMS:
            raise ConfigError(
                f"unknown problem {self.problem!r}; choose from "
                f"{', '.join(sorted(PROBLEMS))}")
        spec = get_problem(self.problem)
        if self.cfl is not None and not 0.0 < self.cfl < 1.0:
            raise ConfigError(f"cfl must lie in (0, 1), got {self.cfl}")
        if self.limiter is not None and self.limiter not in ("minmod", "mc",
                                                             "none"):
            raise ConfigError(f"unknown limiter {self.limiter!r}")
        if not 1.0 <= self.theta <= 2.0:
            raise ConfigError(f"theta must lie in [1, 2], got {self.theta}")
        if spec.dim == 2:
            for label, n in (("nx", self.nx), ("ny", self.ny)):
                if n is not None and n < 8:
                    raise ConfigError(f"{label} must be >= 8 for 2-D runs")
        if self.nx is not None and self.nx < 4:
            raise ConfigError("nx must be >= 4")
        if self.dump_every < 0:
            raise ConfigError("dump stride must be non-negative")
        if self.ref_n < 16:
            raise ConfigError("reference grid too small")
        return spec

    def resolved(self, spec):
        """Fill unset fields from the problem's defaults."""
        nx = self.nx if self.nx is not None else spec.default_nx
        ny = self.ny if self.ny is not None else (spec.default_ny or nx)
        cfl = self.cfl if self.cfl is not None else DEFAULT_CFL[spec.dim]
        if self.limiter is None:
            limiter = spec.default_limiter
        elif self.limiter == "mc":
            limiter = Limiter("mc", self.theta)
        else:
            limiter = Limiter(self.limiter)
        t_final = self.t_final if self.t_final is not None else spec.t_final
        return nx, ny, cfl, limiter, t_final

    def items(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            yield f.name.replace("_", "-"), value


_BOOL_FIELDS = {"use_correction", "compare_correction"}
_INT_FIELDS = {"nx", "ny", "dump_every", "ref_n"}
_FLOAT_FIELDS = {"cfl", "theta", "t_final"}


def config_from_mapping(mapping):
    """Build a RunConfig from string key/value pairs (config-file contents)."""
    kwargs = {}
    names = {f.name for f in fields(RunConfig)}
    for raw_key, raw in mapping.items():
        key = raw_key.replace("-", "_")
        if key not in names:
            raise ConfigError(f"unknown config key {raw_key!r}")
        if key in _BOOL_FIELDS:
            value = raw.strip().lower() in ("1", "true", "yes", "on")
        elif key in _INT_FIELDS:
            value = int(raw)
        elif key in _FLOAT_FIELDS:
            value = float(raw)
        else:
            value = raw
        kwargs[key] = value
    if "problem" not in kwargs:
        raise ConfigError("config is missing the problem name")
    return RunConfig(**kwargs)


def build_parser():
    p = argparse.ArgumentParser(
        prog="mhdcu",
        description="Central-upwind ideal-MHD benchmark solver",
    )
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--problem", metavar="NAME",
                   help="one of: " + ", ".join(sorted(PROBLEMS)))
    p.add_argument("--nx", type=int)
    p.add_argument("--ny", type=int)
    p.add_argument("--cfl", type=float)
    p.add_argument("--limiter", choices=("minmod", "mc", "none"))
    p.add_argument("--theta", type=float, default=None,
                   help="MC limiter parameter in [1, 2] (default 1.3)")
    p.add_argument("--no-correction", action="store_true",
                   help="drop the contact-sharpening correction term")
    p.add_argument("--t-final", type=float)
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--dump-every", type=int, default=None,
                   help="write intermediate fields every N steps")
    p.add_argument("--convergence", default=None,
                   help='comma-separated grid list, e.g. "50,100,200,400"')
    p.add_argument("--compare-correction", action="store_true",
                   help="run with and without the correction term and "
                        "compare contact resolution (1-D problems): the "
                        "contact is located on the fine reference profile "
                        "as the largest windowed density jump at nearly "
                        "constant pressure, inside the intermediate-"
                        "velocity plateau between the acoustic waves")
    p.add_argument("--ref-n", type=int, default=None,
                   help="cells of the 1-D reference run (default 6000)")
    return p


def config_from_args(args):
    mapping = dict(io.read_config(args.config)) if args.config else {}
    if args.problem is not None:
        mapping["problem"] = args.problem
    if "problem" not in mapping:
        raise ConfigError("a problem name is required (flag or config file)")
    cfg = config_from_mapping(mapping)
    overrides = dict(
        nx=args.nx, ny=args.ny, cfl=args.cfl, limiter=args.limiter,
        theta=args.theta, t_final=args.t_final, out=args.out,
        dump_every=args.dump_every, convergence=args.convergence,
        ref_n=args.ref_n,
    )
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    if args.no_correction:
        cfg.use_correction = False
    if args.compare_correction:
        cfg.compare_correction = True
    return cfg


# ---------------------------------------------------------------------------
# run modes


def _pin_resolved(cfg, spec):
    """Record the resolved parameters so the manifest replays the run."""
    nx, ny, cfl, limiter, t_final = cfg.resolved(spec)
    cfg.nx, cfg.cfl, cfg.t_final = nx, cfl, t_final
    if spec.dim == 2:
        cfg.ny = ny
    cfg.limiter = limiter.kind
    cfg.theta = limiter.theta
    return nx, ny, cfl, limiter, t_final


def _manifest(cfg, outdir, wall, extras=()):
    info = [("wall_time_s", f"{wall:.3f}"),
            ("finished_at", time.strftime("%Y-%m-%dT%H:%M:%S"))]
    info.extend(extras)
    items = [(k, str(v).lower() if isinstance(v, bool) else v)
             for k, v in cfg.items()]
    io.write_manifest(os.path.join(outdir, "manifest.txt"), items, info)


def _dump_2d(sim, state, outdir, tag):
    w = timestepper.primitive_interior_2d(sim, state)
    meta = {
        "problem": sim.problem.name,
        "nx": sim.grid.nx, "ny": sim.grid.ny,
        "dx": sim.grid.dx, "dy": sim.grid.dy,
        "x0": sim.grid.x0, "y0": sim.grid.y0,
        "t": state.t, "gamma": sim.gamma,
        "components": list(io.GRID_COMPONENTS),
    }
    io.write_grid_dump(os.path.join(outdir, tag), w, meta)
    io.write_vtk(os.path.join(outdir, tag + ".vtk"), sim.grid, w)


def run_single(cfg, spec):
    nx, ny, cfl, limiter, t_final = _pin_resolved(cfg, spec)
    outdir = cfg.out
    os.makedirs(outdir, exist_ok=True)
    start = time.monotonic()

    if spec.dim == 1:
        sim = Simulation1D(spec, nx, limiter=limiter, cfl=cfl,
                           use_correction=cfg.use_correction)
        q, diag = sim.run_to_time(sim.initial_state(), t_final)
        w = timestepper.primitive_interior_1d(sim, q)
        energy = q[-1, sim.grid.interior]
        io.write_csv_1d(os.path.join(outdir, "fields.csv"),
                        sim.grid.x_centers(), w, energy)
    else:
        sim = Simulation2D(spec, nx, ny, limiter=limiter, cfl=cfl,
                           use_correction=cfg.use_correction)

        def on_step(state, row):
            if cfg.dump_every and state.step_count % cfg.dump_every == 0:
                _dump_2d(sim, state, outdir, f"fields_{state.step_count:06d}")

        state, diag = sim.run_to_time(sim.initial_state(), t_final,
                                      on_step=on_step)
        _dump_2d(sim, state, outdir, "fields")

    io.write_diagnostics_csv(os.path.join(outdir, "diagnostics.csv"), diag)
    _manifest(cfg, outdir, time.monotonic() - start,
              extras=[("steps", diag[-1].step)])
    return 0


def run_convergence(cfg, spec):
    if spec.exact is None:
        raise ConfigError(f"problem {cfg.problem!r} has no exact solution")
    try:
        grids = [int(tok) for tok in cfg.convergence.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad convergence grid list: {exc}") from None
    if not grids:
        raise ConfigError("empty convergence grid list")
    _, _, cfl, limiter, t_final = _pin_resolved(cfg, spec)
    outdir = cfg.out
    os.makedirs(outdir, exist_ok=True)
    start = time.monotonic()

    errs_rho, errs_p = [], []
    for n in grids:
        sim = Simulation2D(spec, n, n, limiter=limiter, cfl=cfl,
                           use_correction=cfg.use_correction)
        state, _ = sim.run_to_time(sim.initial_state(), t_final)
        w = timestepper.primitive_interior_2d(sim, state)
        xc, yc = sim.grid.interior_meshgrid()
        wex = spec.exact(xc, yc, t_final)
        vol = sim.grid.cell_volume
        errs_rho.append(metrics.l1_error(w[RHO], wex[RHO], vol))
        errs_p.append(metrics.l1_error(w[PR], wex[PR], vol))
        print(f"  grid {n:4d}x{n:<4d} rho-l1 {errs_rho[-1]:.6e} "
              f"p-l1 {errs_p[-1]:.6e}", flush=True)

    orders_rho = metrics.convergence_orders(errs_rho)
    orders_p = metrics.convergence_orders(errs_p)
    path = os.path.join(outdir, "convergence.csv")
    with open(path, "w") as fh:
        fh.write("grid,rho_error,rho_order,p_error,p_order\n")
        for k, n in enumerate(grids):
            ro = "" if k == 0 else f"{orders_rho[k - 1]:.3f}"
            po = "" if k == 0 else f"{orders_p[k - 1]:.3f}"
            fh.write(f"{n},{errs_rho[k]:.6e},{ro},{errs_p[k]:.6e},{po}\n")
    print(f"convergence table written to {path}")
    print(f"{'grid':>10} {'rho-error':>12} {'rho-order':>10} "
          f"{'p-error':>12} {'p-order':>10}")
    for k, n in enumerate(grids):
        ro = "-" if k == 0 else f"{orders_rho[k - 1]:.2f}"
        po = "-" if k == 0 else f"{orders_p[k - 1]:.2f}"
        print(f"{n:>7}^2 {errs_rho[k]:>12.3e} {ro:>10} "
              f"{errs_p[k]:>12.3e} {po:>10}")
    _manifest(cfg, outdir, time.monotonic() - start)
    return 0


def reference_run_1d(spec, n_ref, cache_dir, limiter=None, cfl=0.4):
    """Fine-grid uncorrected run used as the 1-D reference; cached by a
    content hash of everything that determines it."""
    limiter = limiter if limiter is not None else Limiter("minmod")
    key = "|".join([
        "ref1d-v1", spec.name, str(n_ref), limiter.kind, f"{limiter.theta}",
        f"{cfl}", f"{spec.t_final}", f"{spec.gamma}",
    ])
    digest = hashlib.sha256(key.encode()).hexdigest()[:16]
    path = os.path.join(cache_dir, f"ref_{spec.name}_{digest}.npz")
    if os.path.exists(path):
        data = np.load(path)
        return data["x"], data["w"]
    sim = Simulation1D(spec, n_ref, limiter=limiter, cfl=cfl,
                       use_correction=False)
    q, _ = sim.run_to_time(sim.initial_state(), spec.t_final)
    w = timestepper.primitive_interior_1d(sim, q)
    x = sim.grid.x_centers()
    os.makedirs(cache_dir, exist_ok=True)
    np.savez(path, x=x, w=w)
    return x, w


def compare_correction_1d(cfg, spec):
    """Paired corrected/uncorrected runs against the fine reference."""
    if spec.dim != 1:
        raise ConfigError("--compare-correction expects a 1-D problem")
    nx, _, cfl, limiter, t_final = _pin_resolved(cfg, spec)
    outdir = cfg.out
    os.makedirs(outdir, exist_ok=True)
    start = time.monotonic()

    x_ref, w_ref = reference_run_1d(spec, cfg.ref_n,
                                    os.path.join(outdir, "_refcache"),
                                    cfl=cfl)
    ic_ref, rho_l, rho_r = metrics.locate_contact(
        w_ref[RHO], w_ref[PR], CONTACT_WINDOW_REF)
    contact_x = x_ref[ic_ref]

    results = {}
    for label, use_corr in (("corrected", True), ("uncorrected", False)):
        sim = Simulation1D(spec, nx, limiter=limiter, cfl=cfl,
                           use_correction=use_corr)
        q, _ = sim.run_to_time(sim.initial_state(), t_final)
        w = timestepper.primitive_interior_1d(sim, q)
        x = sim.grid.x_centers()
        io.write_csv_1d(os.path.join(outdir, f"fields_{label}.csv"),
                        x, w, q[-1, sim.grid.interior])
        center = int(np.argmin(np.abs(x - contact_x)))
        count = metrics.contact_sharpness(w[RHO], (rho_l, rho_r), center)
        dist = metrics.window_l1(x, w[RHO], x_ref, w_ref[RHO], center,
                                 CONTACT_HALFWIDTH)
        results[label] = (count, dist)
        print(f"{label:>12}: contact cells = {count}, "
              f"window l1 = {dist:.6e}")

    with open(os.path.join(outdir, "comparison.csv"), "w") as fh:
        fh.write("variant,contact_cells,window_l1\n")
        for label, (count, dist) in results.items():
            fh.write(f"{label},{count},{dist:.17g}\n")
    _manifest(cfg, outdir, time.monotonic() - start,
              extras=[("contact_x", f"{contact_x:.6f}")])
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        spec = cfg.validate()
    except (ConfigError, ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if cfg.convergence:
            return run_convergence(cfg, spec)
        if cfg.compare_correction:
            return compare_correction_1d(cfg, spec)
        return run_single(cfg, spec)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, AdmissibilityError) as exc:
        print(f"solver abort: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
