"""Output writers and config parsing.

Formats:
  * 1-D fields: CSV with header (x, rho, v1, v2, v3, B2, B3, p, E);
  * 2-D fields: one plain-text matrix per component plus a JSON metadata
    sidecar (round-trips bit-exactly at 17 significant digits);
  * VTK legacy ASCII STRUCTURED_POINTS with CELL_DATA for external viewers;
  * manifests and config files: ``key = value`` lines, ``#`` comments.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .core import BX, BY, BZ, PR, RHO, VX, VY, VZ

FMT = "%.17g"

CSV_1D_COLUMNS = ("x", "rho", "v1", "v2", "v3", "B2", "B3", "p", "E")

GRID_COMPONENTS = ("rho", "v1", "v2", "v3", "B1", "B2", "B3", "p")


def write_csv_1d(path, x, w, energy):
    """Write a 1-D primitive profile; one row per cell."""
    cols = [x, w[RHO], w[VX], w[VY], w[VZ], w[BY], w[BZ], w[PR], energy]
    table = np.column_stack(cols)
    np.savetxt(path, table, fmt=FMT, delimiter=",",
               header=",".join(CSV_1D_COLUMNS), comments="")


def read_csv_1d(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    return {name: data[:, k] for k, name in enumerate(CSV_1D_COLUMNS)}


def write_grid_dump(directory, w, meta):
    """Write per-component text matrices with a JSON sidecar.

    ``w`` is a primitive (8, nx, ny) interior field; matrices are stored with
    x as the row index.
    """
    os.makedirs(directory, exist_ok=True)
    rows = (RHO, VX, VY, VZ, BX, BY, BZ, PR)
    for name, row in zip(GRID_COMPONENTS, rows):
        np.savetxt(os.path.join(directory, f"{name}.txt"), w[row], fmt=FMT)
    with open(os.path.join(directory, "meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_grid_dump(directory):
    with open(os.path.join(directory, "meta.json")) as fh:
        meta = json.load(fh)
    arrays = {}
    for name in GRID_COMPONENTS:
        arrays[name] = np.loadtxt(os.path.join(directory, f"{name}.txt"),
                                  ndmin=2)
    return arrays, meta


def write_vtk(path, grid, w):
    """Legacy ASCII STRUCTURED_POINTS file with cell-centered data.

    Cell data on an nx x ny grid is declared with point DIMENSIONS
    (nx+1, ny+1, 1) per the legacy-format convention.
    """
    nx, ny = grid.nx, grid.ny
    lines = [
        "# vtk DataFile Version 3.0",
        "mhdcu fields",
        "ASCII",
        "DATASET STRUCTURED_POINTS",
        f"DIMENSIONS {nx + 1} {ny + 1} 1",
        f"ORIGIN {grid.x0:.17g} {grid.y0:.17g} 0",
        f"SPACING {grid.dx:.17g} {grid.dy:.17g} 1",
        f"CELL_DATA {nx * ny}",
    ]

    def scalar(name, arr):
        lines.append(f"SCALARS {name} double 1")
        lines.append("LOOKUP_TABLE default")
        # VTK orders x fastest
        lines.extend(FMT % v for v in arr.T.ravel())

    def vector(name, ax, ay, az):
        lines.append(f"VECTORS {name} double")
        stacked = np.stack([ax.T.ravel(), ay.T.ravel(), az.T.ravel()], axis=1)
        lines.extend(" ".join(FMT % c for c in row) for row in stacked)

    scalar("rho", w[RHO])
    scalar("pressure", w[PR])
    vector("velocity", w[VX], w[VY], w[VZ])
    vector("magnetic_field", w[BX], w[BY], w[BZ])
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_diagnostics_csv(path, rows):
    header = ("step,t,dt,total_rho,total_mx,total_my,total_mz,"
              "total_bx,total_by,total_bz,total_en,max_rel_div,field_rel_div,"
              "kstar_degenerate_faces,recovery_floor_hits")
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for r in rows:
            totals = r.totals
            if totals.size == 7:  # 1-D rows carry no B1 total
                totals = np.insert(totals, 4, np.nan)
            vals = [r.step, r.t, r.dt, *totals, r.max_rel_div,
                    r.field_rel_div, r.ndeg, r.nfloor]
            fh.write(",".join(FMT % v if isinstance(v, float) else str(v)
                              for v in vals) + "\n")


def write_manifest(path, config_items, info_items):
    """Manifest = reusable config lines plus commented run information."""
    with open(path, "w") as fh:
        for key, value in config_items:
            fh.write(f"{key} = {value}\n")
        for key, value in info_items:
            fh.write(f"# {key} = {value}\n")


def read_config(path):
    """Parse ``key = value`` lines; '#' starts a comment, blanks ignored."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out
