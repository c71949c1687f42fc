"""Ghost-cell and ghost-face filling for outflow and periodic boundaries.

Outflow is zero-order extrapolation of the nearest interior value into both
ghost layers. Periodic wraps with the interior period; for face arrays the
two physical boundary faces are the same face, so the wrap period along the
normal axis equals the interior cell count.
"""

from __future__ import annotations

import numpy as np

BC_KINDS = ("outflow", "periodic")


def _check(bc):
    if bc not in BC_KINDS:
        raise ValueError(f"unknown boundary condition {bc!r}")


def fill_cells_axis(q, ng, n, bc, axis):
    """Fill ng ghost layers on both ends of ``axis`` for an n-cell interior."""
    _check(bc)
    v = np.moveaxis(q, axis, -1)
    if bc == "periodic":
        v[..., :ng] = v[..., n:n + ng]
        v[..., ng + n:] = v[..., ng:2 * ng]
    else:
        v[..., :ng] = v[..., ng:ng + 1]
        v[..., ng + n:] = v[..., ng + n - 1:ng + n]


def fill_cells_1d(q, grid, bc_x):
    fill_cells_axis(q, grid.ng, grid.n, bc_x, axis=-1)


def fill_cells_2d(u, grid, bc_x, bc_y):
    fill_cells_axis(u, grid.ng, grid.nx, bc_x, axis=1)
    fill_cells_axis(u, grid.ng, grid.ny, bc_y, axis=2)


def _fill_faces_normal(b, ng, n, bc):
    """Fill ghosts along the normal (face-indexed) axis 0 of a face array.

    Interior faces occupy indices [ng, ng + n]; for periodic runs index
    ng + n is the wrap image of index ng.
    """
    _check(bc)
    if bc == "periodic":
        b[:ng] = b[n:n + ng]
        b[ng + n + 1:] = b[ng + 1:2 * ng + 1]
    else:
        b[:ng] = b[ng:ng + 1]
        b[ng + n + 1:] = b[ng + n:ng + n + 1]


def fill_faces_2d(b1, b2, grid, bc_x, bc_y):
    """Fill ghost entries of the staggered field; x sweep first, then y."""
    ng, nx, ny = grid.ng, grid.nx, grid.ny
    _fill_faces_normal(b1, ng, nx, bc_x)
    fill_cells_axis(b1, ng, ny, bc_y, axis=1)
    fill_cells_axis(b2, ng, nx, bc_x, axis=0)
    _fill_faces_normal(b2.T, ng, ny, bc_y)
