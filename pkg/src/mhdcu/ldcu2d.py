"""Dimension-by-dimension 2-D semi-discrete scheme for the cell-centered
variables, with per-axis contact corrections.

Each stage reconstructs all eight components to faces (the centered B1, B2
rows are face-average synchronized copies), builds one-sided speeds from the
full states, evaluates the physical fluxes, and assembles the central-upwind
flux plus K* per axis. Only the hydrodynamic rows and B3 enter the update;
the face-centered field is advanced by constrained transport instead.

Two equivalent sweep implementations exist: a numpy composition of the
reconstruct/core building blocks (the reference) and a fused numba kernel
(the default when numba is importable). They are pinned against each other
in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, core
from .core import BX, BY, MX, MY, RHO, SPEED_FLOOR, AdmissibilityError
from .reconstruct import interface_states

_LIM_CODE = {"minmod": _kernels.LIM_MINMOD, "mc": _kernels.LIM_MC,
             "none": _kernels.LIM_NONE}


@dataclass
class FaceData:
    """Reconstructed one-sided face states and speeds (numpy reference path).

    x-face arrays span all cell rows of the ghost-extended grid (the corner
    electric field needs them beyond the interior band); likewise y-face
    arrays span all cell columns.
    """

    xm: np.ndarray   # (8, nx+1, ny+2ng)
    xp: np.ndarray
    am: np.ndarray   # (nx+1, ny+2ng)
    ap: np.ndarray
    ym: np.ndarray   # (8, nx+2ng, ny+1)
    yp: np.ndarray
    bm: np.ndarray   # (nx+2ng, ny+1)
    bp: np.ndarray
    wxm: np.ndarray | None = None
    wxp: np.ndarray | None = None
    wym: np.ndarray | None = None
    wyp: np.ndarray | None = None


@dataclass
class SweepData:
    """Per-face products of one reconstruction/flux sweep over both axes.

    Fluxes include the correction term when requested; the transverse
    velocities and one-sided speeds feed the corner electric field. ``ndeg``
    counts faces whose correction was dropped for a non-positive fan density
    and ``nfloor`` counts recovery-floor activations on stage states.
    """

    fx: np.ndarray    # (8, nx+1, ny+2ng) x-face fluxes
    am: np.ndarray
    ap: np.ndarray
    v2m: np.ndarray   # transverse v2 on x-faces, both sides
    v2p: np.ndarray
    gy: np.ndarray    # (8, nx+2ng, ny+1) y-face fluxes
    bm: np.ndarray
    bp: np.ndarray
    v1m: np.ndarray
    v1p: np.ndarray
    ndeg: int = 0
    nfloor: int = 0


def face_data(u, grid, gamma, limiter):
    """Reconstruct interface states and one-sided speeds on both face sets."""
    xm, xp = interface_states(u, grid.dx, 1, limiter)
    ym, yp = interface_states(u, grid.dy, 2, limiter)
    wxm = core.cons_to_prim(xm, gamma, "x-face left state: ")
    wxp = core.cons_to_prim(xp, gamma, "x-face right state: ")
    wym = core.cons_to_prim(ym, gamma, "y-face south state: ")
    wyp = core.cons_to_prim(yp, gamma, "y-face north state: ")
    am, ap = core._speeds_from_prim(wxm, wxp, gamma, 0, SPEED_FLOOR)
    bm, bp = core._speeds_from_prim(wym, wyp, gamma, 1, SPEED_FLOOR)
    return FaceData(xm, xp, am, ap, ym, yp, bm, bp, wxm, wxp, wym, wyp)


def _axis_flux(qm, qp, wm, wp, am, ap, ax, use_correction):
    """Central-upwind flux plus K* along one axis; returns (flux, ndeg)."""
    fm = core.physical_flux(qm, wm, ax)
    fp = core.physical_flux(qp, wp, ax)
    flux = core.central_upwind_flux(qm, qp, fm, fp, am, ap)
    ndeg = 0
    if use_correction:
        # the correction only reads the density/momentum rows of Q*
        qstar = core.hll_state(qm[:4], qp[:4], fm[:4], fp[:4], am, ap)
        k, _, _, ndeg = core._k_star(
            qstar, qm[RHO], qp[RHO], am, ap, ax, nonpositive="zero"
        )
        flux += k
    return flux, ndeg


def _sweep_numpy(u, grid, gamma, limiter, use_correction, recovery):
    xm, xp = interface_states(u, grid.dx, 1, limiter)
    ym, yp = interface_states(u, grid.dy, 2, limiter)
    if recovery > 0.0:
        wxm, n1 = core.cons_to_prim_floored(xm, gamma, recovery)
        wxp, n2 = core.cons_to_prim_floored(xp, gamma, recovery)
        wym, n3 = core.cons_to_prim_floored(ym, gamma, recovery)
        wyp, n4 = core.cons_to_prim_floored(yp, gamma, recovery)
        nfloor = n1 + n2 + n3 + n4
    else:
        wxm = core.cons_to_prim(xm, gamma, "x-face left state: ")
        wxp = core.cons_to_prim(xp, gamma, "x-face right state: ")
        wym = core.cons_to_prim(ym, gamma, "y-face south state: ")
        wyp = core.cons_to_prim(yp, gamma, "y-face north state: ")
        nfloor = 0
    am, ap = core._speeds_from_prim(wxm, wxp, gamma, 0, SPEED_FLOOR)
    bm, bp = core._speeds_from_prim(wym, wyp, gamma, 1, SPEED_FLOOR)
    fx, ndeg_x = _axis_flux(xm, xp, wxm, wxp, am, ap, 0, use_correction)
    gy, ndeg_y = _axis_flux(ym, yp, wym, wyp, bm, bp, 1, use_correction)
    return SweepData(
        fx=fx, am=am, ap=ap,
        v2m=wxm[MY], v2p=wxp[MY],
        gy=gy, bm=bm, bp=bp,
        v1m=wym[MX], v1p=wyp[MX],
        ndeg=ndeg_x + ndeg_y, nfloor=nfloor,
    )


def _sweep_fast(u, grid, gamma, limiter, use_correction, recovery):
    theta = limiter.theta
    code = _LIM_CODE[limiter.kind]
    fx, am, ap, v2m, v2p, ndeg_x, nfl_x, bad_x = _kernels.face_sweep_axis(
        u, grid.dx, gamma, SPEED_FLOOR, theta, code, use_correction,
        MX, BX, MY, recovery)
    if bad_x[0] >= 0:
        raise AdmissibilityError("inadmissible x-face state", bad_x)
    ut = u.transpose(0, 2, 1)
    (gy_t, bm_t, bp_t, v1m_t, v1p_t, ndeg_y, nfl_y,
     bad_y) = _kernels.face_sweep_axis(
        ut, grid.dy, gamma, SPEED_FLOOR, theta, code, use_correction,
        MY, BY, MX, recovery)
    if bad_y[0] >= 0:
        raise AdmissibilityError("inadmissible y-face state", bad_y)
    return SweepData(
        fx=fx, am=am, ap=ap, v2m=v2m, v2p=v2p,
        gy=gy_t.transpose(0, 2, 1), bm=bm_t.T, bp=bp_t.T,
        v1m=v1m_t.T, v1p=v1p_t.T,
        ndeg=ndeg_x + ndeg_y, nfloor=nfl_x + nfl_y,
    )


def face_sweep(u, grid, gamma, limiter, use_correction=True, fast=None,
               recovery=0.0):
    """One reconstruction/speed/flux sweep over both axes.

    ``recovery`` > 0 rides through inadmissible transient stage states by
    clamping the recovered density/pressure at that floor (counted in the
    result); 0 makes inadmissible face states abort.
    """
    if fast is None:
        fast = _kernels.AVAILABLE
    impl = _sweep_fast if fast else _sweep_numpy
    return impl(u, grid, gamma, limiter, use_correction, recovery)


def hydro_rhs(sweep, grid):
    """Flux-difference tendencies of (rho, m, B3, E) on the full cell array.

    Returns du with zeros in the ghost entries and in the B1/B2 rows (those
    belong to constrained transport).
    """
    ng, nx, ny = grid.ng, grid.nx, grid.ny
    du = np.zeros((core.NCOMP, nx + 2 * ng, ny + 2 * ng))
    du[:, ng:ng + nx, ng:ng + ny] = (
        -(sweep.fx[:, 1:nx + 1, ng:ng + ny]
          - sweep.fx[:, 0:nx, ng:ng + ny]) / grid.dx
        - (sweep.gy[:, ng:ng + nx, 1:ny + 1]
           - sweep.gy[:, ng:ng + nx, 0:ny]) / grid.dy
    )
    du[BX] = 0.0
    du[BY] = 0.0
    return du


def rhs_hydro_2d(u, b1, b2, grid, gamma, limiter, use_correction=True):
    """Convenience wrapper: sweep and assemble the hydro tendencies."""
    del b1, b2  # face field enters through the synchronized B1/B2 rows of u
    sweep = face_sweep(u, grid, gamma, limiter, use_correction)
    return hydro_rhs(sweep, grid), sweep.ndeg


def max_face_speeds(sweep, grid):
    """Largest |one-sided speed| per axis over the interior face bands."""
    ng, nx, ny = grid.ng, grid.nx, grid.ny
    ax = sweep.ap[0:nx + 1, ng:ng + ny]
    amx = sweep.am[0:nx + 1, ng:ng + ny]
    by = sweep.bp[ng:ng + nx, 0:ny + 1]
    bmy = sweep.bm[ng:ng + nx, 0:ny + 1]
    sx = max(float(np.max(ax)), float(np.max(-amx)))
    sy = max(float(np.max(by)), float(np.max(-bmy)))
    return sx, sy


def dt_2d(u, b1, b2, grid, gamma, limiter, cfl):
    """dt = cfl * min(dx / max(a+, -a-), dy / max(b+, -b-))."""
    del b1, b2
    sweep = face_sweep(u, grid, gamma, limiter, use_correction=False)
    sx, sy = max_face_speeds(sweep, grid)
    return cfl * min(grid.dx / max(sx, SPEED_FLOOR), grid.dy / max(sy, SPEED_FLOOR))
