"""1-D central-upwind MHD scheme with the low-dissipation correction.

Two forms are provided:

* the three-stage fully-discrete update (reconstruction, fan evolution with
  midpoint-rule flux integrals, contact-aware projection back to the grid),
  used by the 1-D benchmark runs; and
* the semi-discrete flux / right-hand side with the correction term K*, used
  by consistency tests and as the building block of the 2-D scheme.

Evolved 1-D states carry 7 components (rho, mx, my, mz, by, bz, en); the
constant normal field B1 is a run parameter and is inserted when full
8-component states are needed.
"""

from __future__ import annotations

import numpy as np

from . import core
from .core import AdmissibilityError, MX, MY, MZ, RHO, SPEED_FLOOR
from .reconstruct import interface_states, minmod, slopes

# rows of the 8-component layout kept in evolved 1-D storage; the energy row
# lands at index 6 of the packed layout (rho, mx, my, mz, by, bz, en)
FULL_ROWS = np.array([core.RHO, core.MX, core.MY, core.MZ, core.BY, core.BZ, core.EN])
EN7 = 6
N1D = 7


def expand_b1(q7, b1):
    """Insert the constant B1 row into a 7-component state array."""
    q8 = np.empty((core.NCOMP,) + q7.shape[1:], dtype=float)
    q8[FULL_ROWS] = q7
    q8[core.BX] = b1
    return q8


def drop_b1(q8):
    """Strip the B1 row from an 8-component array."""
    return q8[FULL_ROWS]


def _flux7(q7, b1, gamma, context=""):
    """Physical flux of a 7-component state (B1 row dropped)."""
    q8 = expand_b1(q7, b1)
    w8 = core.cons_to_prim(q8, gamma, context)
    return drop_b1(core.physical_flux(q8, w8, 0)), w8


def _face_speeds(qm7, qp7, b1, gamma, floor, context=""):
    wm = core.cons_to_prim(expand_b1(qm7, b1), gamma, context + "left state: ")
    wp = core.cons_to_prim(expand_b1(qp7, b1), gamma, context + "right state: ")
    return core._speeds_from_prim(wm, wp, gamma, 0, floor)


def _recon_and_speeds(q7, grid, gamma, b1, limiter, context=""):
    """Shared per-step reconstruction: slopes, face states, speeds."""
    s = slopes(q7, grid.dx, -1, limiter)
    dx = grid.dx
    qm = q7[:, 1:-2] + (0.5 * dx) * s[:, 1:-2]
    qp = q7[:, 2:-1] - (0.5 * dx) * s[:, 2:-1]
    am, ap = _face_speeds(qm, qp, b1, gamma, 0.0, context)
    return s, qm, qp, am, ap


def dt_from_speeds(am, ap, dx, cfl):
    smax = max(float(np.max(ap)), float(np.max(-am)), SPEED_FLOOR)
    return cfl * dx / smax


def dt_1d(q7, grid, gamma, b1, cfl, limiter):
    """CFL time step dt = cfl * dx / max_faces max(a+, -a-)."""
    _, _, _, am, ap = _recon_and_speeds(q7, grid, gamma, b1, limiter,
                                        "dt estimate: ")
    return dt_from_speeds(am, ap, grid.dx, cfl)


def semi_discrete_flux_1d(qm7, qp7, speeds, gamma, b1, use_correction=True):
    """Numerical flux F = [a+ f(Q-) - a- f(Q+)]/(a+-a-)
    + a+a-(Q+-Q-)/(a+-a-) + K*."""
    am, ap = speeds
    fm, _ = _flux7(qm7, b1, gamma, "flux left state: ")
    fp, _ = _flux7(qp7, b1, gamma, "flux right state: ")
    flux = core.central_upwind_flux(qm7, qp7, fm, fp, am, ap)
    if use_correction:
        qstar = core.hll_state(qm7[:4], qp7[:4], fm[:4], fp[:4], am, ap)
        k8, _, _, _ = core._k_star(
            qstar, qm7[RHO], qp7[RHO], am, ap, 0, nonpositive="raise"
        )
        flux = flux + drop_b1(k8)
    return flux


def rhs_1d(q7, grid, gamma, b1, limiter, use_correction=True, floor=SPEED_FLOOR):
    """Semi-discrete right-hand side -(F_{j+1/2} - F_{j-1/2})/dx.

    Ghost cells must be filled. Returns a full-size array with zeros in the
    ghost entries. The one-sided speeds carry the 2-D-style floor so the flux
    denominators never vanish.
    """
    dx = grid.dx
    qm, qp = interface_states(q7, dx, -1, limiter)
    am, ap = _face_speeds(qm, qp, b1, gamma, floor, "rhs: ")
    flux = semi_discrete_flux_1d(qm, qp, (am, ap), gamma, b1, use_correction)
    out = np.zeros_like(q7)
    out[:, grid.ng:-grid.ng] = -(flux[:, 1:] - flux[:, :-1]) / dx
    return out


def _fan_split(q_int, rho_edge_l, rho_edge_r, am, ap, use_correction):
    """Split the fan average into the two constant states flanking the contact.

    Returns (Q_L, Q_R, v_n^int). The split uses
    rho_{L,R} = rho_int + delta / (a∓ - v1_int), which keeps the fan content
    (v-a-) Q_L + (a+-v) Q_R = (a+-a-) Q_int exact and recovers the
    semi-discrete correction K* in the dt -> 0 limit. Momentum and magnetic
    rows follow the contact relations (v and B continuous); the energy rows
    shift by (rho_{L,R} - rho_int)/2 |V_int|^2.
    """
    rho_int = q_int[RHO]
    bad = core._first_bad(rho_int <= 0.0)
    if bad is not None:
        raise AdmissibilityError("non-positive fan-average density", bad)
    v1 = q_int[MX] / rho_int
    v2 = q_int[MY] / rho_int
    v3 = q_int[MZ] / rho_int

    if use_correction:
        s_minus = (v1 - am) * (rho_int - rho_edge_l)
        s_plus = (ap - v1) * (rho_edge_r - rho_int)
        delta = minmod(s_minus, s_plus)
    else:
        delta = np.zeros_like(rho_int)

    den_l = am - v1
    den_r = ap - v1
    with np.errstate(divide="ignore", invalid="ignore"):
        d_l = np.where(den_l != 0.0, delta / den_l, 0.0)
        d_r = np.where(den_r != 0.0, delta / den_r, 0.0)

    # direction of the jump: (1, v, 0_B, |V|^2/2) in the 7-component layout
    direction = np.zeros_like(q_int)
    direction[RHO] = 1.0
    direction[MX] = v1
    direction[MY] = v2
    direction[MZ] = v3
    direction[EN7] = 0.5 * (v1 * v1 + v2 * v2 + v3 * v3)

    q_l = q_int + d_l * direction
    q_r = q_int + d_r * direction
    return q_l, q_r, v1


def fully_discrete_step_1d(q7, grid, gamma, b1, limiter, dt,
                           use_correction=True, precomp=None):
    """One fully-discrete step: reconstruction, fan evolution, projection.

    ``q7`` must have its ghost cells filled; the returned array has updated
    interior cells and stale ghosts. ``precomp`` may carry the
    (slopes, faces, speeds) tuple of _recon_and_speeds to share the work
    with the dt estimate.
    """
    ng, dx = grid.ng, grid.dx
    if precomp is None:
        precomp = _recon_and_speeds(q7, grid, gamma, b1, limiter, "step: ")
    s, _, _, am, ap = precomp

    # fan-edge values at t^n and their midpoint-in-time Taylor update
    q_edge_l = q7[:, 1:-2] + (0.5 * dx + am * dt) * s[:, 1:-2]
    q_edge_r = q7[:, 2:-1] - (0.5 * dx - ap * dt) * s[:, 2:-1]

    # predictor flux derivative per cell from the cell's own face values
    q_cell_p = q7[:, 1:-1] + (0.5 * dx) * s[:, 1:-1]
    q_cell_m = q7[:, 1:-1] - (0.5 * dx) * s[:, 1:-1]
    f_cell_p, _ = _flux7(q_cell_p, b1, gamma, "predictor: ")
    f_cell_m, _ = _flux7(q_cell_m, b1, gamma, "predictor: ")
    fx = np.zeros_like(q7)
    fx[:, 1:-1] = (f_cell_p - f_cell_m) / dx

    q_half_l = q_edge_l - (0.5 * dt) * fx[:, 1:-2]
    q_half_r = q_edge_r - (0.5 * dt) * fx[:, 2:-1]
    f_half_l, _ = _flux7(q_half_l, b1, gamma, "fan edge: ")
    f_half_r, _ = _flux7(q_half_r, b1, gamma, "fan edge: ")

    # fan average over [x + a- dt, x + a+ dt] (the dt factors cancel)
    spread = ap - am
    q_int_face = (
        -am * (q7[:, 1:-2] + (0.5 * dx + 0.5 * am * dt) * s[:, 1:-2])
        + ap * (q7[:, 2:-1] + (-0.5 * dx + 0.5 * ap * dt) * s[:, 2:-1])
        - (f_half_r - f_half_l)
    ) / spread

    # smooth-region average per interior cell
    am_r, ap_r = am[1:], ap[1:]      # right face of cell i
    am_l, ap_l = am[:-1], ap[:-1]    # left face of cell i
    dxn = dx + (am_r - ap_l) * dt
    q_int_cell = (
        q7[:, 2:-2]
        + 0.5 * (am_r + ap_l) * dt * s[:, 2:-2]
        - (dt / dxn) * (f_half_l[:, 1:] - f_half_r[:, :-1])
    )

    q_l, q_r, v_int = _fan_split(
        q_int_face, q_half_l[RHO], q_half_r[RHO], am, ap, use_correction
    )

    # projection back to the unstaggered cells
    vplus = np.maximum(v_int, 0.0)
    vminus = np.minimum(v_int, 0.0)
    out = q7.copy()
    out[:, ng:-ng] = q_int_cell + (dt / dx) * (
        ap_l * (q_r[:, :-1] - q_int_cell)
        + vplus[:-1] * (q_l[:, :-1] - q_r[:, :-1])
        - am_r * (q_l[:, 1:] - q_int_cell)
        + vminus[1:] * (q_l[:, 1:] - q_r[:, 1:])
    )
    return out
