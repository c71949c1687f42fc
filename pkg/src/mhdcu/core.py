"""Ideal-MHD state algebra: variable conversions, physical fluxes, wave speeds,
HLL intermediate states, and the low-dissipation correction term.

State arrays carry the component index on axis 0 and broadcast over any grid
shape behind it, so every function here works on a single state ``(8,)``, a
1-D row ``(8, n)`` or a 2-D field ``(8, nx, ny)`` alike.

Conserved layout (fixed repo-wide):
    0 rho      mass density
    1 mx       x-momentum (rho*v1)
    2 my       y-momentum (rho*v2)
    3 mz       z-momentum (rho*v3)
    4 bx       magnetic field B1
    5 by       magnetic field B2
    6 bz       magnetic field B3
    7 en       total energy E = p/(gamma-1) + rho*|v|^2/2 + |B|^2/2

Primitive layout shares the rho and B rows and stores (v1, v2, v3) in the
momentum slots and the gas pressure p in the energy slot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .reconstruct import minmod

RHO, MX, MY, MZ, BX, BY, BZ, EN = range(8)
VX, VY, VZ, PR = MX, MY, MZ, EN
NCOMP = 8

# one-sided speed floor used by the 2-D scheme (and the 1-D semi-discrete path)
SPEED_FLOOR = 1.0e-8

_AXES = {"x": 0, "y": 1}


class AdmissibilityError(ValueError):
    """A state left the physically admissible set (rho > 0, p > 0)."""

    def __init__(self, message, where=None):
        if where is not None:
            message = f"{message} at index {where}"
        super().__init__(message)
        self.where = where


def _first_bad(mask):
    """Index tuple of the first True entry of a violation mask, or None."""
    if mask.ndim == 0:
        return () if mask else None
    flat = np.flatnonzero(mask)
    if flat.size == 0:
        return None
    return np.unravel_index(flat[0], mask.shape)


def prim_state(rho, v, b, p):
    """Build a single (8,) primitive state from scalars/3-vectors."""
    return np.array([rho, v[0], v[1], v[2], b[0], b[1], b[2], p], dtype=float)


def prim_to_cons(w, gamma):
    """Primitive (rho, v, B, p) -> conserved (rho, rho*v, B, E)."""
    w = np.asarray(w, dtype=float)
    bad = _first_bad(w[RHO] <= 0.0)
    if bad is not None:
        raise AdmissibilityError("non-positive density in primitive state", bad)
    bad = _first_bad(w[PR] <= 0.0)
    if bad is not None:
        raise AdmissibilityError("non-positive pressure in primitive state", bad)
    q = np.empty_like(w)
    q[RHO] = w[RHO]
    q[MX] = w[RHO] * w[VX]
    q[MY] = w[RHO] * w[VY]
    q[MZ] = w[RHO] * w[VZ]
    q[BX:BZ + 1] = w[BX:BZ + 1]
    v2 = w[VX] ** 2 + w[VY] ** 2 + w[VZ] ** 2
    b2 = w[BX] ** 2 + w[BY] ** 2 + w[BZ] ** 2
    q[EN] = w[PR] / (gamma - 1.0) + 0.5 * w[RHO] * v2 + 0.5 * b2
    return q


def cons_to_prim(q, gamma, context=""):
    """Conserved -> primitive; raises AdmissibilityError on rho<=0 or p<=0.

    ``context`` is prepended to the error message so callers can tag the
    offending location (cell, face, RK stage).
    """
    q = np.asarray(q, dtype=float)
    bad = _first_bad(q[RHO] <= 0.0)
    if bad is not None:
        raise AdmissibilityError(f"{context}non-positive density", bad)
    w = np.empty_like(q)
    w[RHO] = q[RHO]
    w[VX] = q[MX] / q[RHO]
    w[VY] = q[MY] / q[RHO]
    w[VZ] = q[MZ] / q[RHO]
    w[BX:BZ + 1] = q[BX:BZ + 1]
    kin = 0.5 * (q[MX] ** 2 + q[MY] ** 2 + q[MZ] ** 2) / q[RHO]
    mag = 0.5 * (q[BX] ** 2 + q[BY] ** 2 + q[BZ] ** 2)
    w[PR] = (gamma - 1.0) * (q[EN] - kin - mag)
    bad = _first_bad(w[PR] <= 0.0)
    if bad is not None:
        raise AdmissibilityError(f"{context}non-positive pressure", bad)
    return w


def recover_primitive(q, gamma):
    """Raw algebraic inversion for output and diagnostics: no admissibility
    checks, so the recovered pressure is reported as-is (possibly negative
    for inadmissible states)."""
    q = np.asarray(q, dtype=float)
    w = np.empty_like(q)
    w[RHO] = q[RHO]
    w[VX] = q[MX] / q[RHO]
    w[VY] = q[MY] / q[RHO]
    w[VZ] = q[MZ] / q[RHO]
    w[BX:BZ + 1] = q[BX:BZ + 1]
    kin = 0.5 * (q[MX] ** 2 + q[MY] ** 2 + q[MZ] ** 2) / q[RHO]
    mag = 0.5 * (q[BX] ** 2 + q[BY] ** 2 + q[BZ] ** 2)
    w[PR] = (gamma - 1.0) * (q[EN] - kin - mag)
    return w


# recovery floor applied to transient stage states when flux evaluation is
# asked to ride through them (never applied to accepted states)
RECOVERY_FLOOR = 1.0e-12


def cons_to_prim_floored(q, gamma, floor=RECOVERY_FLOOR):
    """Conserved -> primitive with a counted floor instead of an abort.

    Returns (w, n_floored). The conserved input is never modified; only the
    recovered density/pressure used for flux and speed evaluation is clamped.
    """
    q = np.asarray(q, dtype=float)
    w = np.empty_like(q)
    rho = np.maximum(q[RHO], floor)
    w[RHO] = rho
    w[VX] = q[MX] / rho
    w[VY] = q[MY] / rho
    w[VZ] = q[MZ] / rho
    w[BX:BZ + 1] = q[BX:BZ + 1]
    kin = 0.5 * (q[MX] ** 2 + q[MY] ** 2 + q[MZ] ** 2) / rho
    mag = 0.5 * (q[BX] ** 2 + q[BY] ** 2 + q[BZ] ** 2)
    p = (gamma - 1.0) * (q[EN] - kin - mag)
    nfloor = int(np.count_nonzero(q[RHO] < floor)
                 + np.count_nonzero(p < floor))
    w[PR] = np.maximum(p, floor)
    return w, nfloor


def physical_flux(q, w, axis):
    """Physical flux f(q) (axis=0) or g(q) (axis=1).

    The normal magnetic-field row is identically zero (the induction part of
    the flux for B_n vanishes; in 1-D B1 is constant and the row is dropped
    by the caller).
    """
    vn = w[VX + axis]
    bn = w[BX + axis]
    ptot = w[PR] + 0.5 * (w[BX] ** 2 + w[BY] ** 2 + w[BZ] ** 2)
    vdotb = w[VX] * w[BX] + w[VY] * w[BY] + w[VZ] * w[BZ]
    f = np.empty_like(q)
    f[RHO] = q[MX + axis]
    f[MX] = q[MX] * vn - w[BX] * bn
    f[MY] = q[MY] * vn - w[BY] * bn
    f[MZ] = q[MZ] * vn - w[BZ] * bn
    f[MX + axis] += ptot
    f[BX] = w[BX] * vn - bn * w[VX]
    f[BY] = w[BY] * vn - bn * w[VY]
    f[BZ] = w[BZ] * vn - bn * w[VZ]
    f[BX + axis] = 0.0
    f[EN] = (q[EN] + ptot) * vn - bn * vdotb
    return f


def flux_x(q, gamma):
    """f(q) with pressure recovered from q."""
    return physical_flux(q, cons_to_prim(q, gamma), 0)


def flux_y(q, gamma):
    """g(q) with pressure recovered from q."""
    return physical_flux(q, cons_to_prim(q, gamma), 1)


def fast_speed(w, gamma, axis="x"):
    """Fast magnetosonic speed c_f along the given normal.

    c_f^2 = [(a^2 + b^2) + sqrt((a^2 + b^2)^2 - 4 a^2 b_n^2)] / 2 with
    a^2 = gamma*p/rho, b^2 = |B|^2/rho, b_n^2 = B_n^2/rho.
    """
    ax = _AXES[axis] if isinstance(axis, str) else axis
    a2 = gamma * w[PR] / w[RHO]
    b2 = (w[BX] ** 2 + w[BY] ** 2 + w[BZ] ** 2) / w[RHO]
    bn2 = w[BX + ax] ** 2 / w[RHO]
    s = a2 + b2
    disc = np.maximum(s * s - 4.0 * a2 * bn2, 0.0)
    return np.sqrt(0.5 * (s + np.sqrt(disc)))


def _extreme_lambdas(w, gamma, ax):
    """Smallest and largest flux-Jacobian eigenvalues v_n -/+ c_f."""
    cf = fast_speed(w, gamma, ax)
    vn = w[VX + ax]
    return vn - cf, vn + cf


def _speeds_from_prim(wm, wp, gamma, ax, floor):
    lam1m, lamdm = _extreme_lambdas(wm, gamma, ax)
    lam1p, lamdp = _extreme_lambdas(wp, gamma, ax)
    am = np.minimum(np.minimum(lam1m, lam1p), -floor)
    ap = np.maximum(np.maximum(lamdm, lamdp), floor)
    return am, ap


def interface_speeds(qm, qp, gamma, axis="x", mode="1d"):
    """One-sided maximal local speeds (a-, a+) at an interface.

    mode "1d" keeps the zero floor; mode "2d" applies the +-1e-8 floor.
    """
    floor = 0.0 if mode == "1d" else SPEED_FLOOR
    ax = _AXES[axis] if isinstance(axis, str) else axis
    wm = cons_to_prim(qm, gamma, "left interface state: ")
    wp = cons_to_prim(qp, gamma, "right interface state: ")
    return _speeds_from_prim(wm, wp, gamma, ax, floor)


def hll_state(qm, qp, fm, fp, am, ap):
    """HLL fan average Q* = [a+ Q+ - a- Q- - (f(Q+) - f(Q-))] / (a+ - a-)."""
    return (ap * qp - am * qm - (fp - fm)) / (ap - am)


def hll_intermediate(qm, qp, speeds, gamma, axis="x"):
    """Q* from conserved interface states, recovering fluxes internally."""
    ax = _AXES[axis] if isinstance(axis, str) else axis
    am, ap = speeds
    fm = physical_flux(qm, cons_to_prim(qm, gamma), ax)
    fp = physical_flux(qp, cons_to_prim(qp, gamma), ax)
    return hll_state(qm, qp, fm, fp, am, ap)


def central_upwind_flux(qm, qp, fm, fp, am, ap):
    """Uncorrected central-upwind flux
    [a+ f(Q-) - a- f(Q+)] / (a+ - a-) + a+ a- (Q+ - Q-) / (a+ - a-)."""
    inv = 1.0 / (ap - am)
    flux = ap * inv * fm
    flux -= am * inv * fp
    diff = qp - qm
    diff *= ap * am * inv
    flux += diff
    return flux


@dataclass
class CorrectionTerm:
    """Contact-sharpening correction K* = alpha* delta* (1, v*, 0_B, |v*|^2/2).

    ``vector`` holds the full 8-row correction (B rows identically zero);
    ``delta`` and ``alpha`` are kept for diagnostics and tests.
    """

    delta: np.ndarray
    alpha: np.ndarray
    vector: np.ndarray


def _k_star(qstar, rho_m, rho_p, am, ap, ax, nonpositive="raise"):
    """Correction vector from a precomputed HLL state; returns (K, alpha,
    delta, n_degenerate).

    Only the density and momentum rows of ``qstar`` are read (any layout
    whose first four rows are rho, mx, my, mz works); K always comes back in
    the full 8-row layout. ``nonpositive`` selects the policy for rho* <= 0
    faces: "raise" aborts (1-D contract), "zero" drops the correction there
    and counts them (2-D contract).
    """
    rho_star = qstar[RHO]
    degenerate = rho_star <= 0.0
    ndeg = int(np.count_nonzero(degenerate))
    if ndeg:
        if nonpositive == "raise":
            raise AdmissibilityError(
                "non-positive intermediate density rho*", _first_bad(degenerate)
            )
        rho_safe = np.where(degenerate, 1.0, rho_star)
    else:
        rho_safe = rho_star

    v1 = qstar[MX] / rho_safe
    v2 = qstar[MY] / rho_safe
    v3 = qstar[MZ] / rho_safe
    vn = (v1, v2)[ax]

    s_minus = (vn - am) * (rho_star - rho_m)
    s_plus = (ap - vn) * (rho_p - rho_star)
    delta = minmod(s_minus, s_plus)

    geq = vn >= 0.0
    alpha = np.where(geq, am, ap) / (np.where(geq, am, ap) - vn)

    scale = alpha * delta
    if ndeg:
        scale = np.where(degenerate, 0.0, scale)

    k = np.zeros((NCOMP,) + np.shape(rho_star))
    k[RHO] = scale
    k[MX] = scale * v1
    k[MY] = scale * v2
    k[MZ] = scale * v3
    k[EN] = scale * 0.5 * (v1 * v1 + v2 * v2 + v3 * v3)
    return k, alpha, delta, ndeg


def correction_k_star(qm, qp, speeds, gamma, axis="x", nonpositive="raise"):
    """Public correction-term builder for a pair of interface states."""
    ax = _AXES[axis] if isinstance(axis, str) else axis
    am, ap = speeds
    fm = physical_flux(qm, cons_to_prim(qm, gamma), ax)
    fp = physical_flux(qp, cons_to_prim(qp, gamma), ax)
    qstar = hll_state(qm, qp, fm, fp, am, ap)
    k, alpha, delta, _ = _k_star(qstar, qm[RHO], qp[RHO], am, ap, ax, nonpositive)
    return CorrectionTerm(delta=delta, alpha=alpha, vector=k)
