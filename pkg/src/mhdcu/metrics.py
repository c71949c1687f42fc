"""Error norms, convergence orders, and contact-resolution diagnostics."""

from __future__ import annotations

import numpy as np


def l1_error(num, exact, cell_volume):
    """Grid-weighted l1 norm sum |num - exact| * cell_volume.

    Works per component when fed (ncomp, ...) arrays: reduction runs over
    every axis except the first when the input has more than one dimension
    matching the exact field shape.
    """
    num = np.asarray(num, float)
    exact = np.asarray(exact, float)
    if num.shape != exact.shape:
        raise ValueError(f"shape mismatch {num.shape} vs {exact.shape}")
    diff = np.abs(num - exact)
    return diff.sum() * cell_volume


def convergence_orders(errors):
    """Orders log2(E_coarse / E_fine) between consecutive grid doublings."""
    errors = np.asarray(errors, float)
    return np.log2(errors[:-1] / errors[1:])


def locate_contact(rho, p, window):
    """Index and plateau levels of the contact wave in a 1-D profile.

    The contact is the largest density jump at (nearly) continuous pressure:
    it maximizes the normalized windowed density jump minus the normalized
    windowed pressure jump. Returns (index, rho_left, rho_right).
    """
    rho = np.asarray(rho, float)
    p = np.asarray(p, float)
    n = rho.size
    if n < 8 * window:
        raise ValueError("profile too short for the requested window")
    i = np.arange(window, n - window)
    drho = np.abs(rho[i + window - 1] - rho[i - window])
    dp = np.abs(p[i + window - 1] - p[i - window])
    score = drho / drho.max() - dp / dp.max()
    ic = int(i[np.argmax(score)])
    lo = max(ic - 4 * window, 0)
    hi = min(ic + 4 * window, n)
    rho_l = float(np.median(rho[lo:ic - window]))
    rho_r = float(np.median(rho[ic + window:hi]))
    return ic, rho_l, rho_r


def contact_sharpness(rho, levels, center=None):
    """Number of cells strictly inside the 5%..95% band of a jump.

    ``levels`` are the two plateau values bounding the transition; ``center``
    optionally pins the cell index around which to look (nearest mid-level
    crossing otherwise). Returns None when the profile never crosses the mid
    level (no detectable jump).
    """
    rho = np.asarray(rho, float)
    lo, hi = sorted(levels)
    jump = hi - lo
    if jump <= 0.0:
        raise ValueError("jump levels must differ")
    mid = lo + 0.5 * jump
    above = rho > mid
    crossings = np.flatnonzero(above[1:] != above[:-1])
    if crossings.size == 0:
        return None
    if center is None:
        ic = int(crossings[0])
    else:
        ic = int(crossings[np.argmin(np.abs(crossings - center))])
    t_lo = lo + 0.05 * jump
    t_hi = lo + 0.95 * jump

    def interior(k):
        return t_lo < rho[k] < t_hi

    count = 0
    k = ic
    while k >= 0 and interior(k):
        count += 1
        k -= 1
    k = ic + 1
    while k < rho.size and interior(k):
        count += 1
        k += 1
    return count


def window_l1(x, rho, x_ref, rho_ref, center_index, halfwidth):
    """l1 distance to a reference profile over +-halfwidth cells.

    The reference is linearly interpolated onto the coarse coordinates.
    """
    x = np.asarray(x, float)
    rho = np.asarray(rho, float)
    lo = max(center_index - halfwidth, 0)
    hi = min(center_index + halfwidth + 1, x.size)
    ref = np.interp(x[lo:hi], x_ref, rho_ref)
    dx = x[1] - x[0]
    return float(np.abs(rho[lo:hi] - ref).sum() * dx)
