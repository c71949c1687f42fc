"""Slope-limited piecewise-linear reconstruction on cell averages.

All operations act componentwise on whatever leading axes the input carries;
the reconstruction axis is passed explicitly. Limiter choices:

    minmod   two-argument minmod of the one-sided differences
    mc       three-argument minmod(theta*dL, central, theta*dR), theta in [1,2]
    none     plain central difference (no limiting)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LIMITER_KINDS = ("minmod", "mc", "none")


@dataclass(frozen=True)
class Limiter:
    kind: str = "minmod"
    theta: float = 1.3

    def __post_init__(self):
        if self.kind not in LIMITER_KINDS:
            raise ValueError(f"unknown limiter kind {self.kind!r}")
        if self.kind == "mc" and not 1.0 <= self.theta <= 2.0:
            raise ValueError(f"mc limiter needs theta in [1, 2], got {self.theta}")


MINMOD = Limiter("minmod")


def minmod(a, b):
    """sign(a) * min(|a|, |b|) where a and b share sign, else 0.

    Uses the branch-free identity max(0, min(a, b)) + min(0, max(a, b)).
    """
    return np.maximum(0.0, np.minimum(a, b)) + np.minimum(0.0, np.maximum(a, b))


def minmod3(a, b, c):
    """Three-argument minmod: common-sign minimum magnitude, else 0."""
    lo = np.minimum(np.minimum(a, b), c)
    hi = np.maximum(np.maximum(a, b), c)
    return np.maximum(0.0, lo) + np.minimum(0.0, hi)


def limited_slope(qm, q0, qp, h, limiter):
    """Limited slope of the middle cell from the three-cell stencil."""
    if limiter.kind == "none":
        return (qp - qm) / (2.0 * h)
    d_lo = q0 - qm
    d_hi = qp - q0
    if limiter.kind == "minmod":
        return minmod(d_lo, d_hi) * (1.0 / h)
    th = limiter.theta / h
    return minmod3(th * d_lo, (d_lo + d_hi) * (0.5 / h), th * d_hi)


def _axslice(ndim, axis, sl):
    idx = [slice(None)] * ndim
    idx[axis] = sl
    return tuple(idx)


def slopes(q, h, axis, limiter):
    """Per-cell limited slopes along ``axis``; zero where the stencil is cut."""
    nd = q.ndim
    out = np.zeros_like(q)
    out[_axslice(nd, axis, slice(1, -1))] = limited_slope(
        q[_axslice(nd, axis, slice(None, -2))],
        q[_axslice(nd, axis, slice(1, -1))],
        q[_axslice(nd, axis, slice(2, None))],
        h,
        limiter,
    )
    return out


def interface_states(q, h, axis, limiter):
    """One-sided interface values (Q-, Q+) on all faces with full stencils.

    For N cells along ``axis`` the result has N-3 faces: face j+1/2 takes Q-
    from cell j's line at its right edge and Q+ from cell j+1's line at its
    left edge, for j = 1 .. N-3.
    """
    nd = q.ndim
    s = slopes(q, h, axis, limiter)
    lo = _axslice(nd, axis, slice(1, -2))
    hi = _axslice(nd, axis, slice(2, -1))
    qm = q[lo] + (0.5 * h) * s[lo]
    qp = q[hi] - (0.5 * h) * s[hi]
    return qm, qp
