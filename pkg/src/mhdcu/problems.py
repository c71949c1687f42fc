"""Benchmark problem catalog: initial data, domains, and exact solutions.

Initial-condition callables return primitive arrays (8, ...) evaluated at the
supplied coordinates; 2-D face fields are sampled at face midpoints unless a
problem supplies exact face averages through ``init_faces``. Problem names
double as the CLI vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import BX, BY, BZ, PR, RHO, VX, VY, VZ
from .reconstruct import Limiter

SQRT4PI = np.sqrt(4.0 * np.pi)


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    dim: int
    xlim: tuple
    gamma: float
    t_final: float
    bc_x: str
    init: Callable
    ylim: Optional[tuple] = None
    bc_y: Optional[str] = None
    b1_const: Optional[float] = None
    exact: Optional[Callable] = None
    init_faces: Optional[Callable] = None
    default_limiter: Limiter = Limiter("minmod")
    default_nx: int = 200
    default_ny: Optional[int] = None

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError("adiabatic index must exceed 1")


def _prim_like(x, rho, v, b, p):
    w = np.empty((8,) + np.shape(x))
    w[RHO] = rho
    w[VX], w[VY], w[VZ] = v
    w[BX], w[BY], w[BZ] = b
    w[PR] = p
    return w


def _riemann_1d(x, split, left, right, b1):
    """Piecewise 1-D data from (rho, v1, v2, v3, B2, B3, p) tuples."""
    mask = x < split
    w = np.empty((8,) + np.shape(x))
    for row, (lv, rv) in zip(
        (RHO, VX, VY, VZ, BY, BZ, PR), zip(left, right)
    ):
        w[row] = np.where(mask, lv, rv)
    w[BX] = b1
    return w


def brio_wu_1d():
    b1 = 0.75

    def init(x):
        return _riemann_1d(
            x, 0.0,
            (1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0),
            (0.125, 0.0, 0.0, 0.0, -1.0, 0.0, 0.1),
            b1,
        )

    return ProblemSpec(
        name="brio-wu-1d", dim=1, xlim=(-1.0, 1.0), gamma=2.0, t_final=0.2,
        bc_x="outflow", init=init, b1_const=b1, default_nx=800,
    )


def dai_woodward_1d():
    b1 = 2.0 / SQRT4PI

    def init(x):
        return _riemann_1d(
            x, 0.5,
            (1.08, 1.2, 0.01, 0.5, 3.6 / SQRT4PI, 2.0 / SQRT4PI, 0.95),
            (1.0, 0.0, 0.0, 0.0, 4.0 / SQRT4PI, 2.0 / SQRT4PI, 1.0),
            b1,
        )

    return ProblemSpec(
        name="dai-woodward", dim=1, xlim=(0.0, 1.0), gamma=5.0 / 3.0,
        t_final=0.2, bc_x="outflow", init=init, b1_const=b1, default_nx=512,
    )


def ryu_jones_1d():
    b1 = 5.0 / SQRT4PI

    def init(x):
        return _riemann_1d(
            x, 0.5,
            (1.0, 10.0, 0.0, 0.0, 5.0 / SQRT4PI, 0.0, 20.0),
            (1.0, -10.0, 0.0, 0.0, 5.0 / SQRT4PI, 0.0, 1.0),
            b1,
        )

    return ProblemSpec(
        name="ryu-jones", dim=1, xlim=(0.0, 1.0), gamma=5.0 / 3.0,
        t_final=0.08, bc_x="outflow", init=init, b1_const=b1, default_nx=516,
    )


def balsara_vortex_2d():
    """Smooth magnetized vortex advected diagonally across the periodic box."""
    xi = 1.0 / (2.0 * np.pi)
    mu = 1.0 / (2.0 * np.pi)
    lo, hi = -5.0, 5.0
    length = hi - lo

    def init(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        r2 = x * x + y * y
        env = np.exp(0.5 * (1.0 - r2))
        dp = 0.5 * (mu * mu * (1.0 - r2) - xi * xi) * np.exp(1.0 - r2)
        return _prim_like(
            x,
            rho=np.ones_like(x),
            v=(1.0 - xi * env * y, 1.0 + xi * env * x, np.zeros_like(x)),
            b=(-mu * env * y, mu * env * x, np.zeros_like(x)),
            p=1.0 + dp,
        )

    def exact(x, y, t):
        xs = (np.asarray(x) - t - lo) % length + lo
        ys = (np.asarray(y) - t - lo) % length + lo
        return init(xs, ys)

    def init_faces(grid):
        # exact face averages of B = curl(A z): differences of the potential
        # A = mu*exp(0.5*(1 - r^2)) along face edges; exactly divergence-free
        xf, yf = np.meshgrid(grid.x_faces(), grid.y_faces(), indexing="ij")
        a = mu * np.exp(0.5 * (1.0 - xf * xf - yf * yf))
        b1 = (a[:, 1:] - a[:, :-1]) / grid.dy
        b2 = -(a[1:, :] - a[:-1, :]) / grid.dx
        return b1, b2

    return ProblemSpec(
        name="vortex", dim=2, xlim=(lo, hi), ylim=(lo, hi), gamma=5.0 / 3.0,
        t_final=10.0, bc_x="periodic", bc_y="periodic", init=init,
        exact=exact, init_faces=init_faces,
        default_limiter=Limiter("mc", 1.3), default_nx=200, default_ny=200,
    )


def smooth_sine_2d():
    """Density sine wave advected by a uniform diagonal flow; exact solution."""

    def exact(x, y, t):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        rho = 1.0 + 0.99 * np.sin(2.0 * np.pi * (x + y - 2.0 * t))
        return _prim_like(
            x,
            rho=rho,
            v=(np.ones_like(x), np.ones_like(x), np.zeros_like(x)),
            b=(0.1, 0.1, 0.0),
            p=np.ones_like(x),
        )

    return ProblemSpec(
        name="sine", dim=2, xlim=(0.0, 1.0), ylim=(0.0, 1.0), gamma=5.0 / 3.0,
        t_final=0.1, bc_x="periodic", bc_y="periodic",
        init=lambda x, y: exact(x, y, 0.0), exact=exact,
        default_nx=200, default_ny=200,
    )


def brio_wu_2d():
    b1 = 0.75

    def init(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return _riemann_1d(x, 0.0,
                           (1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0),
                           (0.125, 0.0, 0.0, 0.0, -1.0, 0.0, 0.1),
                           b1)

    return ProblemSpec(
        name="brio-wu-2d", dim=2, xlim=(-1.0, 1.0), ylim=(-1.0, 1.0),
        gamma=2.0, t_final=0.2, bc_x="outflow", bc_y="periodic", init=init,
        default_nx=200, default_ny=200,
    )


def orszag_tang_2d():
    gamma = 5.0 / 3.0

    def init(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return _prim_like(
            x,
            rho=np.full_like(x, gamma * gamma),
            v=(-np.sin(y), np.sin(x), np.zeros_like(x)),
            b=(-np.sin(y), np.sin(2.0 * x), np.zeros_like(x)),
            p=np.full_like(x, gamma),
        )

    return ProblemSpec(
        name="orszag-tang", dim=2, xlim=(0.0, 2.0 * np.pi),
        ylim=(0.0, 2.0 * np.pi), gamma=gamma, t_final=3.0,
        bc_x="periodic", bc_y="periodic", init=init,
        default_nx=200, default_ny=200,
    )


def rotor_2d():
    """Dense rapidly rotating disk in a light ambient fluid, taper ring."""
    r0, r1, v0 = 0.1, 0.115, 1.0
    b1 = 2.5 / SQRT4PI

    def init(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        dx_, dy_ = x - 0.5, y - 0.5
        r = np.sqrt(dx_ * dx_ + dy_ * dy_)
        taper = (r1 - r) / (r1 - r0)
        rho = np.where(r <= r0, 10.0, np.where(r < r1, 1.0 + 9.0 * taper, 1.0))
        swirl = np.where(r <= r0, v0 / r0, np.where(r < r1, taper * v0 / r0, 0.0))
        return _prim_like(
            x,
            rho=rho,
            v=(-swirl * dy_, swirl * dx_, np.zeros_like(x)),
            b=(b1, 0.0, 0.0),
            p=np.full_like(x, 0.5),
        )

    return ProblemSpec(
        name="rotor", dim=2, xlim=(0.0, 1.0), ylim=(0.0, 1.0), gamma=1.4,
        t_final=0.295, bc_x="outflow", bc_y="outflow", init=init,
        default_nx=200, default_ny=200,
    )


def blast_2d():
    def init(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        r = np.sqrt(x * x + y * y)
        return _prim_like(
            x,
            rho=np.ones_like(x),
            v=(np.zeros_like(x), np.zeros_like(x), np.zeros_like(x)),
            b=(1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0), 0.0),
            p=np.where(r < 0.1, 10.0, 0.1),
        )

    return ProblemSpec(
        name="blast", dim=2, xlim=(-0.5, 0.5), ylim=(-0.5, 0.5), gamma=1.4,
        t_final=0.2, bc_x="outflow", bc_y="outflow", init=init,
        default_nx=200, default_ny=200,
    )


def challenging_blast_2d():
    """Strong blast in a near-force-free field; pressure ratio 10^4."""
    b1 = 100.0 / SQRT4PI

    def init(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        r = np.sqrt(x * x + y * y)
        return _prim_like(
            x,
            rho=np.ones_like(x),
            v=(np.zeros_like(x), np.zeros_like(x), np.zeros_like(x)),
            b=(b1, 0.0, 0.0),
            p=np.where(r <= 0.1, 1000.0, 0.1),
        )

    return ProblemSpec(
        name="challenging-blast", dim=2, xlim=(-0.5, 0.5), ylim=(-0.5, 0.5),
        gamma=1.4, t_final=0.01, bc_x="periodic", bc_y="periodic", init=init,
        default_nx=200, default_ny=200,
    )


PROBLEMS = {
    factory().name: factory
    for factory in (
        brio_wu_1d,
        dai_woodward_1d,
        ryu_jones_1d,
        balsara_vortex_2d,
        smooth_sine_2d,
        brio_wu_2d,
        orszag_tang_2d,
        rotor_2d,
        blast_2d,
        challenging_blast_2d,
    )
}


def get_problem(name):
    try:
        return PROBLEMS[name]()
    except KeyError:
        raise KeyError(
            f"unknown problem {name!r}; choose from {', '.join(sorted(PROBLEMS))}"
        ) from None
