"""Three-stage SSP Runge-Kutta integration and the benchmark run loops.

The RK3 stages

    Q1     = Qn + dt C[Qn]
    Q2     = Q1 + dt/4 (-3 C[Qn] + C[Q1])
    Q(n+1) = Q2 + dt/12 (-C[Qn] - C[Q1] + 8 C[Q2])

apply the identical combination to the cell-centered array and both face
arrays, so any affine invariant of the face tendencies (in particular the
discrete divergence) survives a full step. Ghost filling and face-to-center
synchronization run before every right-hand-side evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import boundary, core, ctransport, ldcu1d, ldcu2d
from .core import SPEED_FLOOR
from .grids import Grid1D, Grid2D
from .reconstruct import Limiter
from .problems import ProblemSpec

# fraction of t_final below which a residual step is not worth taking
_TIME_EPS = 1.0e-12


class SolverError(RuntimeError):
    """Non-finite state or other unrecoverable failure during a run."""


@dataclass
class SimState:
    """Cell-centered conserved field plus the staggered face field."""

    u: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    t: float = 0.0
    step_count: int = 0

    def copy(self):
        return SimState(self.u.copy(), self.b1.copy(), self.b2.copy(),
                        self.t, self.step_count)


@dataclass
class RhsResult:
    du: np.ndarray
    db1: np.ndarray
    db2: np.ndarray
    ndeg: int = 0
    nfloor: int = 0
    max_sx: float = 0.0
    max_sy: float = 0.0


@dataclass
class DiagRow:
    step: int
    t: float
    dt: float
    totals: np.ndarray
    max_rel_div: float
    field_rel_div: float = 0.0
    ndeg: int = 0
    nfloor: int = 0


def rk3_step(state, dt, rhs_fn, prepare=None, c0=None):
    """Advance one RK3 step; returns (new_state, (ndeg, nfloor) totals).

    ``rhs_fn(state) -> RhsResult``; ``prepare(state)`` refreshes ghosts and
    center sync in place before each evaluation. ``c0`` may carry a
    precomputed stage-0 result (the driver reuses it for the dt estimate), in
    which case exactly two more evaluations run here.
    """

    def _prep(s):
        if prepare is not None:
            prepare(s)

    if c0 is None:
        _prep(state)
        c0 = rhs_fn(state)

    s1 = SimState(
        state.u + dt * c0.du,
        state.b1 + dt * c0.db1,
        state.b2 + dt * c0.db2,
        state.t,
        state.step_count,
    )
    _prep(s1)
    c1 = rhs_fn(s1)

    s2 = SimState(
        s1.u + (dt / 4.0) * (-3.0 * c0.du + c1.du),
        s1.b1 + (dt / 4.0) * (-3.0 * c0.db1 + c1.db1),
        s1.b2 + (dt / 4.0) * (-3.0 * c0.db2 + c1.db2),
        state.t,
        state.step_count,
    )
    _prep(s2)
    c2 = rhs_fn(s2)

    out = SimState(
        s2.u + (dt / 12.0) * (-c0.du - c1.du + 8.0 * c2.du),
        s2.b1 + (dt / 12.0) * (-c0.db1 - c1.db1 + 8.0 * c2.db1),
        s2.b2 + (dt / 12.0) * (-c0.db2 - c1.db2 + 8.0 * c2.db2),
        state.t + dt,
        state.step_count + 1,
    )
    return out, (c0.ndeg + c1.ndeg + c2.ndeg,
                 c0.nfloor + c1.nfloor + c2.nfloor)


def _check_finite(arr, step, label):
    bad = core._first_bad(~np.isfinite(arr))
    if bad is not None:
        raise SolverError(f"non-finite {label} after step {step} at index {bad}")


class Simulation2D:
    """2-D benchmark driver: setup, RK3 loop, and diagnostics."""

    def __init__(self, problem: ProblemSpec, nx, ny, limiter=None, cfl=0.45,
                 use_correction=True, corner_limiter=None, fast=None,
                 recovery_floor=core.RECOVERY_FLOOR):
        if problem.dim != 2:
            raise ValueError(f"problem {problem.name} is not two-dimensional")
        self.problem = problem
        self.grid = Grid2D(nx, ny, *problem.xlim, *problem.ylim)
        self.gamma = problem.gamma
        self.limiter = limiter if limiter is not None else problem.default_limiter
        self.cfl = cfl
        self.use_correction = use_correction
        self.fast = fast
        self.recovery_floor = recovery_floor
        # face-to-corner reconstruction: MC-theta with the run's theta, or
        # plain central differences when the whole run is unlimited
        if corner_limiter is not None:
            self.corner_limiter = corner_limiter
        elif self.limiter.kind == "none":
            self.corner_limiter = self.limiter
        else:
            self.corner_limiter = Limiter("mc", self.limiter.theta)

    # -- setup ---------------------------------------------------------

    def initial_state(self):
        g = self.grid
        ng, nx, ny = g.ng, g.nx, g.ny
        u = np.zeros((core.NCOMP,) + g.shape)
        xc, yc = g.interior_meshgrid()
        w = self.problem.init(xc, yc)
        u[(slice(None),) + g.interior] = core.prim_to_cons(w, self.gamma)

        b1 = np.zeros((nx + 2 * ng + 1, ny + 2 * ng))
        b2 = np.zeros((nx + 2 * ng, ny + 2 * ng + 1))
        if self.problem.init_faces is not None:
            b1i, b2i = self.problem.init_faces(g)
        else:
            xf, yc1 = np.meshgrid(g.x_faces(), g.y_centers(), indexing="ij")
            b1i = self.problem.init(xf, yc1)[core.BX]
            xc1, yf = np.meshgrid(g.x_centers(), g.y_faces(), indexing="ij")
            b2i = self.problem.init(xc1, yf)[core.BY]
        b1[ng:ng + nx + 1, ng:ng + ny] = b1i
        b2[ng:ng + nx, ng:ng + ny + 1] = b2i
        if self.problem.bc_x == "periodic":
            b1[ng + nx, :] = b1[ng, :]
        if self.problem.bc_y == "periodic":
            b2[:, ng + ny] = b2[:, ng]

        state = SimState(u, b1, b2)
        self.prepare(state)
        div = np.abs(ctransport.divergence_b(b1, b2, g)).max()
        scale = max(1.0, float(np.abs(u[core.BX:core.BZ + 1]).max()))
        if div > 1.0e-12 * scale / min(g.dx, g.dy):
            raise ValueError(
                f"initial face field of {self.problem.name} is not "
                f"divergence-free (max |div B| = {div:.3e})"
            )
        return state

    # -- stage plumbing --------------------------------------------------

    def prepare(self, state):
        boundary.fill_faces_2d(state.b1, state.b2, self.grid,
                               self.problem.bc_x, self.problem.bc_y)
        boundary.fill_cells_2d(state.u, self.grid,
                               self.problem.bc_x, self.problem.bc_y)
        ctransport.sync_centers(state.u, state.b1, state.b2)

    def rhs(self, state):
        sweep = ldcu2d.face_sweep(state.u, self.grid, self.gamma,
                                  self.limiter, self.use_correction,
                                  fast=self.fast,
                                  recovery=self.recovery_floor)
        du = ldcu2d.hydro_rhs(sweep, self.grid)
        omega = ctransport.corner_emf(sweep, state.b1, state.b2, self.grid,
                                      self.corner_limiter)
        db1, db2 = ctransport.rhs_faces(omega, self.grid)
        sx, sy = ldcu2d.max_face_speeds(sweep, self.grid)
        return RhsResult(du, db1, db2, sweep.ndeg, sweep.nfloor, sx, sy)

    def compute_dt(self, state):
        self.prepare(state)
        return ldcu2d.dt_2d(state.u, state.b1, state.b2, self.grid,
                            self.gamma, self.limiter, self.cfl)

    def _dt_from(self, res):
        g = self.grid
        return self.cfl * min(g.dx / max(res.max_sx, SPEED_FLOOR),
                              g.dy / max(res.max_sy, SPEED_FLOOR))

    # -- diagnostics ------------------------------------------------------

    def totals(self, state):
        ii = (slice(None),) + self.grid.interior
        return state.u[ii].sum(axis=(1, 2)) * self.grid.cell_volume

    def diag_row(self, state, dt):
        return DiagRow(
            step=state.step_count,
            t=state.t,
            dt=dt,
            totals=self.totals(state),
            max_rel_div=ctransport.max_relative_divergence(
                state.b1, state.b2, state.u, self.grid),
            field_rel_div=ctransport.field_relative_divergence(
                state.b1, state.b2, state.u, self.grid),
        )

    # -- main loop --------------------------------------------------------

    def run_to_time(self, state, t_final, on_step=None):
        """Advance to t_final; returns (state, diagnostics rows)."""
        if t_final < state.t:
            raise ValueError("t_final lies before the current time")
        self.prepare(state)
        diag = [self.diag_row(state, 0.0)]
        scale = max(abs(t_final), 1.0)
        while t_final - state.t > _TIME_EPS * scale:
            c0 = self.rhs(state)
            dt = self._dt_from(c0)
            last = dt >= t_final - state.t
            if last:
                dt = t_final - state.t
            state, (ndeg, nfloor) = rk3_step(state, dt, self.rhs,
                                             self.prepare, c0=c0)
            if last:
                state.t = t_final
            _check_finite(state.u[(slice(None),) + self.grid.interior],
                          state.step_count, "cell state")
            self.prepare(state)
            row = self.diag_row(state, dt)
            row.ndeg = ndeg
            row.nfloor = nfloor
            diag.append(row)
            if on_step is not None:
                on_step(state, row)
        return state, diag


class Simulation1D:
    """1-D benchmark driver for the fully-discrete scheme."""

    def __init__(self, problem: ProblemSpec, n, limiter=None, cfl=0.4,
                 use_correction=True):
        if problem.dim != 1:
            raise ValueError(f"problem {problem.name} is not one-dimensional")
        self.problem = problem
        self.grid = Grid1D(n, *problem.xlim)
        self.gamma = problem.gamma
        self.b1 = problem.b1_const
        self.limiter = limiter if limiter is not None else problem.default_limiter
        self.cfl = cfl
        self.use_correction = use_correction

    def initial_state(self):
        g = self.grid
        q = np.zeros((ldcu1d.N1D, g.ncells))
        w = self.problem.init(g.x_centers())
        q[:, g.interior] = ldcu1d.drop_b1(core.prim_to_cons(w, self.gamma))
        boundary.fill_cells_1d(q, g, self.problem.bc_x)
        return q

    def totals(self, q):
        return q[:, self.grid.interior].sum(axis=1) * self.grid.dx

    def run_to_time(self, q, t_final, t0=0.0):
        """Advance the fully-discrete scheme to t_final.

        Returns (q, diagnostics rows); diagnostics reuse DiagRow with a zero
        divergence column.
        """
        g = self.grid
        t = t0
        step = 0
        diag = [DiagRow(0, t, 0.0, self.totals(q), 0.0)]
        scale = max(abs(t_final), 1.0)
        while t_final - t > _TIME_EPS * scale:
            boundary.fill_cells_1d(q, g, self.problem.bc_x)
            precomp = ldcu1d._recon_and_speeds(q, g, self.gamma, self.b1,
                                               self.limiter)
            dt = ldcu1d.dt_from_speeds(precomp[3], precomp[4], g.dx, self.cfl)
            last = dt >= t_final - t
            if last:
                dt = t_final - t
            q = ldcu1d.fully_discrete_step_1d(
                q, g, self.gamma, self.b1, self.limiter, dt,
                self.use_correction, precomp=precomp)
            t = t_final if last else t + dt
            step += 1
            _check_finite(q[:, g.interior], step, "cell state")
            diag.append(DiagRow(step, t, dt, self.totals(q), 0.0))
        boundary.fill_cells_1d(q, g, self.problem.bc_x)
        return q, diag


def primitive_interior_1d(sim, q):
    """Primitive interior field (8, n) of a 1-D run, B1 row included.

    Output plumbing: values are reported raw, without admissibility checks.
    """
    q8 = ldcu1d.expand_b1(q[:, sim.grid.interior], sim.b1)
    return core.recover_primitive(q8, sim.gamma)


def primitive_interior_2d(sim, state):
    """Primitive interior field (8, nx, ny) of a 2-D run, reported raw."""
    ii = (slice(None),) + sim.grid.interior
    return core.recover_primitive(state.u[ii], sim.gamma)
