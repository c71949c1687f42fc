import numpy as np
import pytest

from mhdcu import boundary, core, ldcu1d
from mhdcu.core import MX, RHO
from mhdcu.grids import Grid1D
from mhdcu.problems import get_problem
from mhdcu.reconstruct import Limiter
from mhdcu.timestepper import Simulation1D

from conftest import random_primitive

GAMMA = 5.0 / 3.0
MINMOD = Limiter("minmod")


def smooth_periodic_state(grid, amp=0.3):
    """Smooth periodic primitive data for conservation/consistency checks."""
    x = grid.x_centers(with_ghosts=True)
    L = grid.x1 - grid.x0
    s = np.sin(2.0 * np.pi * (x - grid.x0) / L)
    w = np.empty((8, x.size))
    w[core.RHO] = 1.0 + amp * s
    w[core.VX] = 0.4 + 0.1 * s
    w[core.VY] = 0.2 * s
    w[core.VZ] = -0.1 * s
    w[core.BX] = 0.75
    w[core.BY] = 1.0 + 0.2 * s
    w[core.BZ] = 0.3
    w[core.PR] = 1.0 + 0.5 * amp * s
    return ldcu1d.drop_b1(core.prim_to_cons(w, GAMMA))


class TestSemiDiscreteFlux:
    def test_consistency_random_states(self, rng):
        b1 = 0.6
        w = random_primitive(rng, 1000)
        w[core.BX] = b1
        q8 = core.prim_to_cons(w, GAMMA)
        q7 = ldcu1d.drop_b1(q8)
        f_exact = ldcu1d.drop_b1(core.physical_flux(q8, w, 0))
        s = core._speeds_from_prim(w, w, GAMMA, 0, core.SPEED_FLOOR)
        flux = ldcu1d.semi_discrete_flux_1d(q7, q7, s, GAMMA, b1)
        scale = np.maximum(np.abs(f_exact).max(axis=0),
                           np.abs(q7).max(axis=0) * np.abs(s[1]))
        assert np.max(np.abs(flux - f_exact) / scale) < 1e-13

    def test_local_lax_friedrichs_specialization(self, rng):
        w_l = random_primitive(rng, 40)
        w_r = random_primitive(rng, 40)
        b1 = 0.5
        w_l[core.BX] = w_r[core.BX] = b1
        ql = ldcu1d.drop_b1(core.prim_to_cons(w_l, GAMMA))
        qr = ldcu1d.drop_b1(core.prim_to_cons(w_r, GAMMA))
        a = np.full(40, 2.7)
        flux = ldcu1d.semi_discrete_flux_1d(ql, qr, (-a, a), GAMMA, b1,
                                            use_correction=False)
        fl, _ = ldcu1d._flux7(ql, b1, GAMMA)
        fr, _ = ldcu1d._flux7(qr, b1, GAMMA)
        llf = 0.5 * (fl + fr) - 0.5 * a * (qr - ql)
        np.testing.assert_allclose(flux, llf, rtol=1e-13, atol=1e-13)

    def test_correction_changes_only_hydro_rows(self):
        gamma = 2.0
        spec = get_problem("brio-wu-1d")
        wl = spec.init(np.array([-0.5]))
        wr = spec.init(np.array([0.5]))
        ql = ldcu1d.drop_b1(core.prim_to_cons(wl, gamma))
        qr = ldcu1d.drop_b1(core.prim_to_cons(wr, gamma))
        s = ldcu1d._face_speeds(ql, qr, spec.b1_const, gamma, 0.0)
        on = ldcu1d.semi_discrete_flux_1d(ql, qr, s, gamma, spec.b1_const,
                                          use_correction=True)
        off = ldcu1d.semi_discrete_flux_1d(ql, qr, s, gamma, spec.b1_const,
                                           use_correction=False)
        diff = on - off
        assert np.array_equal(diff[4], [0.0])  # B2 row
        assert np.array_equal(diff[5], [0.0])  # B3 row
        # no transverse momentum at this interface, so v2*/v3* rows vanish
        assert np.abs(diff[[0, 1, 6]]).min() > 0.0
        # the two paths share all code except the correction vector itself
        q8l = ldcu1d.expand_b1(ql, spec.b1_const)
        q8r = ldcu1d.expand_b1(qr, spec.b1_const)
        k = core.correction_k_star(q8l, q8r, s, gamma, "x")
        np.testing.assert_allclose(diff, ldcu1d.drop_b1(k.vector),
                                   rtol=1e-13, atol=1e-15)


class TestRhs1D:
    def test_uniform_state(self):
        grid = Grid1D(32, 0.0, 1.0)
        w = core.prim_state(1.3, (0.4, -0.2, 0.1), (0.6, 0.2, -0.4), 2.0)
        q = np.tile(ldcu1d.drop_b1(core.prim_to_cons(w, GAMMA))[:, None],
                    (1, grid.ncells))
        rhs = ldcu1d.rhs_1d(q, grid, GAMMA, 0.6, MINMOD)
        assert np.abs(rhs).max() <= 1e-13

    def test_periodic_telescoping(self):
        grid = Grid1D(64, -1.0, 3.0)
        q = smooth_periodic_state(grid)
        boundary.fill_cells_1d(q, grid, "periodic")
        rhs = ldcu1d.rhs_1d(q, grid, GAMMA, 0.75, MINMOD)
        total = rhs[:, grid.interior].sum(axis=1)
        scale = np.abs(rhs[:, grid.interior]).sum(axis=1) + 1e-30
        assert np.all(np.abs(total) <= 1e-13 * np.maximum(scale, 1.0))

    def test_second_order_on_smooth_advection(self):
        # rho = 1 + 0.5 sin(2 pi x), uniform v, B, p: the flux divergence is
        # analytic and the unlimited reconstruction must converge at order 2
        v = np.array([0.7, 0.3, 0.2])
        b = np.array([0.5, 0.4, -0.3])
        p = 2.0
        b1 = b[0]

        def exact_dfdx(x):
            rho_x = 0.5 * 2.0 * np.pi * np.cos(2.0 * np.pi * x)
            out = np.zeros((7, x.size))
            out[0] = rho_x * v[0]
            out[1] = rho_x * v[0] ** 2
            out[2] = rho_x * v[0] * v[1]
            out[3] = rho_x * v[0] * v[2]
            out[6] = 0.5 * rho_x * float(v @ v) * v[0]
            return out

        errs = []
        for n in (64, 128, 256):
            grid = Grid1D(n, 0.0, 1.0)
            x = grid.x_centers(with_ghosts=True)
            w = np.empty((8, x.size))
            w[core.RHO] = 1.0 + 0.5 * np.sin(2.0 * np.pi * x)
            w[core.VX:core.VZ + 1] = v[:, None]
            w[core.BX:core.BZ + 1] = b[:, None]
            w[core.PR] = p
            q = ldcu1d.drop_b1(core.prim_to_cons(w, GAMMA))
            boundary.fill_cells_1d(q, grid, "periodic")
            rhs = ldcu1d.rhs_1d(q, grid, GAMMA, b1, Limiter("none"))
            err = np.abs(rhs[:, grid.interior]
                         + exact_dfdx(grid.x_centers()))
            errs.append(err.max())
        ratios = np.array(errs[:-1]) / np.array(errs[1:])
        assert np.all(ratios > 3.4)


class TestFullyDiscrete:
    def test_uniform_fixed_point(self):
        grid = Grid1D(32, 0.0, 1.0)
        w = core.prim_state(1.3, (0.4, -0.2, 0.1), (0.6, 0.2, -0.4), 2.0)
        q = np.tile(ldcu1d.drop_b1(core.prim_to_cons(w, GAMMA))[:, None],
                    (1, grid.ncells))
        out = ldcu1d.fully_discrete_step_1d(q, grid, GAMMA, 0.6, MINMOD,
                                            dt=1.0e-3)
        np.testing.assert_allclose(out[:, grid.interior],
                                   q[:, grid.interior], rtol=1e-13,
                                   atol=1e-13)

    @pytest.mark.parametrize("use_correction", [True, False])
    def test_periodic_conservation(self, use_correction):
        grid = Grid1D(48, 0.0, 2.0)
        q = smooth_periodic_state(grid)
        boundary.fill_cells_1d(q, grid, "periodic")
        total0 = q[:, grid.interior].sum(axis=1) * grid.dx
        for _ in range(50):
            boundary.fill_cells_1d(q, grid, "periodic")
            q = ldcu1d.fully_discrete_step_1d(q, grid, GAMMA, 0.75, MINMOD,
                                              dt=2.0e-3,
                                              use_correction=use_correction)
        total = q[:, grid.interior].sum(axis=1) * grid.dx
        np.testing.assert_allclose(total, total0, rtol=1e-13, atol=1e-13)

    def test_semi_discrete_limit(self):
        # (Q^{n+1} - Q^n)/dt approaches the semi-discrete rhs at first order
        spec = get_problem("brio-wu-1d")
        sim = Simulation1D(spec, 200)
        q, _ = sim.run_to_time(sim.initial_state(), 0.05)
        grid = sim.grid
        boundary.fill_cells_1d(q, grid, spec.bc_x)
        rhs = ldcu1d.rhs_1d(q, grid, sim.gamma, sim.b1, sim.limiter)
        errs = []
        for dt in (8.0e-4, 4.0e-4, 2.0e-4, 1.0e-4):
            qn = ldcu1d.fully_discrete_step_1d(q, grid, sim.gamma, sim.b1,
                                               sim.limiter, dt)
            errs.append(np.abs((qn - q) / dt - rhs)[:, grid.interior].max())
        errs = np.array(errs)
        assert np.all(errs[:-1] > errs[1:])
        assert errs[0] / errs[-1] > 4.0  # first order over three halvings

    def test_projection_split_conservation_identity(self, rng):
        n = 300
        q_int = ldcu1d.drop_b1(core.prim_to_cons(random_primitive(rng, n),
                                                 GAMMA))
        rho_l = q_int[RHO] * rng.uniform(0.5, 1.5, n)
        rho_r = q_int[RHO] * rng.uniform(0.5, 1.5, n)
        am = -rng.uniform(0.1, 3.0, n)
        ap = rng.uniform(0.1, 3.0, n)
        # keep the contact inside the fan
        vmax = np.minimum(-am, ap) * 0.9
        q_int[MX] = q_int[RHO] * rng.uniform(-1.0, 1.0, n) * vmax
        q_l, q_r, v = ldcu1d._fan_split(q_int, rho_l, rho_r, am, ap, True)
        lhs = (v - am) * q_l + (ap - v) * q_r
        rhs = (ap - am) * q_int
        np.testing.assert_allclose(lhs, rhs, rtol=1e-13, atol=1e-13)
        # the split may not create densities outside the edge hull
        top = np.maximum(np.maximum(rho_l, rho_r), q_int[RHO])
        bot = np.minimum(np.minimum(rho_l, rho_r), q_int[RHO])
        assert np.all(q_l[RHO] <= top + 1e-12) and np.all(q_l[RHO] >= bot - 1e-12)
        assert np.all(q_r[RHO] <= top + 1e-12) and np.all(q_r[RHO] >= bot - 1e-12)

    def test_energy_row_follows_density_shift(self, rng):
        q_int = ldcu1d.drop_b1(core.prim_to_cons(random_primitive(rng, 50),
                                                 GAMMA))
        rho_l = q_int[RHO] * 1.2
        rho_r = q_int[RHO] * 0.8
        am = np.full(50, -2.0)
        ap = np.full(50, 2.0)
        q_l, q_r, _ = ldcu1d._fan_split(q_int, rho_l, rho_r, am, ap, True)
        vsq = ((q_int[1] ** 2 + q_int[2] ** 2 + q_int[3] ** 2)
               / q_int[RHO] ** 2)
        np.testing.assert_allclose(
            q_l[ldcu1d.EN7] - q_int[ldcu1d.EN7],
            0.5 * (q_l[RHO] - q_int[RHO]) * vsq, rtol=1e-12, atol=1e-14)


class TestTimeStep:
    def test_rest_gas_value(self):
        grid = Grid1D(100, 0.0, 1.0)
        w = core.prim_state(1.0, (0, 0, 0), (0, 0, 0), 0.5)
        q = np.tile(ldcu1d.drop_b1(core.prim_to_cons(w, 2.0))[:, None],
                    (1, grid.ncells))
        dt = ldcu1d.dt_1d(q, grid, 2.0, 0.0, 0.4, MINMOD)
        assert dt == pytest.approx(0.4 * 0.01 / 1.0, rel=1e-13)

    def test_halving_dx_halves_dt(self):
        w = core.prim_state(1.0, (0.3, 0, 0), (0.2, 0.5, 0), 1.0)
        dts = []
        for n in (50, 100):
            grid = Grid1D(n, 0.0, 1.0)
            q = np.tile(ldcu1d.drop_b1(core.prim_to_cons(w, GAMMA))[:, None],
                        (1, grid.ncells))
            dts.append(ldcu1d.dt_1d(q, grid, GAMMA, 0.2, 0.4, MINMOD))
        assert dts[0] == pytest.approx(2.0 * dts[1], rel=1e-13)

    def test_brio_wu_initial_dt(self):
        spec = get_problem("brio-wu-1d")
        sim = Simulation1D(spec, 800)
        q = sim.initial_state()
        dt = ldcu1d.dt_1d(q, sim.grid, sim.gamma, sim.b1, 0.4, sim.limiter)
        # piecewise-constant data: slopes vanish, so interface speeds come
        # from the raw left/right states; the max sits at the initial jump
        wl = spec.init(np.array([-0.5]))
        wr = spec.init(np.array([0.5]))
        ql = core.prim_to_cons(wl, sim.gamma)
        qr = core.prim_to_cons(wr, sim.gamma)
        am, ap = core.interface_speeds(ql, qr, sim.gamma, "x", "1d")
        smax = max(float(ap[0]), float(-am[0]))
        assert dt == pytest.approx(0.4 * sim.grid.dx / smax, rel=1e-13)
