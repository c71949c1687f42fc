import numpy as np
import pytest

from mhdcu.reconstruct import (Limiter, interface_states, limited_slope,
                               minmod, minmod3, slopes)


class TestMinmod:
    @pytest.mark.parametrize("a,b,expected", [
        (1.0, 2.0, 1.0),
        (-1.0, 2.0, 0.0),
        (-3.0, -2.0, -2.0),
        (0.0, 5.0, 0.0),
    ])
    def test_pairs(self, a, b, expected):
        assert minmod(a, b) == expected

    @pytest.mark.parametrize("args,expected", [
        ((1.0, 2.0, 3.0), 1.0),
        ((-1.0, -2.0, -0.5), -0.5),
        ((1.0, -2.0, 3.0), 0.0),
        ((0.0, 1.0, 2.0), 0.0),
    ])
    def test_triples(self, args, expected):
        assert minmod3(*args) == expected

    def test_vectorized_matches_scalar(self, rng):
        a, b, c = rng.normal(size=(3, 200))
        out = minmod3(a, b, c)
        for k in range(200):
            assert out[k] == minmod3(a[k], b[k], c[k])


class TestLimitedSlope:
    def test_monotone_data(self):
        assert limited_slope(0.0, 1.0, 2.0, 1.0, Limiter("minmod")) == 1.0

    @pytest.mark.parametrize("lim", [Limiter("minmod"), Limiter("mc", 1.3),
                                     Limiter("mc", 2.0)])
    def test_local_extremum_clipped(self, lim):
        assert limited_slope(0.0, 1.0, 0.0, 1.0, lim) == 0.0
        assert limited_slope(1.0, 0.0, 1.0, 0.5, lim) == 0.0

    def test_mc_theta_example(self):
        out = limited_slope(0.0, 1.0, 3.0, 1.0, Limiter("mc", 1.5))
        assert out == pytest.approx(1.5, rel=1e-15)

    def test_central_difference(self):
        assert limited_slope(0.0, 10.0, 4.0, 2.0, Limiter("none")) == 1.0

    def test_theta_validation(self):
        with pytest.raises(ValueError):
            Limiter("mc", 2.5)
        with pytest.raises(ValueError):
            Limiter("superbee")

    def test_slope_sign_property(self, rng):
        q = rng.normal(size=(4, 100))
        s = slopes(q, 0.1, -1, Limiter("minmod"))
        d_lo = (q[:, 1:-1] - q[:, :-2]) / 0.1
        d_hi = (q[:, 2:] - q[:, 1:-1]) / 0.1
        inner = s[:, 1:-1]
        ok = (inner == 0.0) | ((np.sign(inner) == np.sign(d_lo))
                               & (np.sign(inner) == np.sign(d_hi)))
        assert np.all(ok)


class TestInterfaceStates:
    def test_uniform_field(self):
        q = np.full((3, 12), 7.5)
        qm, qp = interface_states(q, 0.3, -1, Limiter("minmod"))
        assert np.all(qm == 7.5)
        assert np.all(qp == 7.5)

    @pytest.mark.parametrize("lim", [Limiter("none"), Limiter("minmod"),
                                     Limiter("mc", 1.3)])
    def test_linear_exactness(self, lim):
        h = 0.25
        x = (np.arange(20) + 0.5) * h
        q = (2.0 * x - 1.0)[None, :]
        qm, qp = interface_states(q, h, -1, lim)
        faces = (np.arange(1, 18) + 1.0) * h
        np.testing.assert_allclose(qm[0], 2.0 * faces - 1.0, rtol=1e-14)
        np.testing.assert_allclose(qp[0], 2.0 * faces - 1.0, rtol=1e-14)

    def test_step_no_overshoot(self, rng):
        for _ in range(100):
            n = 16
            q = np.where(np.arange(n) < rng.integers(4, 12),
                         rng.uniform(-5, 5), rng.uniform(-5, 5))[None, :]
            q = q + rng.normal(scale=0.01, size=(1, n))
            qm, qp = interface_states(q, 1.0, -1, Limiter("minmod"))
            lo = np.minimum(q[0, 1:-2], q[0, 2:-1])
            hi = np.maximum(q[0, 1:-2], q[0, 2:-1])
            assert np.all(qm[0] >= lo - 1e-12) and np.all(qm[0] <= hi + 1e-12)
            assert np.all(qp[0] >= lo - 1e-12) and np.all(qp[0] <= hi + 1e-12)

    def test_transpose_symmetry(self, rng):
        q = rng.normal(size=(8, 14, 11))
        qm_x, qp_x = interface_states(q, 0.5, 1, Limiter("mc", 1.3))
        qt = np.ascontiguousarray(q.transpose(0, 2, 1))
        qm_t, qp_t = interface_states(qt, 0.5, 2, Limiter("mc", 1.3))
        assert np.array_equal(qm_x, qm_t.transpose(0, 2, 1))
        assert np.array_equal(qp_x, qp_t.transpose(0, 2, 1))

    def test_y_axis_constant_in_y(self, rng):
        q = np.repeat(rng.normal(size=(2, 9, 1)), 7, axis=2)
        qm, qp = interface_states(q, 0.2, 2, Limiter("minmod"))
        np.testing.assert_array_equal(qm, q[:, :, :4])
        np.testing.assert_array_equal(qp, q[:, :, :4])
