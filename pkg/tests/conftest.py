"""Shared fixtures and oracles for the test suite."""

import numpy as np
import pytest

from mhdcu import core


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_primitive(rng, n):
    """Random admissible primitive states (8, n), comfortably off the floor."""
    w = np.empty((8, n))
    w[core.RHO] = rng.uniform(0.1, 5.0, n)
    w[core.VX:core.VZ + 1] = rng.uniform(-3.0, 3.0, (3, n))
    w[core.BX:core.BZ + 1] = rng.uniform(-3.0, 3.0, (3, n))
    w[core.PR] = rng.uniform(0.1, 10.0, n)
    return w


def random_conserved(rng, n):
    return core.prim_to_cons(random_primitive(rng, n), gamma=5.0 / 3.0)


def flux_jacobian_1d(q7, b1, gamma, eps=1.0e-6):
    """Finite-difference Jacobian of the 7-component flux at fixed B1."""
    from mhdcu import ldcu1d

    def f(q):
        q8 = ldcu1d.expand_b1(q.reshape(7, 1), b1)
        w8 = core.cons_to_prim(q8, gamma)
        return ldcu1d.drop_b1(core.physical_flux(q8, w8, 0))[:, 0]

    jac = np.empty((7, 7))
    for j in range(7):
        h = eps * max(abs(q7[j]), 1.0)
        qp = q7.copy()
        qm = q7.copy()
        qp[j] += h
        qm[j] -= h
        jac[:, j] = (f(qp) - f(qm)) / (2.0 * h)
    return jac
