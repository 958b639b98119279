import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from trigal.curve import ZETA3
from trigal.periods import abel
from trigal.sigma import (
    quasi_factor,
    sigma,
    sigma_deriv,
    sigma_deriv_fd,
    taylor_coefficients,
    twisted_quasi_factor,
)
from trigal.theta import Characteristic, ThetaFunction
from trigal.verify import random_points

unit = st.floats(-0.5, 0.5, allow_nan=False)
cells = st.lists(unit, min_size=6, max_size=6)
lattice = st.lists(st.integers(-2, 2), min_size=6, max_size=6)

# relative identities are meaningless where sigma vanishes (u = 0 lies on the theta divisor)
OFF_DIVISOR = 1e-6


def test_sigma_vanishes_at_origin(real_curve):
    _, _, ctx = real_curve
    assert abs(sigma(ctx, np.zeros(3))) < 1e-13


def test_normalisation(real_curve):
    _, _, ctx = real_curve
    assert abs(sigma_deriv(ctx, np.zeros(3), (1,)) - 1) < 1e-12
    assert abs(sigma_deriv_fd(ctx, np.zeros(3, dtype=complex), (1,)) - 1) < 1e-8
    for eps in (1e-3, 1e-4):
        assert abs(sigma(ctx, np.array([eps, 0, 0])) / eps - 1) < 1e-5


@pytest.mark.parametrize("i", [0, 1, 2])
def test_leading_taylor_coefficients(corpus, i):
    _, _, ctx = corpus(i)
    c = taylor_coefficients(ctx, [0, 0, 1], 1.0)
    assert abs(c[5] - 0.05) < 1e-10
    assert np.max(np.abs(c[:5])) < 1e-10
    c = taylor_coefficients(ctx, [1, 0, 0], 1.0)
    assert abs(c[1] - 1) < 1e-10
    c = taylor_coefficients(ctx, [0, 1, 1], 1.0)
    assert abs(c[3] + 1) < 1e-10


@given(cells)
def test_zeta_equivariance(real_curve, n):
    _, pd, ctx = real_curve
    u = pd.from_coords(n)
    s = sigma(ctx, u)
    assume(abs(s) > OFF_DIVISOR)
    assert abs(sigma(ctx, pd.zeta(u)) - ZETA3 * s) < 1e-8 * abs(s)


@given(cells, lattice)
def test_quasi_periodicity(corpus, n, m):
    _, pd, ctx = corpus(1)
    u = pd.from_coords(n)
    ell = pd.from_coords(m)
    assume(abs(sigma(ctx, u)) > OFF_DIVISOR)
    want = sigma(ctx, u) * quasi_factor(ctx, ell, u)
    assert abs(sigma(ctx, u + ell) - want) < 1e-8 * abs(want)
    want = sigma(ctx, u) * twisted_quasi_factor(ctx, ell, u)
    assert abs(sigma(ctx, u + pd.zeta(ell)) - want) < 1e-8 * abs(want)


def test_chi_on_generators(real_curve):
    _, pd, ctx = real_curve
    G = pd.generators
    for k in range(6):
        assert ctx.chi(G[:, k]) ** 2 == pytest.approx(1)
    assert ctx.chi(np.zeros(3)) == pytest.approx(1)
    assert quasi_factor(ctx, np.zeros(3), np.array([0.1, 0.2, 0.3])) == pytest.approx(1)


def test_termwise_derivatives_against_differences(real_curve, rng):
    _, pd, ctx = real_curve
    u = pd.from_coords(rng.uniform(-0.3, 0.3, 6))
    for index in [(1,), (3,), (2, 3), (3, 3)]:
        exact = sigma_deriv(ctx, u, index)
        fd = sigma_deriv_fd(ctx, u, index)
        assert abs(exact - fd) < 1e-6 * max(1, abs(exact))


def test_characteristic_scan_has_one_survivor(real_curve, rng):
    curve, pd, ctx = real_curve
    tau = 0.5 * (pd.tau + pd.tau.T)
    z_w2 = np.array([ctx.A @ abel(pd, random_points(curve, rng, 2)) for _ in range(6)])
    z_ref = np.array([ctx.A @ abel(pd, random_points(curve, rng, 3)) for _ in range(6)])
    survivors = []
    for ch in Characteristic.all_half(3):
        th = ThetaFunction(tau, ch)
        if np.max(np.abs(th(z_w2))) < 1e-8 * np.median(np.abs(th(z_ref))):
            survivors.append(ch)
    assert len(survivors) == 1
    assert survivors[0] == ctx.char
    assert ctx.char.parity == 1
    assert ctx.char != Characteristic((0.0,) * 3, (0.0,) * 3)
