import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trigal import _theta_py
from trigal.theta import BACKEND, Characteristic, ThetaFunction

TAU = np.array([[1.1j + 0.2, 0.3 + 0.1j, -0.1],
                [0.3 + 0.1j, 0.9j - 0.4, 0.2j],
                [-0.1, 0.2j, 1.4j + 0.1]])
ODD = Characteristic((0.5, 0.0, 0.0), (0.5, 0.5, 0.5))
ZERO = Characteristic((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))

coord = st.floats(-1, 1, allow_nan=False)
zs = st.tuples(coord, coord, coord, coord, coord, coord).map(
    lambda v: np.array(v[:3]) + 1j * np.array(v[3:]))
ints = st.lists(st.integers(-2, 2), min_size=3, max_size=3).map(np.array)


def test_odd_characteristic_vanishes_at_origin():
    assert ODD.parity == 1
    th = ThetaFunction(TAU, ODD)
    assert abs(th(np.zeros(3))) < 1e-14


def test_even_theta_is_even():
    th = ThetaFunction(TAU, ZERO)
    z = np.array([0.3 - 0.2j, -0.1 + 0.4j, 0.25])
    assert th(-z) == pytest.approx(th(z), rel=1e-13)


def test_diagonal_tau_against_scalar_series():
    th = ThetaFunction(1j * np.eye(3), ZERO)

    def theta1(z):
        s = 0j
        for n in range(-30, 31):
            s += np.exp(-np.pi * n * n + 2j * np.pi * n * z)
        return s

    for z in (0.3 + 0.1j, -0.45 + 0.6j, 0.1 - 1.2j):
        got = th(np.array([z, 0, 0]))
        want = theta1(z) * theta1(0) ** 2
        assert abs(got - want) < 1e-12 * abs(want)


@given(zs, ints)
def test_integer_shift(z, m):
    th = ThetaFunction(TAU, ODD)
    a = np.array(ODD.a)
    assert th(z + m) == pytest.approx(np.exp(2j * np.pi * a @ m) * th(z), rel=1e-10, abs=1e-12)


@given(zs, ints)
def test_tau_shift(z, m):
    th = ThetaFunction(TAU, ODD)
    b = np.array(ODD.b)
    factor = np.exp(-1j * np.pi * m @ TAU @ m - 2j * np.pi * m @ (z + b))
    want = factor * th(z)
    assert abs(th(z + TAU @ m) - want) <= 1e-10 * max(abs(want), 1e-12 * abs(factor))


def test_gradient_against_differences():
    th = ThetaFunction(TAU, ODD)
    z = np.array([0.2 + 0.1j, -0.3, 0.05j])
    g = th.gradient(z)
    h = 1e-5
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        fd = (th(z + e) - th(z - e)) / (2 * h)
        assert abs(fd - g[k]) < 1e-7 * max(1, abs(g[k]))


def test_large_imaginary_argument_stays_finite():
    th = ThetaFunction(TAU, ODD)
    val, _, _, ls = th.sums(np.array([[0.1, 0.2, 40j]]), 0)
    assert np.isfinite(val[0]) and np.isfinite(ls[0])
    assert abs(val[0]) > 0


@pytest.mark.skipif(BACKEND != "compiled", reason="compiled kernel not built")
def test_backends_agree():
    from trigal import _theta_kernel

    rng = np.random.default_rng(3)
    z = rng.normal(size=(20, 3)) + 1j * rng.normal(size=(20, 3))
    fast = ThetaFunction(TAU, ODD, backend=_theta_kernel.theta_sums)
    slow = ThetaFunction(TAU, ODD, backend=_theta_py.theta_sums)
    for order in (0, 1, 2):
        for x, y in zip(fast.sums(z, order), slow.sums(z, order)):
            if x is not None:
                assert np.allclose(x, y, rtol=1e-12, atol=1e-13)


def test_pure_python_switch():
    env = dict(os.environ, TRIGAL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import trigal; print(trigal.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
