import numpy as np
import pytest

from trigal.al import (
    K_residues,
    addition_check,
    al_algebraic,
    al_algebraic_cube,
    al_period_residuals,
    al_sigma,
    frobenius_algebraic,
    frobenius_sum,
    lift_divisor,
)
from trigal.curve import ZETA3
from trigal.errors import OnThetaDivisor
from trigal.periods import abel
from trigal.verify import random_points

DIRECTION = np.array([0.3, 0.2 + 0.1j, -0.1])


@pytest.fixture(scope="module")
def lifted(corpus):
    curve, pd, _ = corpus(1)
    rng = np.random.default_rng(11)
    return [lift_divisor(pd, random_points(curve, rng, 3)) for _ in range(3)]


def test_cubes_agree(corpus, lifted):
    curve, _, ctx = corpus(1)
    for L in lifted:
        for a in range(4):
            for c in range(3):
                s = al_sigma(ctx, a, c, L.u)
                alg = al_algebraic(curve, a, c, L.points, L.paths)
                assert abs(s**3 - alg**3) < 1e-8 * abs(s**3)
                assert alg**3 == pytest.approx(al_algebraic_cube(curve, a, L.points), rel=1e-10)


def test_uncubed_routes_differ_by_cube_root_of_unity(corpus, lifted):
    curve, _, ctx = corpus(1)
    L = lifted[0]
    for a in range(4):
        for c in range(3):
            r = al_sigma(ctx, a, c, L.u) / al_algebraic(curve, a, c, L.points, L.paths)
            assert min(abs(r - ZETA3**k) for k in range(3)) < 1e-8


def test_sigma_route_is_periodic(corpus, rng):
    _, pd, ctx = corpus(0)
    u = pd.from_coords(rng.uniform(-0.5, 0.5, 6))
    for a in range(4):
        assert np.max(al_period_residuals(ctx, a, 1, u)) < 1e-8


def _limit(fn, ts=(1e-3, 1e-4, 1e-5)):
    vals = [fn(t) for t in ts]
    return vals[-1], abs(vals[-1] - vals[-2])


def test_simple_pole_on_theta_divisor(corpus, rng):
    curve, pd, ctx = corpus(1)
    u0 = abel(pd, random_points(curve, rng, 2))
    with pytest.raises(OnThetaDivisor):
        al_sigma(ctx, 0, 0, u0)
    lim, step = _limit(lambda t: t * al_sigma(ctx, 0, 0, u0 + t * DIRECTION))
    assert abs(lim) > 1e-3
    assert step < 1e-3 * abs(lim)


def test_simple_zero_at_shifted_theta_divisor(corpus, rng):
    curve, pd, ctx = corpus(1)
    u0 = abel(pd, random_points(curve, rng, 2)) - pd.branch[2]
    lim, step = _limit(lambda t: al_sigma(ctx, 2, 0, u0 + t * DIRECTION) / t)
    assert abs(lim) > 1e-3
    assert step < 1e-3 * abs(lim)


def test_frobenius_routes_agree(corpus, lifted):
    curve, _, ctx = corpus(1)
    for L in lifted:
        s = frobenius_sum(ctx, L.u)
        alg = frobenius_algebraic(curve, L.points)
        assert abs(s - alg) < 1e-8
        # both routes give the same constant for every divisor; see the README
        assert abs(alg + 1) < 1e-8


def test_residues_at_infinity_and_total(corpus, lifted):
    curve, _, _ = corpus(1)
    for L in lifted:
        res = K_residues(curve, L.points)
        assert abs(res["infinity"] + 1) < 1e-8
        assert abs(res["total"]) < 1e-8


def test_addition_sides_are_zeta_invariant(corpus, lifted):
    _, pd, ctx = corpus(1)
    L = lifted[0]
    turned = [(x, ZETA3 * y) for x, y in L.points]
    for a in range(4):
        lhs, rhs = addition_check(ctx, L.points, a, L.u)
        lhs2, rhs2 = addition_check(ctx, turned, a, pd.zeta(L.u))
        assert lhs2 == pytest.approx(lhs, rel=1e-8)
        assert rhs2 == pytest.approx(rhs, rel=1e-8)
        # the two sides differ by a constant sign; see the README
        assert lhs / rhs == pytest.approx(-1, abs=1e-6)
