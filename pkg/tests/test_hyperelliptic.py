import mpmath
import numpy as np
import pytest

from trigal.hyperelliptic import (
    HyperCurveSpec,
    agm_periods,
    calibrate_gamma,
    ellipsoidal_sum,
    hyper_al,
    hyper_al_lattice,
    hyper_al_sigma,
    hyper_sigma_context,
    lift,
    weierstrass_invariants,
    weierstrass_sigma,
)
from trigal.periods import abel
from trigal.sigma import sigma
from trigal.verify import HYPER_CORPUS, random_points


@pytest.fixture(scope="module", params=range(len(HYPER_CORPUS)))
def hyper(request):
    curve = HyperCurveSpec.from_branch_points(HYPER_CORPUS[request.param])
    return curve, hyper_sigma_context(curve)


@pytest.fixture(scope="module")
def elliptic():
    curve = HyperCurveSpec.from_branch_points((0, 1, 2))
    return curve, hyper_sigma_context(curve)


def _in_lattice(pd, w):
    n = pd.lattice_coords(np.array([w]))
    return float(np.max(np.abs(n - np.round(n))))


def test_complete_elliptic_integral(elliptic):
    curve, ctx = elliptic
    e1, e2, e3 = (mpmath.mpf(float(e.real)) for e in curve.roots)
    k2 = (e2 - e1) / (e3 - e1)
    w = complex(2 * mpmath.ellipk(k2) / mpmath.sqrt(e3 - e1))
    assert _in_lattice(ctx.pd, w) < 1e-10
    for p in agm_periods(curve.roots):
        assert _in_lattice(ctx.pd, p) < 1e-10


def test_riemann_and_legendre(hyper):
    _, ctx = hyper
    pd = ctx.pd
    assert pd.legendre_residual() < 1e-8
    assert np.allclose(pd.tau, pd.tau.T, atol=1e-9)
    assert np.min(np.linalg.eigvalsh(pd.tau.imag)) > 0


def test_sigma_vanishes_on_w_g_minus_1(hyper):
    curve, ctx = hyper
    g = curve.genus
    rng = np.random.default_rng(4)
    u = abel(ctx.pd, random_points(curve, rng, g - 1)) if g > 1 else np.zeros(1)
    ref = abs(sigma(ctx, ctx.pd.from_coords(rng.uniform(-0.5, 0.5, 2 * g))))
    assert abs(sigma(ctx, u)) < 1e-8 * max(ref, 1)


def test_weierstrass_sigma(elliptic):
    curve, ctx = elliptic
    g2, g3, s = weierstrass_invariants(curve.roots)
    for u in (0.2 + 0.1j, -0.3 + 0.25j, 0.4):
        want = weierstrass_sigma(u, g2, g3, terms=120) * np.exp(-s * u * u / 2)
        assert sigma(ctx, np.array([u])) == pytest.approx(want, rel=1e-8)


def test_al_squared_is_F(hyper):
    curve, ctx = hyper
    rng = np.random.default_rng(6)
    D = random_points(curve, rng, curve.genus)
    paths, _ = lift(ctx.pd, D)
    for r in range(curve.degree):
        F = np.prod([curve.roots[r] - x for x, _ in D])
        assert hyper_al(curve, r, D, paths) ** 2 == pytest.approx(F, rel=1e-10)


def test_ellipsoidal_sum(hyper):
    curve, ctx = hyper
    rng = np.random.default_rng(8)
    evens = [a for a in range(curve.degree) if a not in curve.odd_indices]
    for _ in range(3):
        D = random_points(curve, rng, curve.genus)
        al = {r: hyper_al(curve, r, D) for r in range(curve.degree)}
        for a in evens:
            assert abs(ellipsoidal_sum(curve, a, al) - 1) < 1e-9


def test_sigma_quotient_matches_al_squared(hyper):
    curve, ctx = hyper
    rng = np.random.default_rng(9)
    D0 = random_points(curve, rng, curve.genus)
    gam = {r: calibrate_gamma(ctx, r, D0) for r in range(curve.degree)}
    for _ in range(3):
        D = random_points(curve, rng, curve.genus)
        paths, u = lift(ctx.pd, D)
        for r in range(curve.degree):
            q = hyper_al_sigma(ctx, r, u, gam[r])
            assert q**2 == pytest.approx(hyper_al(curve, r, D, paths) ** 2, rel=1e-7)


def test_al_periodicity(hyper):
    curve, ctx = hyper
    pd = ctx.pd
    rng = np.random.default_rng(10)
    gam = {r: calibrate_gamma(ctx, r, random_points(curve, rng, curve.genus))
           for r in range(curve.degree)}
    u = pd.from_coords(rng.uniform(-0.5, 0.5, 2 * curve.genus))
    for r in range(curve.degree):
        base = hyper_al_sigma(ctx, r, u, gam[r])
        gens = hyper_al_lattice(pd, r)
        for k in range(gens.shape[1]):
            assert hyper_al_sigma(ctx, r, u + gens[:, k], gam[r]) == pytest.approx(base, rel=1e-7)


def test_sigma_route_lies_on_quadric(hyper):
    curve, ctx = hyper
    rng = np.random.default_rng(12)
    gam = {r: calibrate_gamma(ctx, r, random_points(curve, rng, curve.genus))
           for r in range(curve.degree)}
    evens = [a for a in range(curve.degree) if a not in curve.odd_indices]
    u = ctx.pd.from_coords(rng.uniform(-0.5, 0.5, 2 * curve.genus))
    al = {r: hyper_al_sigma(ctx, r, u, gam[r]) for r in range(curve.degree)}
    for a in evens:
        assert abs(ellipsoidal_sum(curve, a, al) - 1) < 1e-6
