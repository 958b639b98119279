import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trigal.curve import (
    ZETA3,
    CurveSpec,
    continue_along,
    holomorphic_forms,
    infinity_chart,
    phi_monomial,
    phi_values,
    pole_order,
    second_kind_forms,
    zeta_form_characters,
)
from trigal.errors import BranchPointInput
from trigal.paths import arc

CURVE = CurveSpec.from_branch_points((0, 1, 2, 3))

finite = st.floats(-4, 4, allow_nan=False)


def test_f_and_sheets_at_minus_one():
    assert CURVE.f(-1) == pytest.approx(24)
    ys = CURVE.sheets_above(-1)
    assert np.allclose(ys**3, 24)
    assert len({complex(np.round(y, 12)) for y in ys}) == 3


def test_sheets_where_f_is_one():
    c = CurveSpec.from_branch_points((1, -1, 1j, -1j))  # f = x^4 - 1
    x = 2 ** 0.25
    ys = np.sort_complex(np.round(c.sheets_above(x), 12))
    assert np.allclose(ys, np.sort_complex(np.round(ZETA3 ** np.arange(3), 12)))


def test_product_of_sheets_at_half():
    # 0.5 * (-0.5) * (-1.5) * (-2.5)
    assert CURVE.f(0.5) == pytest.approx(-0.9375)
    assert np.prod(CURVE.sheets_above(0.5)) == pytest.approx(-0.9375)


@given(finite, finite)
def test_sheets_cube_to_f(re, im):
    x = complex(re, im)
    if CURVE.dist_to_roots(x) < 1e-3:
        return
    ys = CURVE.sheets_above(x)
    fx = CURVE.f(x)
    assert np.allclose(ys**3, fx, rtol=1e-12, atol=1e-12 * max(1, abs(fx)))
    assert np.allclose(ys[1:] / ys[:-1], ZETA3)


def test_duplicate_branch_points_rejected():
    with pytest.raises(BranchPointInput, match="branch points not distinct"):
        CurveSpec.from_branch_points((0, 1, 1, 3))


def test_wrong_number_of_branch_points():
    with pytest.raises(BranchPointInput):
        CurveSpec.from_branch_points((0, 1, 2))


def _loop(center, radius, turns, start):
    return arc(center, radius, np.angle(start - center), 2 * np.pi * turns)


def test_small_loop_has_trivial_monodromy():
    x0 = 0.5 + 0.5j
    xs = _loop(x0 + 0.05, 0.05, 1, x0)
    y0 = CURVE.sheets_above(x0)[0]
    tr = continue_along(CURVE, xs, y0)
    assert abs(tr.ys[-1] - y0) < 1e-9


def test_loop_around_branch_point_multiplies_by_zeta():
    x0 = 0.1
    xs = _loop(0.0, 0.1, 1, x0)
    y0 = CURVE.sheets_above(x0)[0]
    tr = continue_along(CURVE, xs, y0)
    assert abs(tr.ys[-1] - ZETA3 * y0) < 1e-9
    assert abs(tr.t_phases[-1, 0] - ZETA3 * tr.t_phases[0, 0]) < 1e-9
    assert tr.windings[0] == 1


def test_three_loops_around_branch_point_return():
    x0 = 0.1
    xs = _loop(0.0, 0.1, 3, x0)
    y0 = CURVE.sheets_above(x0)[0]
    tr = continue_along(CURVE, xs, y0)
    assert abs(tr.ys[-1] - y0) < 1e-9


def test_holomorphic_densities():
    y = 24 ** (1 / 3)
    nu = holomorphic_forms(CURVE)
    assert nu[0].density(-1, y) == pytest.approx(1 / (3 * 24 ** (2 / 3)))
    assert nu[1].density(-1, y) == pytest.approx(-1 / (3 * 24 ** (2 / 3)))
    assert nu[2].density(-1, y) == pytest.approx(1 / (3 * y))


def test_densities_under_zeta():
    x, y = 0.3 + 0.2j, CURVE.sheets_above(0.3 + 0.2j)[0]
    for form, ch in zip(holomorphic_forms(CURVE), zeta_form_characters()):
        assert form.density(x, ZETA3 * y) == pytest.approx(ch * form.density(x, y))


def test_third_form_at_infinity():
    for t in (1e-2, 1e-3):
        x, y = infinity_chart(CURVE, t)
        dxdt = -3 * t**-4
        val = holomorphic_forms(CURVE)[2].density(x, y) * dxdt
        assert abs(val + 1) < 10 * t**3


def test_second_kind_densities():
    y = 24 ** (1 / 3)
    lam = CURVE.lam
    assert lam[2] == pytest.approx(11)
    sk = second_kind_forms(CURVE)
    assert sk[1].density(-1, y) == pytest.approx(-2 / (3 * y))
    assert sk[2].density(-1, y) == pytest.approx(1 / (3 * y**2))
    y0 = CURVE.sheets_above(0.0 + 0j)
    # at x = 0 the first reduces to lambda_2 / (3 y); use a nearby point
    x = 1e-9
    yv = CURVE.sheets_above(x)[0]
    assert sk[0].density(x, yv) == pytest.approx(11 / (3 * yv), rel=1e-6)
    assert np.all(np.abs(y0) < 1e-12)


def test_monomial_ladder():
    assert np.allclose(phi_values(1, 0.3, 0.7), [1.0])
    assert phi_values(4, 2.0, 5.0)[3] == pytest.approx(4.0)
    assert phi_monomial(3) == (2, 0)
    assert pole_order(5) == 8
    assert [pole_order(n) for n in range(6)] == [0, 3, 4, 6, 7, 8]
