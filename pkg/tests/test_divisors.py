import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trigal.curve import ZETA3, CurveSpec
from trigal.divisors import (
    A_func,
    F_func,
    delta_n,
    minus_one_1,
    minus_one_2,
    minus_one_3,
    mu_n,
    three_point_identity,
    two_point_identities,
)
from trigal.errors import VerticalLine
from trigal.verify import random_points

CURVE = CurveSpec.from_branch_points((0, 1, 2, 3))
COMPLEX_CURVE = CurveSpec.from_branch_points((0, 1, 1 + 1j, 3 - 1j))

seeds = st.integers(0, 2**32 - 1)


def pt(x, k=0, curve=CURVE):
    return (complex(x), complex(curve.sheets_above(x)[k]))


def test_delta_small_cases():
    assert delta_n([pt(0.7)]) == pytest.approx(1)
    assert delta_n([pt(0.5j), pt(1 + 0.5j)]) == pytest.approx(1)
    assert abs(delta_n([pt(-1, 0), pt(-1, 1), pt(-1, 2)])) < 1e-12


def test_mu_one_is_x_minus_x1():
    P1 = pt(-1.3)
    P = pt(0.4 + 0.9j, 2)
    assert mu_n(P, [P1]) == pytest.approx(P[0] - P1[0])


def test_mu_two_against_explicit_determinant(rng):
    for _ in range(10):
        P, P1, P2 = random_points(CURVE, rng, 3)
        (x, y), (x1, y1), (x2, y2) = P, P1, P2
        num = (x1 * y2 - x2 * y1) - (y2 - y1) * x + (x2 - x1) * y
        assert abs(mu_n(P, [P1, P2]) - num / (x2 - x1)) < 1e-12 * max(1, abs(num / (x2 - x1)))


@given(seeds)
def test_mu_three_vanishes_at_its_points(seed):
    P = random_points(COMPLEX_CURVE, np.random.default_rng(seed), 4)
    base = P[:3]
    scale = abs(mu_n(P[3], base))
    for p in base:
        assert abs(mu_n(p, base)) < 1e-10 * max(1.0, scale)


def test_minus_one_1():
    P = pt(-1)
    Q = minus_one_1(CURVE, P)
    c = 24 ** (1 / 3)
    assert [q[0] for q in Q] == [-1, -1]
    assert np.allclose([q[1] for q in Q], [c * ZETA3, c * ZETA3**2])


def test_minus_one_2_matches_direct_root_finding():
    P1, P2 = pt(-1), pt(-2)
    Q = minus_one_2(CURVE, P1, P2)
    beta = (P2[1] - P1[1]) / (P2[0] - P1[0])
    alpha = P1[1] - beta * P1[0]
    # (alpha + beta x)^3 - f(x), solved with no knowledge of x = -1, -2
    poly = np.polymul(np.polymul([beta, alpha], [beta, alpha]), [beta, alpha])
    full = np.polysub(poly, np.poly([0, 1, 2, 3]))
    roots = np.roots(full)
    rest = sorted((r for r in roots if min(abs(r + 1), abs(r + 2)) > 1e-6), key=lambda z: (z.real, z.imag))
    got = sorted((q[0] for q in Q), key=lambda z: (z.real, z.imag))
    assert np.allclose(got, rest, atol=1e-9)
    for x, y in Q:
        assert CURVE.on_curve(x, y)


def test_two_point_relations(rng):
    for _ in range(20):
        P = random_points(CURVE, rng, 2)
        Q = minus_one_2(CURVE, *P)
        for lhs, rhs in two_point_identities(P, Q):
            assert abs(lhs - rhs) < 1e-9 * abs(rhs)


def test_three_point_relation_with_sign(rng):
    for _ in range(10):
        P = random_points(COMPLEX_CURVE, rng, 3)
        Q = minus_one_3(COMPLEX_CURVE, *P)
        lhs, rhs = three_point_identity(P, Q, (0, 1, 2), (0, 1, 3))
        eps = np.round((lhs / rhs).real)
        assert eps in (-1, 1)
        assert abs(lhs - eps * rhs) < 1e-9 * abs(rhs)


@given(seeds)
def test_three_point_sign_is_plus_one(seed):
    P = random_points(CURVE, np.random.default_rng(seed), 3)
    Q = minus_one_3(CURVE, *P)
    for i, j in itertools.permutations(itertools.combinations(range(4), 3), 2):
        lhs, rhs = three_point_identity(P, Q, i, j)
        assert abs(lhs / rhs - 1) < 1e-8


def _canonical(points):
    return sorted((complex(np.round(x, 7)), complex(np.round(y, 7))) for x, y in points)


@given(seeds)
def test_minus_one_3_is_an_involution(seed):
    P = random_points(COMPLEX_CURVE, np.random.default_rng(seed), 3)
    R = minus_one_3(COMPLEX_CURVE, *minus_one_3(COMPLEX_CURVE, *P))
    for (x, y), (xr, yr) in zip(sorted(P, key=lambda p: (p[0].real, p[0].imag)),
                                sorted(R, key=lambda p: (p[0].real, p[0].imag))):
        assert abs(x - xr) < 1e-8 * max(1, abs(x))
        assert abs(y - yr) < 1e-8 * max(1, abs(y))


def test_inverse_points_lie_on_curve(rng):
    for _ in range(10):
        P = random_points(COMPLEX_CURVE, rng, 3)
        for x, y in minus_one_3(COMPLEX_CURVE, *P) + minus_one_2(COMPLEX_CURVE, *P[:2]):
            assert COMPLEX_CURVE.on_curve(x, y, tol=1e-8)


def test_vertical_line_rejected():
    with pytest.raises(VerticalLine):
        minus_one_2(CURVE, pt(-1, 0), pt(-1, 1))


def test_F_example():
    pts = [pt(-1), pt(-2), pt(-3)]
    assert F_func(CURVE, 0, pts) == pytest.approx(6)


def test_A_and_F_vanish_with_a_point_at_the_branch_point(rng):
    P = random_points(CURVE, rng, 2)
    for a in range(4):
        pts = P + [(CURVE.roots[a], 0j)]
        assert F_func(CURVE, a, pts) == 0
        assert abs(A_func(CURVE, a, pts)) < 1e-12
