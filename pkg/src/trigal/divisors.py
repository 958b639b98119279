"""Divisors on the trigonal curve: the mu-functions and the inversion maps.

Points are (x, y) pairs.  The monomials 1, x, y, x^2, xy, y^2, x^3, ...
(ordered by pole order at infinity) give the determinant rows used by
``mu_n`` and ``delta_n``; ``minus_one_n`` returns the divisor Q with
P + Q equivalent to n times the point at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .curve import ZETA3, CurveSpec, TracedPath, branch_chart, infinity_chart, phi_values
from .errors import (
    DegenerateConfiguration,
    DegenerateBase,
    RootDeflationFailure,
    VerticalLine,
)

#: relative size below which a determinant counts as vanishing
DEGENERACY_TOL = 1e-12


@dataclass
class DivisorTuple:
    """An ordered tuple of points, optionally with the lifted paths that reach them."""

    points: list
    paths: list = field(default_factory=list)

    @property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points], dtype=complex)

    @property
    def ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.points], dtype=complex)

    def __len__(self) -> int:
        return len(self.points)


def _rows(points: Sequence, n: int) -> np.ndarray:
    pts = np.asarray(points, dtype=complex).reshape(-1, 2)
    return phi_values(n, pts[:, 0], pts[:, 1])


def delta_n(points: Sequence) -> complex:
    """det[phi_0..phi_{n-1}](P_1..P_n) times the Vandermonde determinant of the x_i."""
    n = len(points)
    if n == 0:
        return 1.0
    xs = np.array([p[0] for p in points], dtype=complex)
    vand = 1.0 + 0j
    for i in range(n):
        for j in range(i + 1, n):
            vand *= xs[j] - xs[i]
    return complex(np.linalg.det(_rows(points, n)) * vand)


def mu_n(point, points: Sequence) -> complex:
    """mu_n(P; P_1..P_n): bordered determinant over the n x n one, monic in phi_n."""
    n = len(points)
    den = np.linalg.det(_rows(points, n)) if n else 1.0
    if abs(den) == 0.0:
        raise DegenerateBase("denominator determinant vanishes")
    num = np.linalg.det(_rows(list(points) + [point], n + 1))
    return complex(num / den)


def _polish(coeffs: np.ndarray, roots: np.ndarray, steps: int = 3) -> np.ndarray:
    """Newton refinement of polynomial roots (coefficients highest first)."""
    d = np.polyder(coeffs)
    out = roots.astype(complex)
    for _ in range(steps):
        dv = np.polyval(d, out)
        ok = dv != 0
        out[ok] = out[ok] - np.polyval(coeffs, out[ok]) / dv[ok]
    return out


def deflate(coeffs: np.ndarray, known: Sequence[complex], tol: float = 1e-7) -> np.ndarray:
    """Divide out the known roots and return the remaining roots."""
    q = np.asarray(coeffs, dtype=complex)
    scale = np.max(np.abs(q))
    for r in known:
        q, rem = np.polydiv(q, np.array([1.0, -r]))
        if abs(rem[-1]) > tol * scale * max(1.0, abs(r)) ** len(coeffs):
            raise RootDeflationFailure("known point is not a root of the intersection polynomial")
    if q.size <= 1:
        return np.zeros(0, dtype=complex)
    return _polish(np.asarray(coeffs, dtype=complex), np.roots(q))


def minus_one_1(curve: CurveSpec, point) -> list:
    """Q with P + Q equivalent to 3 infinity: the other two points over x."""
    x, y = point
    return [(x, ZETA3 * y), (x, ZETA3**2 * y)]


def line_through(p1, p2) -> tuple[complex, complex]:
    """(alpha, beta) with y = alpha + beta x through both points."""
    (x1, y1), (x2, y2) = p1, p2
    scale = max(1.0, abs(x1), abs(x2))
    if abs(x2 - x1) <= DEGENERACY_TOL * scale:
        raise VerticalLine("points share an x-coordinate")
    beta = (y2 - y1) / (x2 - x1)
    return y1 - beta * x1, beta


def minus_one_2(curve: CurveSpec, p1, p2) -> list:
    """The two further intersections of the line through P1, P2 with the curve."""
    alpha, beta = line_through(p1, p2)
    lam = curve.lam
    # (alpha + beta x)^3 - f(x), highest degree first
    line3 = np.polynomial.polynomial.polypow([alpha, beta], 3)
    poly = np.zeros(5, dtype=complex)
    poly[: line3.size] += line3
    poly -= lam
    xs = deflate(poly[::-1], [p1[0], p2[0]])
    return [(x, alpha + beta * x) for x in xs]


def cubic_through(p1, p2, p3) -> np.ndarray:
    """Coefficients (d0, d1, d2, d3) of d0 + d1 x + d2 y + d3 x^2 vanishing at the points."""
    R = _rows([p1, p2, p3], 4)
    # kernel of the 3x4 matrix via cofactors of the bordered determinant
    d = np.array([(-1) ** k * np.linalg.det(np.delete(R, k, axis=1)) for k in range(4)])
    if abs(d[2]) <= DEGENERACY_TOL * max(1.0, np.max(np.abs(d))):
        raise DegenerateConfiguration("points lie on a curve without a y term")
    return d


def minus_one_3(curve: CurveSpec, p1, p2, p3) -> list:
    """The three further zeros of the function d0 + d1 x + d2 y + d3 x^2 through P1..P3."""
    d = cubic_through(p1, p2, p3)
    # y = q(x) = -(d0 + d1 x + d3 x^2) / d2
    q = -np.array([d[0], d[1], d[3]]) / d[2]
    if abs(q[2]) <= DEGENERACY_TOL * max(1.0, np.max(np.abs(q))):
        raise DegenerateConfiguration("the function degenerates to a line")
    q3 = np.polynomial.polynomial.polypow(q, 3)
    poly = q3.astype(complex)
    poly[: curve.lam.size] -= curve.lam
    xs = deflate(poly[::-1], [p1[0], p2[0], p3[0]])
    return [(x, np.polynomial.polynomial.polyval(x, q)) for x in xs]


def minus_one(curve: CurveSpec, points: Sequence) -> list:
    n = len(points)
    if n == 1:
        return minus_one_1(curve, points[0])
    if n == 2:
        return minus_one_2(curve, *points)
    if n == 3:
        return minus_one_3(curve, *points)
    raise ValueError("only n = 1, 2, 3 are supported")


def minor(points: Sequence, cols: Sequence[int]) -> complex:
    """Determinant of the monomial rows of the points restricted to the given columns."""
    R = _rows(points, max(cols) + 1)
    return complex(np.linalg.det(R[:, list(cols)]))


def A_func(curve: CurveSpec, a: int, points: Sequence) -> complex:
    """mu_3 evaluated at the branch point (b_a, 0)."""
    b = curve.roots[a]
    return mu_n((b, 0.0), points)


def F_func(curve: CurveSpec, a: int, points: Sequence) -> complex:
    """prod_i (b_a - x_i)."""
    b = curve.roots[a]
    return complex(np.prod([b - p[0] for p in points]))


def genericity_report(curve: CurveSpec, points: Sequence) -> dict:
    """Which special loci the divisor sits near (relative measures)."""
    xs = np.array([p[0] for p in points], dtype=complex)
    ys = np.array([p[1] for p in points], dtype=complex)
    scale = max(1.0, float(np.max(np.abs(xs))))
    gaps = [abs(xs[i] - xs[j]) / scale for i in range(len(xs)) for j in range(i + 1, len(xs))]
    return {
        "min_x_gap": min(gaps) if gaps else float("inf"),
        "min_abs_y": float(np.min(np.abs(ys))) if len(ys) else float("inf"),
        "min_branch_distance": float(np.min(curve.dist_to_roots(xs))) if len(xs) else float("inf"),
        "max_abs_x": float(np.max(np.abs(xs))) if len(xs) else 0.0,
    }


def cube_root_F(curve: CurveSpec, a: int, paths: Sequence[TracedPath]) -> complex:
    """Cube root of F_a tracked along the paths: prod_i (-(x_i - b_a)^(1/3))."""
    return complex(np.prod([-p.t_phases[-1, a] for p in paths]))


def eps_count(a: int, paths: Sequence[TracedPath]) -> int:
    """Winding count around b_a minus the count at infinity, summed over the paths, mod 3."""
    return int(sum(int(p.windings[a]) - int(p.windings[-1]) for p in paths)) % 3


# ----------------------------------------------------------------------------
# local orders of A_a and F_a


def _slope(ts, vals) -> float:
    lt = np.log(np.asarray(ts, dtype=float))
    lv = np.log(np.abs(np.asarray(vals, dtype=complex)))
    return float(np.polyfit(lt, lv, 1)[0])


def order_slopes(curve: CurveSpec, a: int, item: int, p1, p2, ts=None) -> tuple[float, float]:
    """Fitted orders (in the local parameter t) of A_a and F_a along a degeneration.

    item 1: P3 -> (b_a, 0) in t_a;  item 2: P3 -> a further zero of the
    function through P1, P2, B_a;  item 3: P3 -> infinity in t_inf;
    item 4: P1, P2 -> the two non-principal sheets over b_a + t^3, with
    ``p1`` kept as the generic third point.
    """
    b = curve.roots[a]
    scale = curve.cube_roots_df[a]
    if item == 1:
        ts = ts or [1e-2, 5e-3, 2.5e-3]
        divs = [[p1, p2, tuple(branch_chart(curve, a, t, scale))] for t in ts]
    elif item == 2:
        ts = ts or [1e-3, 5e-4, 2.5e-4]
        s = minus_one_3(curve, p1, p2, (b, 0.0))[0]
        divs = []
        for t in ts:
            x = s[0] + t
            ys = curve.sheets_above(x)
            divs.append([p1, p2, (x, ys[np.argmin(np.abs(ys - s[1]))])])
    elif item == 3:
        ts = ts or [1e-2, 1e-3, 1e-4]
        divs = [[p1, p2, tuple(infinity_chart(curve, t))] for t in ts]
    elif item == 4:
        ts = ts or [1e-1, 5e-2, 2.5e-2]
        divs = []
        for t in ts:
            q1 = branch_chart(curve, a, ZETA3 * t, scale)
            q2 = branch_chart(curve, a, ZETA3**2 * t, scale)
            divs.append([tuple(q1), tuple(q2), p1])
    else:
        raise ValueError("item must be 1, 2, 3 or 4")
    A = [A_func(curve, a, d) for d in divs]
    F = [F_func(curve, a, d) for d in divs]
    return _slope(ts, A), _slope(ts, F)


#: expected (order of A_a, order of F_a) for each degeneration of ``order_slopes``
EXPECTED_ORDERS = {1: (1, 3), 2: (1, 0), 3: (-2, -3), 4: (3, 6)}


# ----------------------------------------------------------------------------
# determinant identities between a divisor and its inverse


def _det2(p, q, cols) -> complex:
    """2x2 determinant with rows p, q over columns drawn from {'1', 'x', 'y'}."""
    def pick(pt, c):
        return {"1": 1.0, "x": pt[0], "y": pt[1]}[c]
    return complex(pick(p, cols[0]) * pick(q, cols[1]) - pick(p, cols[1]) * pick(q, cols[0]))


def two_point_identities(P, Q) -> list[tuple[complex, complex]]:
    """Both sides of the three bilinear relations between P = (P1, P2) and Q = [-1]_2 P."""
    xy_P, xy_Q = _det2(*P, "xy"), _det2(*Q, "xy")
    oy_P, oy_Q = _det2(*P, "1y"), _det2(*Q, "1y")
    ox_P, ox_Q = _det2(*P, "1x"), _det2(*Q, "1x")
    return [
        (xy_P * oy_Q, xy_Q * oy_P),
        (xy_P * ox_Q, xy_Q * ox_P),
        (oy_P * ox_Q, oy_Q * ox_P),
    ]


def three_point_identity(P, Q, i_cols, j_cols) -> tuple[complex, complex]:
    """|phi_i(P)| |phi_j(Q)| and |phi_j(P)| |phi_i(Q)|; their ratio is the sign epsilon."""
    return (minor(P, i_cols) * minor(Q, j_cols), minor(P, j_cols) * minor(Q, i_cols))
