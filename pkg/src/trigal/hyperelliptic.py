"""Hyperelliptic calibration: y^2 = (x - b_0) ... (x - b_2g) for g = 1, 2.

The double cover reuses the cyclic-cover machinery with m = 2: homology
from figure-eight loops, Gauss-Legendre quadrature and sheet tracking.
Genus one comes with two independent oracles, complete elliptic integrals
by the arithmetic-geometric mean and the Weierstrass sigma series.

``al_r`` is the signed square root of F(b_r) = prod_i (b_r - x_i), the sign
carried by the square-root phases tracked along the lifting paths.  The
variant with the factor sqrt(-1 / P'(b_r)) is kept as ``hyper_al_gamma``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .curve import CyclicCover, Form, principal_root
from .errors import BranchDegeneracy, BranchPointInput, OnThetaDivisor
from .periods import (
    PeriodData,
    branch_vector,
    build_period_data,
    nearest_integer_coords,
    trace_to_point,
)
from .paths import integrate_traced
from .sigma import SigmaContext, _raw, build_sigma, sigma
from .theta import Characteristic, ThetaFunction

#: relative size of |theta| below which u counts as on the theta divisor
THETA_DIVISOR_TOL = 1e-10


@dataclass(frozen=True)
class HyperCurveSpec(CyclicCover):
    """y^2 = P(x) Q(x) with P the product over the odd-indexed branch points."""

    @classmethod
    def from_branch_points(cls, points: Sequence[complex]) -> "HyperCurveSpec":
        pts = np.asarray(points, dtype=complex).ravel()
        if pts.size not in (3, 5):
            raise BranchPointInput(f"expected 3 or 5 branch points, got {pts.size}")
        return cls(m=2, roots=pts)

    @property
    def genus(self) -> int:
        return (self.degree - 1) // 2

    @property
    def lam(self) -> np.ndarray:
        return self.coeffs

    @property
    def odd_indices(self) -> list[int]:
        return list(range(1, 2 * self.genus, 2))

    @property
    def P_poly(self) -> np.ndarray:
        return np.polynomial.polynomial.polyfromroots(self.roots[self.odd_indices])

    @property
    def Q_poly(self) -> np.ndarray:
        rest = [j for j in range(self.degree) if j not in self.odd_indices]
        return np.polynomial.polynomial.polyfromroots(self.roots[rest])

    def dP(self, x):
        return np.polynomial.polynomial.polyval(x, np.polynomial.polynomial.polyder(self.P_poly))


def hyper_holomorphic_forms(curve: HyperCurveSpec) -> list[Form]:
    """x^(i-1) dx / (2y), i = 1..g."""
    return [Form(tuple([0.0] * i + [1.0]), 1, 0.5) for i in range(curve.genus)]


def hyper_second_kind_forms(curve: HyperCurveSpec) -> list[Form]:
    """(1/2y) sum_{k=j}^{2g-j} (k+1-j) lambda_{k+1+j} x^k dx, j = 1..g."""
    g, lam = curve.genus, curve.lam
    forms = []
    for j in range(1, g + 1):
        coeffs = np.zeros(2 * g - j + 1, dtype=complex)
        for k in range(j, 2 * g - j + 1):
            coeffs[k] = (k + 1 - j) * lam[k + 1 + j]
        forms.append(Form(tuple(coeffs), 1, 0.5))
    return forms


def hyper_periods(curve: HyperCurveSpec) -> PeriodData:
    pd = build_period_data(curve, hyper_holomorphic_forms(curve), hyper_second_kind_forms(curve))
    pd.zeta_char = -np.ones(curve.genus, dtype=complex)
    pd.branch = np.stack([branch_vector(pd, a) for a in range(curve.degree)])
    return pd


def explicit_characteristic(g: int) -> Characteristic:
    """Half-integer characteristic written down for the standard picture of the cycles."""
    return Characteristic(tuple(0.5 for _ in range(g)), tuple((g - k) / 2 for k in range(g)))


def explicit_characteristic_vanishes(ctx: SigmaContext, radius: int = 12) -> bool:
    """Whether the explicit characteristic is odd and vanishes on W_{g-1} in the computed basis."""
    from .sigma import probe_divisors

    pd = ctx.pd
    ch = explicit_characteristic(pd.genus)
    ch = Characteristic(tuple(np.mod(ch.a, 1.0)), tuple(np.mod(ch.b, 1.0)))
    th = ThetaFunction(0.5 * (pd.tau + pd.tau.T), ch, radius)
    zs = [np.zeros(pd.genus)] + ([ctx.A @ u for u in probe_divisors(pd)] if pd.genus > 1 else [])
    rng = np.random.default_rng(7)
    ref = np.median(np.abs(th(rng.uniform(-0.5, 0.5, (8, pd.genus)) + 0j)))
    return bool(np.max(np.abs(th(np.array(zs)))) < 1e-8 * ref)


def hyper_sigma_context(curve: HyperCurveSpec, radius: int = 12) -> SigmaContext:
    return build_sigma(hyper_periods(curve), radius)


# ----------------------------------------------------------------------------
# al functions


def _F_at(points, b) -> complex:
    return complex(np.prod([b - p[0] for p in points]))


def hyper_al(curve: HyperCurveSpec, r: int, points, paths=None) -> complex:
    """Signed sqrt(F(b_r)); the sign comes from the tracked square-root phases."""
    F = _F_at(points, curve.roots[r])
    if F == 0:
        raise BranchDegeneracy("a divisor point sits on the branch point")
    if not paths:
        return complex(principal_root(F, 2))
    # tracked (x_i - b_r)^(1/2), times i per point, squares to b_r - x_i
    return complex(np.prod([1j * p.t_phases[-1, r] for p in paths]))


def hyper_al_gamma(curve: HyperCurveSpec, r: int, points, paths=None) -> complex:
    """The variant sqrt(-1/P'(b_r)) sqrt(F(b_r)); defined for odd r only."""
    dp = curve.dP(curve.roots[r])
    return complex(principal_root(-1.0 / dp, 2) * hyper_al(curve, r, points, paths))


def ellipsoidal_sum(curve: HyperCurveSpec, a: int, al_values: dict) -> complex:
    """sum over r in {1, 3, ..., 2g-1, a} of al_r^2 / A_a'(b_r), A_a(x) = P(x)(x - b_a)."""
    A = np.polynomial.polynomial.polymul(curve.P_poly, [-curve.roots[a], 1.0])
    dA = np.polynomial.polynomial.polyder(A)
    idx = curve.odd_indices + [a]
    return complex(sum(al_values[r] ** 2 / np.polynomial.polynomial.polyval(curve.roots[r], dA)
                       for r in idx))


def hyper_phi(pd: PeriodData, r: int) -> np.ndarray:
    """The eta-image of the half period omega_r."""
    return pd.eta_image(pd.branch[r])


def _sigma_checked(ctx: SigmaContext, u) -> complex:
    v, _, _, ls = _raw(ctx.pd, ctx.theta, ctx.N, ctx.A, u, 0)
    if abs(v[0]) < THETA_DIVISOR_TOL:
        raise OnThetaDivisor("sigma vanishes at the argument")
    return complex(ctx.c * v[0] * np.exp(ls[0]))


def sigma_quotient(ctx: SigmaContext, r: int, u) -> complex:
    """exp(u^T phi_r) sigma(u + omega_r) / sigma(u), the sign convention of ``sigma``."""
    pd = ctx.pd
    u = np.asarray(u, dtype=complex)
    return complex(np.exp(u @ hyper_phi(pd, r)) * sigma(ctx, u + pd.branch[r]) / _sigma_checked(ctx, u))


def lift(pd: PeriodData, points):
    paths, total = [], np.zeros(pd.genus, dtype=complex)
    for x, y in points:
        tr = trace_to_point(pd, complex(x), complex(y))
        paths.append(tr)
        total = total + pd.anchor.tail + integrate_traced(pd.cover, tr, pd.holo)
    return paths, total


def calibrate_gamma(ctx: SigmaContext, r: int, points) -> complex:
    """gamma''_r from one divisor: al_r = gamma''_r * sigma_quotient."""
    paths, u = lift(ctx.pd, points)
    return hyper_al(ctx.pd.cover, r, points, paths) / sigma_quotient(ctx, r, u)


def hyper_al_sigma(ctx: SigmaContext, r: int, u, gamma: complex) -> complex:
    return gamma * sigma_quotient(ctx, r, u)


def hyper_al_lattice(pd: PeriodData, r: int) -> np.ndarray:
    """Generators of the periodicity lattice of al_r (columns).

    With omega_r = omega1 n' + omega2 n'', the generator 2 omega1_j is doubled
    when n''_j is odd and 2 omega2_j when n'_j is odd.
    """
    n = nearest_integer_coords(pd, 2 * pd.branch[r], "2 omega_r")
    g = pd.genus
    k1 = np.where(n[g:] % 2, 4, 2)
    k2 = np.where(n[:g] % 2, 4, 2)
    return np.hstack([pd.omega1 * k1[None, :], pd.omega2 * k2[None, :]])


# ----------------------------------------------------------------------------
# genus-one oracles


def _agm(a, b, tol=1e-30):
    """AGM with the right choice of square root at every step."""
    a, b = mpmath.mpc(a), mpmath.mpc(b)
    for _ in range(200):
        an = (a + b) / 2
        bn = mpmath.sqrt(a * b)
        if abs(an - bn) > abs(an + bn):
            bn = -bn
        a, b = an, bn
        if abs(a - b) <= tol * abs(a):
            break
    return a


def agm_periods(roots, dps: int = 30) -> list[complex]:
    """Candidate full periods pi / AGM(sqrt(e_i - e_k), sqrt(e_i - e_j)) of dx/(2y)."""
    with mpmath.workdps(dps):
        out = []
        e = [mpmath.mpc(complex(z)) for z in roots]
        for i in range(3):
            j, k = [m for m in range(3) if m != i]
            for jj, kk in ((j, k), (k, j)):
                M = _agm(mpmath.sqrt(e[i] - e[kk]), mpmath.sqrt(e[i] - e[jj]))
                out.append(complex(mpmath.pi / M))
        return out


def weierstrass_invariants(roots) -> tuple[complex, complex, complex]:
    """(g2, g3, s) with x = wp(u) + s for y^2 = prod(x - e)."""
    e = np.asarray(roots, dtype=complex)
    s = complex(np.mean(e))
    f = e - s
    p = f[0] * f[1] + f[0] * f[2] + f[1] * f[2]
    q = -f[0] * f[1] * f[2]
    return complex(-4 * p), complex(-4 * q), s


def weierstrass_sigma(u, g2, g3, terms: int = 40, dps: int = 40) -> complex:
    """Weierstrass sigma from its double series in g2/2 and 2 g3."""
    with mpmath.workdps(dps):
        u = mpmath.mpc(complex(u))
        A = {(0, 0): mpmath.mpf(1)}

        def a(m, n):
            if m < 0 or n < 0:
                return mpmath.mpf(0)
            if (m, n) in A:
                return A[(m, n)]
            v = (3 * (m + 1) * a(m + 1, n - 1)
                 + mpmath.mpf(16) / 3 * (n + 1) * a(m - 2, n + 1)
                 - mpmath.mpf(1) / 3 * (2 * m + 3 * n - 1) * (4 * m + 6 * n - 1) * a(m - 1, n))
            A[(m, n)] = v
            return v

        x = mpmath.mpc(complex(g2)) / 2
        y = 2 * mpmath.mpc(complex(g3))
        total = mpmath.mpc(0)
        for d in range(terms):
            for n in range(d // 6 + 1):
                rem = d - 6 * n
                if rem % 4:
                    continue
                m = rem // 4
                total += a(m, n) * x**m * y**n * u ** (d + 1) / mpmath.factorial(d + 1)
        return complex(total)


__all__ = [
    "HyperCurveSpec",
    "hyper_periods",
    "hyper_holomorphic_forms",
    "hyper_second_kind_forms",
    "hyper_sigma_context",
    "explicit_characteristic",
    "explicit_characteristic_vanishes",
    "hyper_al",
    "hyper_al_gamma",
    "ellipsoidal_sum",
    "hyper_phi",
    "sigma_quotient",
    "calibrate_gamma",
    "hyper_al_sigma",
    "hyper_al_lattice",
    "lift",
    "agm_periods",
    "weierstrass_invariants",
    "weierstrass_sigma",
]
