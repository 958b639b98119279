"""Trigonal al functions, the Frobenius-type identity and its residue proof.

Two routes to al_a^(c):

* sigma route: exp(u^T phi) sigma(u + zeta^c omega_a) / (sigma(u) sigma_33(zeta^c omega_a)),
  with phi the eta-image of zeta^c omega_a.  The sign of the exponent follows
  the quasi-periodicity sign of ``sigma.quasi_factor``; it is the one that makes
  the quotient periodic.
* algebraic route: -zeta^(c + eps) A_a / F_a^(1/3), with the cube root carried
  by the root phases tracked along the lifting paths.

Only cubes are compared between the routes; the uncubed ratio is reported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve import ZETA3, CurveSpec, principal_root
from .divisors import A_func, F_func, cube_root_F, eps_count, mu_n
from .errors import ContourTooClose, OnThetaDivisor
from .periods import (
    PeriodData,
    abel,
    al_lattice_generators,
    phi_vector,
    trace_to_point,
    twisted_branch,
)
from .paths import integrate_traced
from .sigma import SigmaContext, _raw, sigma, sigma_deriv

#: |theta| relative to its largest term below which u counts as on the theta divisor
THETA_DIVISOR_TOL = 1e-10
#: contour points for residues
RESIDUE_NODES = 256


def _sigma_checked(ctx: SigmaContext, u) -> complex:
    v, _, _, ls = _raw(ctx.pd, ctx.theta, ctx.N, ctx.A, u, 0)
    if abs(v[0]) < THETA_DIVISOR_TOL:
        raise OnThetaDivisor("sigma vanishes at the argument")
    return complex(ctx.c * v[0] * np.exp(ls[0]))


def al_sigma(ctx: SigmaContext, a: int, c: int, u) -> complex:
    """al_a^(c)(u) through sigma."""
    pd = ctx.pd
    u = np.asarray(u, dtype=complex)
    v = twisted_branch(pd, a, c)
    phi = phi_vector(pd, a, c)
    s_u = _sigma_checked(ctx, u)
    s33 = sigma_deriv(ctx, v, (3, 3))
    return complex(np.exp(u @ phi) * sigma(ctx, u + v) / (s_u * s33))


def al_product(ctx: SigmaContext, a: int, u) -> complex:
    """prod_c al_a^(c)(u); independent of the representative of omega_a."""
    return complex(np.prod([al_sigma(ctx, a, c, u) for c in range(3)]))


@dataclass
class LiftedDivisor:
    """Points with their lifting paths and Abel image."""

    points: list
    paths: list
    u: np.ndarray


def lift_divisor(pd: PeriodData, points) -> LiftedDivisor:
    paths, total = [], np.zeros(pd.genus, dtype=complex)
    for x, y in points:
        tr = trace_to_point(pd, complex(x), complex(y))
        paths.append(tr)
        total = total + pd.anchor.tail + integrate_traced(pd.cover, tr, pd.holo)
    return LiftedDivisor([(complex(x), complex(y)) for x, y in points], paths, total)


def al_algebraic(curve: CurveSpec, a: int, c: int, points, paths=None) -> complex:
    """-zeta^(c+eps) A_a / F_a^(1/3).

    With ``paths`` the cube root and eps come from the tracked phases;
    without them the principal cube root and eps = 0 are used.
    """
    A = A_func(curve, a, points)
    if paths:
        cr = cube_root_F(curve, a, paths)
        eps = eps_count(a, paths)
    else:
        cr = principal_root(F_func(curve, a, points), 3)
        eps = 0
    return complex(-(ZETA3 ** (c + eps)) * A / cr)


def al_algebraic_cube(curve: CurveSpec, a: int, points) -> complex:
    """-A_a^3 / F_a, the phase-free cube of the algebraic al."""
    return complex(-A_func(curve, a, points) ** 3 / F_func(curve, a, points))


def al_period_residuals(ctx: SigmaContext, a: int, c: int, u) -> np.ndarray:
    """Relative changes of al_a^(c) under each generator of its periodicity lattice."""
    base = al_sigma(ctx, a, c, u)
    gens = al_lattice_generators(ctx.pd, a, c)
    return np.array([abs(al_sigma(ctx, a, c, u + gens[:, k]) - base) / abs(base)
                     for k in range(gens.shape[1])])


# ----------------------------------------------------------------------------
# Frobenius-type identity


def frobenius_sum(ctx: SigmaContext, u) -> complex:
    """sum_a prod_c al_a^(c)(u) / f'(b_a)."""
    curve = ctx.pd.cover
    return complex(sum(al_product(ctx, a, u) / curve.df(curve.roots[a])
                       for a in range(curve.degree)))


def frobenius_algebraic(curve: CurveSpec, points) -> complex:
    """The same sum assembled from the cubes -A_a^3 / F_a."""
    return complex(sum(al_algebraic_cube(curve, a, points) / curve.df(curve.roots[a])
                       for a in range(curve.degree)))


def frobenius_sigma_form(ctx: SigmaContext, u) -> complex:
    """sum_a prod_c sigma(u + zeta^c omega_a) / sigma(u)^3, with no constant."""
    pd = ctx.pd
    s3 = _sigma_checked(ctx, u) ** 3
    total = 0j
    for a in range(pd.cover.degree):
        vs = np.stack([u + twisted_branch(pd, a, c) for c in range(3)])
        total += np.prod(sigma(ctx, vs)) / s3
    return complex(total)


def sigma33_constants(ctx: SigmaContext) -> dict:
    """Branch-point constants built from sigma_33(omega_a).

    ``literal``: sigma_33(omega_a) C_a.
    ``invariant``: (sigma_33(omega_a) C_a)^2 exp(omega_a^T phi_a), which does not
    depend on the choice of omega_a modulo the lattice up to a cube root of unity.
    ``frobenius``: sigma_33(omega_a)^3 f'(b_a).
    """
    pd = ctx.pd
    C = pd.cover.cube_roots_df
    lit, inv, frob = [], [], []
    for a in range(pd.cover.degree):
        w = pd.branch[a]
        s33 = complex(sigma_deriv(ctx, w, (3, 3)))
        lit.append(s33 * C[a])
        inv.append((s33 * C[a]) ** 2 * np.exp(w @ phi_vector(pd, a, 0)))
        frob.append(s33**3 * C[a] ** 3)
    return {"literal": np.array(lit), "invariant": np.array(inv), "frobenius": np.array(frob)}


def relative_spread(values) -> float:
    v = np.asarray(values, dtype=complex)
    m = np.mean(v)
    return float(np.max(np.abs(v - m)) / abs(m))


# ----------------------------------------------------------------------------
# the differential K and its residues


def K_density(curve: CurveSpec, points, x) -> np.ndarray:
    """K = prod_c mu_3((x, zeta^c y)) / (3 f(x) F(x)) dx, as a function of x."""
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    xs = np.array([p[0] for p in points], dtype=complex)
    out = np.empty(x.shape, dtype=complex)
    for k, xv in enumerate(x):
        prod = 1.0 + 0j
        for y in curve.sheets_above(xv):
            prod *= mu_n((xv, y), points)
        out[k] = prod / (3 * curve.f(xv) * np.prod(xv - xs))
    return out


def _circle(n: int):
    th = 2 * np.pi * np.arange(n) / n
    return np.exp(1j * th)


def _check_clear(centre, radius, poles, what):
    d = np.abs(np.asarray(poles, dtype=complex) - centre)
    if np.any(d < 2 * radius):
        raise ContourTooClose(f"another pole lies near the contour around {what}")


def K_residues(curve: CurveSpec, points, rho: float | None = None, n: int = RESIDUE_NODES) -> dict:
    """Residues of K on the curve from contour integrals in the local parameters.

    Returns the residue at infinity, at each branch point, the total over the
    three points above each x_i, and the sum of all of them.
    """
    xs = np.array([p[0] for p in points], dtype=complex)
    roots = curve.roots
    poles = np.concatenate([roots, xs])
    sep = min(abs(p - q) for i, p in enumerate(poles) for q in poles[i + 1:])
    if rho is None:
        rho = 0.25 * sep
    e = _circle(n)

    res_b = []
    for a, b in enumerate(roots):
        # x = b + t^3, contour |t| = rho^(1/3)
        _check_clear(b, rho, np.delete(poles, a), f"b_{a + 1}")
        t = rho ** (1 / 3) * e
        vals = K_density(curve, points, b + t**3) * 3 * t**2
        res_b.append(complex(np.mean(vals * t)))
    res_x = []
    for i, xi in enumerate(xs):
        _check_clear(xi, rho, np.delete(poles, len(roots) + i), f"x_{i + 1}")
        z = rho * e
        vals = K_density(curve, points, xi + z)
        # the three points above x_i carry the same residue
        res_x.append(3 * complex(np.mean(vals * z)))
    # x = t^-3, dx = -3 t^-4 dt; contour well outside every pole
    R = 4 * max(1.0, float(np.max(np.abs(poles))))
    t = R ** (-1 / 3) * e
    vals = K_density(curve, points, t**-3) * (-3) * t**-4
    res_inf = complex(np.mean(vals * t))
    total = res_inf + sum(res_b) + sum(res_x)
    return {"infinity": res_inf, "branch": np.array(res_b), "points": np.array(res_x), "total": total}


# ----------------------------------------------------------------------------
# addition formula (n, m) = (3, 1) at v = omega_a


def addition_check(ctx: SigmaContext, points, a: int, u=None) -> tuple[complex, complex]:
    """Both sides of the (3, 1) addition formula at v = omega_a.

    LHS = prod_c sigma(u + zeta^c omega_a) / (sigma(u)^3 sigma_33(omega_a)^3),
    RHS = A_a^3 F_a^3 / prod_i (x_i - b_a)^4.
    """
    pd = ctx.pd
    curve = pd.cover
    if u is None:
        u = abel(pd, points)
    s3 = _sigma_checked(ctx, u) ** 3
    vs = np.stack([u + twisted_branch(pd, a, c) for c in range(3)])
    s33 = sigma_deriv(ctx, pd.branch[a], (3, 3))
    lhs = np.prod(sigma(ctx, vs)) / (s3 * s33**3)
    b = curve.roots[a]
    A = A_func(curve, a, points)
    F = F_func(curve, a, points)
    rhs = A**3 * F**3 / np.prod([(p[0] - b) ** 4 for p in points])
    return complex(lhs), complex(rhs)


__all__ = [
    "al_sigma",
    "al_product",
    "al_algebraic",
    "al_algebraic_cube",
    "al_period_residuals",
    "lift_divisor",
    "LiftedDivisor",
    "frobenius_sum",
    "frobenius_algebraic",
    "frobenius_sigma_form",
    "sigma33_constants",
    "relative_spread",
    "K_density",
    "K_residues",
    "addition_check",
]
