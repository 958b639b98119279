"""Sigma function built from theta with a half-integer characteristic.

sigma(u) = c * exp(-1/2 u^T eta1 omega1^-1 u) * theta[delta](1/2 omega1^-1 u; tau).

The characteristic is found by testing all half-integer characteristics
for vanishing on Abel images of two-point divisors, and ``c`` is fixed
by d sigma / d u_1 (0) = 1.  Derivatives are obtained by differentiating
the theta series term by term; a finite-difference version is kept as an
independent check.

With eta taken as the half-periods of the second-kind forms (the sign for
which the Legendre relation reads M J M^T = 2 pi i J), translation by a
lattice vector l = 2 omega1 l' + 2 omega2 l'' gives

    sigma(u + l) = sigma(u) * exp(-L(u + l/2, l)) * chi(l),
    L(u, v) = 2 u^T (eta1 v' + eta2 v''),
    chi(l) = exp(pi i (2 (a^T l' - b^T l'') + l'^T l'')).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CharacteristicAmbiguous, DegenerateNormalization
from .periods import PeriodData, abel
from .theta import DEFAULT_RADIUS, Characteristic, ThetaFunction

#: a characteristic "vanishes" on the test divisors below this relative size
VANISH_TOL = 1e-8


@dataclass
class SigmaContext:
    pd: PeriodData
    char: Characteristic
    theta: ThetaFunction
    c: complex
    N: np.ndarray  # eta1 omega1^-1 (symmetrised)
    A: np.ndarray  # 1/2 omega1^-1

    @property
    def genus(self) -> int:
        return self.pd.genus

    def L(self, u, v) -> complex:
        n = self.pd.lattice_coords(v)
        g = self.genus
        return complex(2 * np.asarray(u) @ (self.pd.eta1 @ n[:g] + self.pd.eta2 @ n[g:]))

    def chi(self, ell) -> complex:
        n = np.round(self.pd.lattice_coords(ell))
        g = self.genus
        l1, l2 = n[:g], n[g:]
        a = np.asarray(self.char.a)
        b = np.asarray(self.char.b)
        return complex(np.exp(1j * np.pi * (2 * (a @ l1 - b @ l2) + l1 @ l2)))


def _raw(pd: PeriodData, theta: ThetaFunction, N, A, u, order):
    """exp(-u^T N u / 2) theta(A u) and derivatives, as (values, log scale)."""
    u = np.atleast_2d(np.asarray(u, dtype=complex))
    z = u @ A.T
    val, grad, hess, ls = theta.sums(z, order)
    Nu = u @ N.T
    q = -0.5 * np.einsum("ki,ki->k", u, Nu)
    ls_c = ls + q.real
    ph = np.exp(1j * q.imag)
    out_v = val * ph
    out_g = out_h = None
    if order >= 1:
        dq = -Nu
        tg = grad @ A  # A^T grad
        out_g = ph[:, None] * (val[:, None] * dq + tg)
    if order >= 2:
        th = np.einsum("ji,kjl,lm->kim", A, hess, A)
        out_h = ph[:, None, None] * (
            val[:, None, None] * (dq[:, :, None] * dq[:, None, :] - N[None])
            + dq[:, :, None] * tg[:, None, :]
            + tg[:, :, None] * dq[:, None, :]
            + th
        )
    return out_v, out_g, out_h, ls_c


def probe_divisors(pd: PeriodData, count: int = 6) -> list[np.ndarray]:
    """Abel images of a few fixed divisors of degree g - 1 (deterministic)."""
    cover = pd.cover
    c0 = cover.center
    s = max(float(np.max(np.abs(cover.roots - c0))), 0.5)
    npts = pd.genus - 1
    images = []
    for k in range(count):
        pts = []
        for i in range(npts):
            th = (0.7 + 2.1 * k) if i % 2 == 0 else (2.3 + 1.3 * k)
            rad = (0.63 + 0.74 * i) * s
            x = c0 + rad * np.exp(1j * (th + 0.9 * i)) + (0.21j if i % 2 == 0 else -0.17)
            pts.append((x, cover.sheets_above(x)[(k + i) % cover.m]))
        images.append(abel(pd, pts))
    return images


def find_characteristic(pd: PeriodData, radius: int = DEFAULT_RADIUS):
    """The unique half-integer characteristic whose theta vanishes on W_{g-1}."""
    A = 0.5 * np.linalg.inv(pd.omega1)
    tau = pd.tau
    tau = 0.5 * (tau + tau.T)
    us = np.array(probe_divisors(pd)) if pd.genus > 1 else np.zeros((1, 1), dtype=complex)
    zs = us @ A.T
    rng = np.random.default_rng(12345)
    zr = rng.uniform(-0.5, 0.5, (8, pd.genus)) + rng.uniform(-0.5, 0.5, (8, pd.genus)) @ tau.T
    hits = []
    for ch in Characteristic.all_half(pd.genus):
        th = ThetaFunction(tau, ch, radius)
        ref = np.median(np.abs(th(zr)))
        if ref == 0:
            continue
        # vanishing at all test points and at the origin
        vals = np.abs(th(np.vstack([zs, np.zeros((1, pd.genus))])))
        if np.max(vals) < VANISH_TOL * ref:
            hits.append(ch)
    if len(hits) != 1:
        raise CharacteristicAmbiguous(f"{len(hits)} characteristics vanish on the test divisors")
    return hits[0]


def build_sigma(pd: PeriodData, radius: int = DEFAULT_RADIUS, char: Characteristic | None = None) -> SigmaContext:
    if char is None:
        char = find_characteristic(pd, radius)
    tau = pd.tau
    tau = 0.5 * (tau + tau.T)
    theta = ThetaFunction(tau, char, radius)
    N = pd.eta1 @ np.linalg.inv(pd.omega1)
    N = 0.5 * (N + N.T)
    A = 0.5 * np.linalg.inv(pd.omega1)
    _, g, _, ls = _raw(pd, theta, N, A, np.zeros(pd.genus), 1)
    d1 = g[0, 0] * np.exp(ls[0])
    if abs(d1) < 1e-300 or not np.isfinite(d1):
        raise DegenerateNormalization("first derivative of theta vanishes at the origin")
    return SigmaContext(pd, char, theta, 1.0 / d1, N, A)


def sigma_all(ctx: SigmaContext, u, order: int = 0):
    """sigma and (optionally) its gradient and Hessian at each row of u."""
    v, g, h, ls = _raw(ctx.pd, ctx.theta, ctx.N, ctx.A, u, order)
    s = ctx.c * np.exp(ls)
    return (v * s,
            None if g is None else g * s[:, None],
            None if h is None else h * s[:, None, None])


def sigma(ctx: SigmaContext, u):
    single = np.ndim(u) == 1
    v, _, _ = sigma_all(ctx, u, 0)
    return v[0] if single else v


def sigma_deriv(ctx: SigmaContext, u, index: tuple[int, ...]):
    """Partial derivative of sigma; ``index`` lists 1-based variables, e.g. (3, 3)."""
    single = np.ndim(u) == 1
    order = len(index)
    if order > 2:
        raise ValueError("only derivatives up to order two are available")
    v, g, h = sigma_all(ctx, u, order)
    if order == 0:
        out = v
    elif order == 1:
        out = g[:, index[0] - 1]
    else:
        out = h[:, index[0] - 1, index[1] - 1]
    return out[0] if single else out


def sigma_deriv_fd(ctx: SigmaContext, u, index: tuple[int, ...], step: float | None = None):
    """Central finite differences with one Richardson extrapolation step."""
    u = np.asarray(u, dtype=complex)
    if not index:
        return sigma(ctx, u)
    if step is None:
        step = 1e-3 * max(1.0, float(np.max(np.abs(ctx.pd.omega1))))
    i = index[0] - 1
    e = np.zeros_like(u)
    e[i] = 1.0

    def d(h):
        return (sigma_deriv_fd(ctx, u + h * e, index[1:], step)
                - sigma_deriv_fd(ctx, u - h * e, index[1:], step)) / (2 * h)

    return (4 * d(step / 2) - d(step)) / 3


def quasi_factor(ctx: SigmaContext, ell, u) -> complex:
    """sigma(u + l) / sigma(u) predicted for a lattice vector l."""
    ell = np.asarray(ell, dtype=complex)
    u = np.asarray(u, dtype=complex)
    return complex(np.exp(-ctx.L(u + 0.5 * ell, ell)) * ctx.chi(ell))


def twisted_quasi_factor(ctx: SigmaContext, ell, u) -> complex:
    """sigma(u + zeta l) / sigma(u) written through l itself.

    Equals exp(-L(zeta^2 u + l/2, l)) chi(l) because L and chi are
    invariant under the simultaneous action of zeta on both arguments.
    """
    pd = ctx.pd
    ell = np.asarray(ell, dtype=complex)
    return complex(np.exp(-ctx.L(pd.zeta(pd.zeta(u)) + 0.5 * ell, ell)) * ctx.chi(ell))


def taylor_coefficients(ctx: SigmaContext, direction, radius: float, n: int = 64):
    """Coefficients of s -> sigma(s * direction) from samples on |s| = radius."""
    s = radius * np.exp(2j * np.pi * np.arange(n) / n)
    vals = sigma(ctx, s[:, None] * np.asarray(direction, dtype=complex)[None, :])
    return np.fft.fft(vals) / n / radius ** np.arange(n)
