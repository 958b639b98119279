"""Extended-precision sigma for probes that cancel below double precision.

sigma(0, 0, eps) is of size eps^5 / 20 while the terms of the theta series
are of size one, so at eps = 1e-3 the value sits below double-precision
rounding.  Here the periods of the basis cycles are recomputed with mpmath
along the same polylines (the double-precision continuation only selects
the sheet at each node), and theta, its gradient at the origin and sigma
are evaluated at the requested number of digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .curve import CurveSpec, continue_along, refine_polyline
from .homology import candidate_cycles
from .paths import PIECE_FRAC
from .periods import PeriodData
from .sigma import SigmaContext
from .theta import ThetaFunction

#: Gauss-Legendre nodes per piece at extended precision
MP_NODES = 40


@lru_cache(maxsize=8)
def gauss_legendre_mp(n: int, dps: int):
    """Nodes and weights on [0, 1] at ``dps`` digits, polished from the double ones."""
    x0, _ = np.polynomial.legendre.leggauss(n)
    with mpmath.workdps(dps + 10):
        nodes, weights = [], []
        for x in x0:
            x = mpmath.mpf(float(x))
            for _ in range(100):
                p = mpmath.legendre(n, x)
                dp = n * (x * p - mpmath.legendre(n - 1, x)) / (x * x - 1)
                step = p / dp
                x -= step
                if abs(step) < mpmath.mpf(10) ** (-(dps + 5)):
                    break
            p = mpmath.legendre(n, x)
            dp = n * (x * p - mpmath.legendre(n - 1, x)) / (x * x - 1)
            nodes.append((x + 1) / 2)
            weights.append(1 / ((1 - x * x) * dp * dp))
        return nodes, weights


def _mp_forms(roots):
    """Holomorphic then second-kind integrands as a function of (x, y)."""
    poly = [mpmath.mpc(1)]
    for b in roots:
        new = [mpmath.mpc(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] += c
            new[i] -= b * c
        poly = new
    lam = poly  # lowest degree first
    third = mpmath.mpf(1) / 3

    def dens(x, y):
        y2 = y * y
        return [
            third / y2,
            third * x / y2,
            third / y,
            third * (5 * x * x + 3 * lam[3] * x + lam[2]) / y,
            third * 2 * x / y,
            third * x * x / y2,
        ]

    return dens


def _cycle_integrals(curve: CurveSpec, path, dps: int, n: int = MP_NODES):
    xs, ys = path.xs, path.ys
    fine = refine_polyline(curve, xs, PIECE_FRAC)
    if fine.size != xs.size:
        tr = continue_along(curve, fine, ys[0], refine=False)
        xs, ys = tr.xs, tr.ys
    s, w = gauss_legendre_mp(n, dps)
    sd = np.array([float(v) for v in s])
    with mpmath.workdps(dps):
        roots = [mpmath.mpc(complex(b)) for b in curve.roots]
        dens = _mp_forms(roots)
        zeta = [mpmath.expjpi(mpmath.mpf(2 * k) / 3) for k in range(3)]
        out = [mpmath.mpc(0)] * 6
        for k in range(xs.size - 1):
            x0 = mpmath.mpc(complex(xs[k]))
            dx = mpmath.mpc(complex(xs[k + 1])) - x0
            nodes_d = xs[k] + (xs[k + 1] - xs[k]) * sd
            y_d = ys[k] * curve.ratio_root(np.full(sd.shape, xs[k]), nodes_d)
            for j in range(n):
                x = x0 + dx * s[j]
                fx = mpmath.fprod([x - b for b in roots])
                y0 = mpmath.root(fx, 3)
                y = min((y0 * z for z in zeta), key=lambda v: abs(complex(v) - y_d[j]))
                vals = dens(x, y)
                for i in range(6):
                    out[i] += vals[i] * dx * w[j]
        return out


@dataclass
class MPSigma:
    """Sigma at extended precision for one curve."""

    dps: int
    omega1: mpmath.matrix
    omega2: mpmath.matrix
    eta1: mpmath.matrix
    c: mpmath.mpc
    N: mpmath.matrix
    A: mpmath.matrix
    shifts: list  # (n + a) vectors
    consts: list  # pi i (n+a) tau (n+a) + 2 pi i (n+a) b

    def theta(self, z):
        with mpmath.workdps(self.dps):
            z = [mpmath.mpc(v) for v in z]
            tot = mpmath.mpc(0)
            two_pi_i = 2j * mpmath.pi
            for na, q in zip(self.shifts, self.consts):
                tot += mpmath.exp(q + two_pi_i * mpmath.fsum(na[i] * z[i] for i in range(3)))
            return tot

    def sigma(self, u):
        with mpmath.workdps(self.dps):
            u = mpmath.matrix([mpmath.mpmathify(v) for v in u])
            z = self.A * u
            quad = (u.T * self.N * u)[0]
            return self.c * mpmath.exp(-quad / 2) * self.theta([z[i] for i in range(3)])


def build_mp_sigma(ctx: SigmaContext, dps: int = 40) -> MPSigma:
    pd: PeriodData = ctx.pd
    curve = pd.cover
    cycles = candidate_cycles(curve)
    S = pd.basis
    used = [k for k in range(S.shape[1]) if np.any(S[:, k])]
    with mpmath.workdps(dps):
        P = {k: _cycle_integrals(curve, cycles[k].path, dps) for k in used}
        B = mpmath.matrix(6, 6)
        for i in range(6):
            for j in range(6):
                B[i, j] = mpmath.fsum(int(S[j, k]) * P[k][i] for k in used)
        om1 = B[0:3, 0:3] / 2
        om2 = B[0:3, 3:6] / 2
        et1 = B[3:6, 0:3] / 2
        inv = mpmath.inverse(om1)
        tau = inv * om2
        tau = (tau + tau.T) / 2
        N = et1 * inv
        N = (N + N.T) / 2
        A = inv / 2
        tol = 10.0 ** (-(dps + 5))
        grid = ThetaFunction(pd.tau, ctx.char, ctx.theta.radius, tol=max(tol, 1e-300)).offsets
        a = [mpmath.mpf(v) for v in ctx.char.a]
        b = [mpmath.mpf(v) for v in ctx.char.b]
        pi_i = 1j * mpmath.pi
        shifts, consts = [], []
        for nvec in grid:
            na = [int(nvec[i]) + a[i] for i in range(3)]
            quad = mpmath.fsum(na[i] * tau[i, j] * na[j] for i in range(3) for j in range(3))
            consts.append(pi_i * quad + 2 * pi_i * mpmath.fsum(na[i] * b[i] for i in range(3)))
            shifts.append(na)
        # d/du_1 sigma(0) = sum_k A_k1 d theta / d z_k (0), theta(0) = 0
        grad = [mpmath.fsum(2 * pi_i * na[k] * mpmath.exp(q) for na, q in zip(shifts, consts))
                for k in range(3)]
        d1 = mpmath.fsum(A[k, 0] * grad[k] for k in range(3))
        return MPSigma(dps, om1, om2, et1, 1 / d1, N, A, shifts, consts)


def sigma_u3_probe(mps: MPSigma, eps: float) -> complex:
    """sigma(0, 0, eps) / eps^5 at extended precision."""
    with mpmath.workdps(mps.dps):
        e = mpmath.mpf(eps)
        return complex(mps.sigma([0, 0, e]) / e**5)


__all__ = ["MPSigma", "build_mp_sigma", "sigma_u3_probe", "gauss_legendre_mp"]
