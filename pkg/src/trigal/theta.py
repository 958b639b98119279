"""Riemann theta functions with half-integer characteristics.

theta[a; b](z; tau) = sum_n exp(pi i (n+a)^T tau (n+a) + 2 pi i (n+a)^T (z+b)).

The lattice sum runs over an ellipsoid centred at the peak of |term|, so
the number of terms does not grow with Im z.  The hot loop lives in a
compiled kernel when available, with a numpy fallback of identical
contract; ``BACKEND`` names the one in use.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import numpy as np

from .errors import TruncationInsufficient

if os.environ.get("TRIGAL_PURE_PYTHON"):
    from ._theta_py import theta_sums as _theta_sums

    BACKEND = "python"
else:
    try:
        from ._theta_kernel import theta_sums as _theta_sums

        BACKEND = "compiled"
    except ImportError:  # extension not built
        from ._theta_py import theta_sums as _theta_sums

        BACKEND = "python"

#: relative size of the smallest term kept in a lattice sum
THETA_TOL = 1e-18
#: default half-width of the summation box
DEFAULT_RADIUS = 12
#: the box is widened automatically up to this half-width
MAX_RADIUS = 40


@dataclass(frozen=True)
class Characteristic:
    """Half-integer characteristic; ``a`` shifts the summation index, ``b`` the argument."""

    a: tuple
    b: tuple

    @property
    def parity(self) -> int:
        """0 for even, 1 for odd."""
        return int(round(4 * float(np.dot(self.a, self.b)))) % 2

    @staticmethod
    def all_half(g: int) -> list["Characteristic"]:
        halves = list(itertools.product((0.0, 0.5), repeat=g))
        return [Characteristic(a, b) for a in halves for b in halves]


class ThetaFunction:
    """Theta with a fixed characteristic and period matrix."""

    def __init__(self, tau: np.ndarray, char: Characteristic, radius: int = DEFAULT_RADIUS,
                 tol: float = THETA_TOL, backend=None):
        self.tau = np.ascontiguousarray(np.asarray(tau, dtype=complex))
        self.char = char
        self.g = self.tau.shape[0]
        self.a = np.asarray(char.a, dtype=float)
        self.b = np.asarray(char.b, dtype=float)
        Y = 0.5 * (self.tau.imag + self.tau.imag.T)
        self.Y = Y
        self.Yinv = np.linalg.inv(Y)
        self._kernel = backend or _theta_sums
        self.offsets, self.radius = self._offsets(radius, tol)

    def _offsets(self, radius: int, tol: float):
        Y = self.Y
        # the centre may sit up to one unit away from the peak in each coordinate
        shift = np.sqrt(np.pi * np.sum(np.abs(Y)))
        reach = np.sqrt(np.log(1.0 / tol)) + shift
        half = np.ceil(reach * np.sqrt(np.diag(self.Yinv) / np.pi)).astype(int)
        need = int(np.max(half))
        if need > radius:
            if need > MAX_RADIUS:
                raise TruncationInsufficient(f"theta sum needs radius {need}")
            radius = need
        rng = [np.arange(-h, h + 1) for h in half]
        grid = np.array(np.meshgrid(*rng, indexing="ij")).reshape(self.g, -1).T
        keep = np.sqrt(np.pi * np.einsum("pi,ij,pj->p", grid, Y, grid)) <= reach
        return np.ascontiguousarray(grid[keep].astype(np.int64)), radius

    def sums(self, z, order: int = 0):
        """Scaled sums; see ``_theta_py.theta_sums``."""
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        zb = np.ascontiguousarray(z + self.b[None, :])
        peak = -(self.Yinv @ zb.imag.T).T
        centers = np.ascontiguousarray(np.round(peak - self.a[None, :]).astype(np.int64))
        return self._kernel(self.offsets, centers, self.a, self.tau, zb, order)

    def __call__(self, z):
        val, _, _, ls = self.sums(z, 0)
        out = val * np.exp(ls)
        return out if np.ndim(z) > 1 else out[0]

    def gradient(self, z):
        _, grad, _, ls = self.sums(z, 1)
        out = grad * np.exp(ls)[:, None]
        return out if np.ndim(z) > 1 else out[0]
