"""Cyclic covers y^m = f(x) and the trigonal genus-3 curve y^3 = (x-b1)...(x-b4).

The continuation engine here is shared by the trigonal and hyperelliptic
code: it only needs the cover degree ``m`` and the roots of ``f``.
Sheets are tracked by multiplying principal roots of ratios
``(x' - b_j)/(x - b_j)`` factor by factor, which stays on one branch as
long as each step is short compared with the distance to the roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BranchPointInput, ContinuationFailure

ZETA3 = np.exp(2j * np.pi / 3)

#: relative tolerance for deciding that two branch points coincide
DISTINCT_TOL = 1e-10
#: largest accepted relative jump of y over one continuation step
MAX_STEP_JUMP = 0.1
#: maximum number of step halvings before giving up
MAX_HALVINGS = 40


def principal_root(z, m: int):
    """Principal m-th root, argument in (-pi/m, pi/m]."""
    z = np.asarray(z, dtype=complex)
    return np.abs(z) ** (1.0 / m) * np.exp(1j * np.angle(z) / m)


@dataclass(frozen=True)
class Form:
    """A differential ``scale * p(x) / y**power * dx``.

    ``coeffs`` holds the polynomial ``p`` lowest degree first.
    """

    coeffs: tuple
    power: int
    scale: complex = 1.0

    def density(self, x, y):
        x = np.asarray(x, dtype=complex)
        p = np.polynomial.polynomial.polyval(x, np.asarray(self.coeffs, dtype=complex))
        return self.scale * p / np.asarray(y, dtype=complex) ** self.power


@dataclass(frozen=True)
class CyclicCover:
    """The curve y^m = prod_j (x - roots[j]) with distinct roots."""

    m: int
    roots: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.roots, dtype=complex).ravel()
        object.__setattr__(self, "roots", r)
        if r.size < 2:
            raise BranchPointInput("need at least two branch points")
        scale = max(1.0, float(np.max(np.abs(r))))
        for i in range(r.size):
            for j in range(i + 1, r.size):
                if abs(r[i] - r[j]) <= DISTINCT_TOL * scale:
                    raise BranchPointInput("branch points not distinct")

    @property
    def degree(self) -> int:
        return int(self.roots.size)

    @property
    def coeffs(self) -> np.ndarray:
        """Coefficients of f, lowest degree first (monic)."""
        return np.polynomial.polynomial.polyfromroots(self.roots)

    @property
    def center(self) -> complex:
        return complex(np.mean(self.roots))

    @property
    def min_spacing(self) -> float:
        r = self.roots
        d = np.abs(r[:, None] - r[None, :])
        return float(np.min(d[~np.eye(r.size, dtype=bool)]))

    def f(self, x):
        x = np.asarray(x, dtype=complex)
        return np.prod(x[..., None] - self.roots, axis=-1)

    def df(self, x):
        return np.polynomial.polynomial.polyval(
            np.asarray(x, dtype=complex), np.polynomial.polynomial.polyder(self.coeffs)
        )

    def dist_to_roots(self, x):
        x = np.asarray(x, dtype=complex)
        return np.min(np.abs(x[..., None] - self.roots), axis=-1)

    def sheets_above(self, x) -> np.ndarray:
        """All m values of y over x, principal root first then times zeta^k."""
        w = principal_root(self.f(x), self.m)
        z = np.exp(2j * np.pi * np.arange(self.m) / self.m)
        return w * z

    def on_curve(self, x, y, tol=1e-9) -> bool:
        fx = self.f(x)
        return abs(y**self.m - fx) <= tol * max(1.0, abs(fx))

    def ratio_root(self, x_from, x_to):
        """Product of principal roots of (x_to - b)/(x_from - b) over all roots b.

        Multiplying y(x_from) by this gives the continued y(x_to) when the
        straight step is short compared with the distance to every root.
        """
        x_from = np.asarray(x_from, dtype=complex)
        x_to = np.asarray(x_to, dtype=complex)
        q = (x_to[..., None] - self.roots) / (x_from[..., None] - self.roots)
        return np.prod(principal_root(q, self.m), axis=-1)


def snap_to_sheet(cover: CyclicCover, x, y_approx):
    """Return the exact root of y^m = f(x) closest to ``y_approx``."""
    cand = cover.sheets_above(x)
    return cand[np.argmin(np.abs(cand - y_approx))]


@dataclass
class TracedPath:
    """A polyline in the x-plane with the continued y and root phases.

    ``t_phases[:, a]`` holds the continued (x - b_a)^(1/m) along the path and
    ``windings[a]`` counts completed turns around b_a (last entry: around the
    centre of the branch points, used as the turn count at infinity).
    """

    xs: np.ndarray
    ys: np.ndarray
    t_phases: np.ndarray
    windings: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))

    @property
    def end(self):
        return complex(self.xs[-1]), complex(self.ys[-1])


def refine_polyline(cover: CyclicCover, xs: Sequence[complex], frac: float = 0.5,
                    max_len: float | None = None) -> np.ndarray:
    """Split segments until each is shorter than ``frac`` times its distance to the roots."""
    xs = np.asarray(xs, dtype=complex)
    out = [xs[0]]
    for a, b in zip(xs[:-1], xs[1:]):
        stack = [(a, b, 0)]
        pieces = []
        while stack:
            p, q, depth = stack.pop()
            d = _segment_root_distance(cover, p, q)
            length = abs(q - p)
            limit = frac * d
            if max_len is not None:
                limit = min(limit, max_len)
            if length <= limit or length == 0.0:
                pieces.append((p, q))
                continue
            if depth >= MAX_HALVINGS or d == 0.0:
                raise ContinuationFailure("path passes through a branch point")
            mid = 0.5 * (p + q)
            stack.append((mid, q, depth + 1))
            stack.append((p, mid, depth + 1))
        out.extend(q for _, q in pieces)
    return np.asarray(out, dtype=complex)


def _segment_root_distance(cover: CyclicCover, p, q) -> float:
    d = q - p
    r = cover.roots
    if d == 0:
        return float(np.min(np.abs(r - p)))
    s = np.clip(np.real((r - p) * np.conj(d)) / abs(d) ** 2, 0.0, 1.0)
    return float(np.min(np.abs(p + s * d - r)))


def continue_along(cover: CyclicCover, xs: Sequence[complex], y0: complex,
                   t0: Sequence[complex] | None = None, refine: bool = True) -> TracedPath:
    """Analytically continue y (and each (x-b_a)^(1/m)) along a polyline.

    Every step is checked against ``MAX_STEP_JUMP``; failing steps are
    halved up to ``MAX_HALVINGS`` times.  Values are snapped to the exact
    root at every vertex so rounding does not accumulate.
    """
    xs = np.asarray(xs, dtype=complex)
    if refine:
        xs = refine_polyline(cover, xs)
    r = cover.roots
    if abs(cover.f(xs[0])) == 0.0:
        raise ContinuationFailure("path starts on a branch point")
    if not cover.on_curve(xs[0], y0, tol=1e-6):
        raise ContinuationFailure("starting value is not on the curve")
    if t0 is None:
        t0 = principal_root(xs[0] - r, cover.m)
    out_x = [xs[0]]
    out_y = [complex(y0)]
    out_t = [np.asarray(t0, dtype=complex)]
    acc = np.zeros(r.size + 1)
    centre = cover.center
    for target in xs[1:]:
        pending = [target]
        depth = 0
        while pending:
            x_to = pending[-1]
            x_from = out_x[-1]
            step = cover.ratio_root(x_from, x_to)
            y_new = out_y[-1] * step
            if abs(y_new - out_y[-1]) > MAX_STEP_JUMP * abs(out_y[-1]) and abs(x_to - x_from) > 0:
                depth += 1
                if depth > MAX_HALVINGS:
                    raise ContinuationFailure("step control exhausted")
                pending.append(0.5 * (x_from + x_to))
                continue
            pending.pop()
            q = (x_to - r) / (x_from - r)
            acc[:-1] += np.angle(q)
            if x_to != centre and x_from != centre:
                acc[-1] += np.angle((x_to - centre) / (x_from - centre))
            out_t.append(out_t[-1] * principal_root(q, cover.m))
            out_y.append(complex(snap_to_sheet(cover, x_to, y_new)))
            out_x.append(x_to)
    windings = np.floor(acc / (2 * np.pi) + 1e-9).astype(int)
    return TracedPath(np.asarray(out_x), np.asarray(out_y), np.asarray(out_t), windings)


@dataclass(frozen=True)
class CurveSpec(CyclicCover):
    """The trigonal curve y^3 = f(x), f monic of degree 4 with distinct roots.

    ``lam[k]`` is the coefficient of x^k in f, so f = x^4 + lam3 x^3 + ... + lam0.
    """

    m: int = 3
    roots: np.ndarray = None

    @classmethod
    def from_branch_points(cls, points: Sequence[complex]) -> "CurveSpec":
        pts = np.asarray(points, dtype=complex).ravel()
        if pts.size != 4:
            raise BranchPointInput(f"expected 4 branch points, got {pts.size}")
        if not np.all(np.isfinite(pts)):
            raise BranchPointInput("branch points must be finite")
        return cls(m=3, roots=pts)

    @property
    def lam(self) -> np.ndarray:
        return self.coeffs

    @property
    def cube_roots_df(self) -> np.ndarray:
        """C_a: principal cube root of f'(b_a)."""
        return principal_root(self.df(self.roots), 3)


def holomorphic_forms(curve: CurveSpec) -> list[Form]:
    """dx/(3y^2), x dx/(3y^2), dx/(3y)."""
    return [Form((1.0,), 2, 1 / 3), Form((0.0, 1.0), 2, 1 / 3), Form((1.0,), 1, 1 / 3)]


def second_kind_forms(curve: CurveSpec) -> list[Form]:
    """Second-kind differentials ordered so that the j-th pairs with the j-th holomorphic form.

    Pole orders at infinity are 6, 3 and 2, matching the zero orders 4, 1
    and 0 of dx/(3y^2), x dx/(3y^2) and dx/(3y).
    """
    lam = curve.lam
    return [
        Form((lam[2], 3 * lam[3], 5.0), 1, 1 / 3),
        Form((0.0, 2.0), 1, 1 / 3),
        Form((0.0, 0.0, 1.0), 2, 1 / 3),
    ]


def zeta_form_characters() -> np.ndarray:
    """Multipliers of the holomorphic forms under (x, y) -> (x, zeta3 y)."""
    return np.array([ZETA3, ZETA3, ZETA3**2])


# Monomials x^i y^j, j < 3, ordered by pole order at infinity (3i + 4j).
def _build_ladder(n: int) -> list[tuple[int, int, int]]:
    items = []
    bound = 3 * n + 12
    for j in range(3):
        for i in range(bound):
            items.append((3 * i + 4 * j, i, j))
    items.sort()
    return [(i, j, w) for w, i, j in items[:n]]


_LADDER = _build_ladder(64)


def phi_monomial(n: int) -> tuple[int, int]:
    """Exponents (i, j) of the n-th monomial x^i y^j in the pole-order ladder."""
    if n < 0:
        raise ValueError("index must be non-negative")
    i, j, _ = _LADDER[n]
    return i, j


def pole_order(n: int) -> int:
    """Pole order at infinity of the n-th ladder monomial."""
    return _LADDER[n][2]


def phi_values(n: int, x, y) -> np.ndarray:
    """Values of the first n ladder monomials at (x, y); last axis indexes the monomial."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    return np.stack([x ** phi_monomial(k)[0] * y ** phi_monomial(k)[1] for k in range(n)], axis=-1)


def infinity_chart(cover: CyclicCover, t):
    """Point (x, y) with x = t^-m and y = t^-d G(t)^(1/m), G(t) = prod(1 - b t^m)."""
    t = np.asarray(t, dtype=complex)
    g = np.prod(1.0 - cover.roots * t[..., None] ** cover.m, axis=-1)
    return t ** (-cover.m), t ** (-cover.degree) * principal_root(g, cover.m)


def branch_chart(cover: CyclicCover, a: int, t, scale: complex):
    """Point near (b_a, 0) with x = b_a + t^m and y = t * (prod_{j!=a} (x - b_j))^(1/m).

    ``scale`` fixes the branch of the cube root of prod_{j != a}(b_a - b_j).
    """
    t = np.asarray(t, dtype=complex)
    b = cover.roots[a]
    x = b + t**cover.m
    others = np.delete(cover.roots, a)
    q = (x[..., None] - others) / (b - others)
    return x, t * scale * np.prod(principal_root(q, cover.m), axis=-1)
