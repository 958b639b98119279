"""Period matrices, branch vectors and the Abel map of the trigonal curve.

Conventions: ``omega1[i, j] = 1/2 * integral of nu_i over alpha_j`` and
``omega2`` likewise over beta_j; ``eta1``/``eta2`` are the same for the
second-kind forms.  The lattice is generated by the columns of
``2*omega1`` and ``2*omega2``; real lattice coordinates (n', n'') of a
vector v satisfy v = 2 omega1 n' + 2 omega2 n''.  The base point of the
Abel map is the point at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curve import (
    ZETA3,
    CurveSpec,
    CyclicCover,
    Form,
    continue_along,
    holomorphic_forms,
    infinity_chart,
    principal_root,
    second_kind_forms,
    snap_to_sheet,
    zeta_form_characters,
)
from .errors import BasisConstructionFailure, ContinuationFailure, NonIntegralSolution
from .homology import (
    candidate_cycles,
    choose_basis_subset,
    intersection_matrix,
    symplectic_reduction,
)
from .paths import arc, integrate_from_infinity, integrate_to_branch, integrate_traced, plan_path

#: lattice coordinates closer than this to integers are accepted
INTEGRAL_ACCEPT = 1e-6
#: ... and farther than this are rejected outright
INTEGRAL_REJECT = 1e-4

@dataclass
class Anchor:
    """Finite base point of all paths, joined to infinity in the local chart."""

    x: complex
    y: complex
    t: complex
    tail: np.ndarray  # integrals of the holomorphic forms from infinity


@dataclass
class PeriodData:
    cover: CyclicCover
    omega1: np.ndarray
    omega2: np.ndarray
    eta1: np.ndarray
    eta2: np.ndarray
    basis: np.ndarray  # rows: integer coefficients over the candidate cycles
    intersections: np.ndarray  # candidate intersection matrix
    candidate_periods: np.ndarray  # (n_forms, n_candidates)
    anchor: Anchor
    holo: list
    clearance: float
    branch: np.ndarray = field(default=None)  # rows: omega_a
    zeta_char: np.ndarray = field(default=None)

    @property
    def genus(self) -> int:
        return self.omega1.shape[0]

    @property
    def tau(self) -> np.ndarray:
        return np.linalg.solve(self.omega1, self.omega2)

    @property
    def M(self) -> np.ndarray:
        return np.block([[2 * self.omega1, 2 * self.omega2], [2 * self.eta1, 2 * self.eta2]])

    @property
    def generators(self) -> np.ndarray:
        """Columns 2 omega1_j then 2 omega2_j, shape (g, 2g)."""
        return np.hstack([2 * self.omega1, 2 * self.omega2])

    def lattice_coords(self, v) -> np.ndarray:
        """Real coordinates of v (or of each column of v) in the lattice basis."""
        G = self.generators
        R = np.vstack([G.real, G.imag])
        v = np.asarray(v, dtype=complex)
        rhs = np.concatenate([v.real, v.imag], axis=0)
        return np.linalg.solve(R, rhs)

    def from_coords(self, n) -> np.ndarray:
        return self.generators @ np.asarray(n, dtype=float)

    def eta_image(self, v) -> np.ndarray:
        """The linear map v -> 2 eta1 v' + 2 eta2 v'' on real lattice coordinates."""
        n = self.lattice_coords(v)
        g = self.genus
        return 2 * self.eta1 @ n[:g] + 2 * self.eta2 @ n[g:]

    def legendre_residual(self) -> float:
        M = self.M
        J = _J(self.genus)
        return float(np.max(np.abs(M @ J @ M.T - 2j * np.pi * J)))

    def zeta(self, u) -> np.ndarray:
        """Action of (x, y) -> (x, zeta y) on C^g."""
        return self.zeta_char * np.asarray(u, dtype=complex)


def _J(g: int) -> np.ndarray:
    return np.block([[np.zeros((g, g)), -np.eye(g)], [np.eye(g), np.zeros((g, g))]])


def make_anchor(cover: CyclicCover, holo: list[Form]) -> Anchor:
    """Anchor x = centre + R on the principal sheet, R well outside the branch points."""
    spread = float(np.max(np.abs(cover.roots - cover.center)))
    R = max(10.0 * spread, 10.0 * float(np.max(np.abs(cover.roots))), 1.0)
    x = cover.center + R
    y = complex(principal_root(cover.f(x), cover.m))
    t0 = complex(principal_root(1.0 / x, cover.m))
    best = None
    for k in range(cover.m):
        t = t0 * np.exp(2j * np.pi * k / cover.m)
        _, yt = infinity_chart(cover, t)
        err = abs(yt - y)
        if best is None or err < best[0]:
            best = (err, t)
    if best[0] > 1e-8 * abs(y):
        raise ContinuationFailure("could not match the anchor with the infinity chart")
    t = best[1]
    return Anchor(x, y, t, integrate_from_infinity(cover, t, holo))


def build_period_data(cover: CyclicCover, holo: list[Form], second: list[Form]) -> PeriodData:
    """Periods over a constructed symplectic basis."""
    cycles = candidate_cycles(cover)
    K = intersection_matrix(cover, cycles)
    g = len(holo)
    subset = choose_basis_subset(K, g)
    S_sub = symplectic_reduction(K[np.ix_(subset, subset)])
    S = np.zeros((2 * g, len(cycles)), dtype=np.int64)
    S[:, list(subset)] = S_sub
    forms = list(holo) + list(second)
    P = np.stack([integrate_traced(cover, c.path, forms) for c in cycles], axis=1)
    B = P @ S.T  # (forms, basis cycles)
    omega1 = 0.5 * B[:g, :g]
    omega2 = 0.5 * B[:g, g:]
    eta1 = 0.5 * B[g:, :g]
    eta2 = 0.5 * B[g:, g:]
    anchor = make_anchor(cover, holo)
    pd = PeriodData(cover, omega1, omega2, eta1, eta2, S, K, P, anchor, holo,
                    clearance=0.25 * cover.min_spacing)
    tau = pd.tau
    if np.max(np.abs(tau - tau.T)) > 1e-6 * max(1.0, np.max(np.abs(tau))):
        raise BasisConstructionFailure("period matrix is not symmetric")
    if np.min(np.linalg.eigvalsh(0.5 * (tau.imag + tau.imag.T))) <= 0:
        raise BasisConstructionFailure("imaginary part of the period matrix is not positive")
    return pd


def trigonal_period_data(curve: CurveSpec) -> PeriodData:
    pd = build_period_data(curve, holomorphic_forms(curve), second_kind_forms(curve))
    pd.zeta_char = zeta_form_characters()
    pd.branch = np.stack([branch_vector(pd, a) for a in range(curve.degree)])
    return pd


# ----------------------------------------------------------------------------
# paths from the anchor


def path_to_x(pd: PeriodData, x: complex, skip=()) -> np.ndarray:
    return plan_path(pd.cover, [pd.anchor.x, x], pd.clearance, skip)


def branch_vector(pd: PeriodData, a: int) -> np.ndarray:
    """Integral of the holomorphic forms from infinity to (b_a, 0) along the canonical path."""
    cover = pd.cover
    b = cover.roots[a]
    verts = list(path_to_x(pd, b, skip=(a,)))
    rho_end = 0.2 * cover.min_spacing
    # cut the last leg at distance rho_end from b
    while len(verts) > 1 and abs(verts[-2] - b) <= rho_end:
        verts.pop(-2)
    prev = verts[-2]
    verts[-1] = b + rho_end * (prev - b) / abs(prev - b)
    traced = continue_along(cover, verts, pd.anchor.y)
    total = pd.anchor.tail + integrate_traced(cover, traced, pd.holo)
    x_e, y_e = traced.end
    total = total + integrate_to_branch(cover, a, x_e, y_e, pd.holo)
    return total


def sheet_fix_loop(cover: CyclicCover, x: complex, turns: int, clearance: float) -> list[complex]:
    """Vertices of an excursion from x around its nearest branch point ``turns`` times (ccw)."""
    j = int(np.argmin(np.abs(cover.roots - x)))
    b = cover.roots[j]
    r = min(clearance, 0.5 * abs(x - b))
    p = b + r * (x - b) / abs(x - b)
    th = np.angle(x - b)
    return [x, p] + list(arc(b, r, th, 2 * np.pi * turns)[1:]) + [x]


def trace_to_point(pd: PeriodData, x: complex, y: complex):
    """Lifted path from the anchor to (x, y); returns the traced path."""
    cover = pd.cover
    verts = list(path_to_x(pd, x))
    traced = continue_along(cover, verts, pd.anchor.y)
    y_end = traced.ys[-1]
    ratio = y / y_end
    k = int(np.round(np.angle(ratio) / (2 * np.pi / cover.m))) % cover.m
    if abs(ratio - np.exp(2j * np.pi * k / cover.m)) > 1e-6:
        raise ContinuationFailure("target point is not on the curve")
    if k:
        verts = verts + sheet_fix_loop(cover, x, k, pd.clearance)[1:]
        traced = continue_along(cover, verts, pd.anchor.y)
    return traced


def abel_point(pd: PeriodData, x: complex, y: complex) -> np.ndarray:
    traced = trace_to_point(pd, x, y)
    return pd.anchor.tail + integrate_traced(pd.cover, traced, pd.holo)


def abel(pd: PeriodData, points) -> np.ndarray:
    """Sum of Abel images of the points (x, y) of a divisor."""
    total = np.zeros(pd.genus, dtype=complex)
    for x, y in points:
        total = total + abel_point(pd, complex(x), complex(y))
    return total


# ----------------------------------------------------------------------------
# lattice helpers


def nearest_integer_coords(pd: PeriodData, v, what: str = "vector") -> np.ndarray:
    n = pd.lattice_coords(v)
    k = np.round(n)
    err = float(np.max(np.abs(n - k)))
    if err > INTEGRAL_REJECT:
        raise NonIntegralSolution(f"{what} has lattice coordinates off integers by {err:.2e}")
    return k.astype(np.int64)


def lattice_defect(pd: PeriodData, v) -> float:
    """Distance of the lattice coordinates of v from integers (max norm)."""
    n = pd.lattice_coords(v)
    return float(np.max(np.abs(n - np.round(n))))


def zeta_on_lattice(pd: PeriodData) -> np.ndarray:
    """Integer matrix Z with zeta(generators) = generators @ Z."""
    G = pd.generators
    Z = np.stack([pd.lattice_coords(pd.zeta(G[:, k])) for k in range(G.shape[1])], axis=1)
    k = np.round(Z)
    if np.max(np.abs(Z - k)) > INTEGRAL_REJECT:
        raise NonIntegralSolution("zeta action is not integral on the lattice")
    return k.astype(np.int64)


def h_matrices(pd: PeriodData, a: int, c: int) -> tuple[np.ndarray, np.ndarray]:
    """Integers (h', h'') with 3 zeta^c omega_a = 2 omega1 h' + 2 omega2 h''."""
    n = pd.lattice_coords(3 * twisted_branch(pd, a, c))
    k = np.round(n)
    if np.max(np.abs(n - k)) > INTEGRAL_ACCEPT:
        raise NonIntegralSolution("3 zeta^c omega_a is not a lattice vector")
    g = pd.genus
    return k[:g].astype(np.int64), k[g:].astype(np.int64)


def twisted_branch(pd: PeriodData, a: int, c: int) -> np.ndarray:
    v = pd.branch[a]
    for _ in range(c % 3):
        v = pd.zeta(v)
    return v


def phi_vector(pd: PeriodData, a: int, c: int) -> np.ndarray:
    """(2/3) sum_b (h'_b eta1 omega1^-1 omega1_b + h''_b eta2 omega2^-1 omega2_b)."""
    h1, h2 = h_matrices(pd, a, c)
    A1 = pd.eta1 @ np.linalg.solve(pd.omega1, pd.omega1)
    A2 = pd.eta2 @ np.linalg.solve(pd.omega2, pd.omega2)
    return (2.0 / 3.0) * (A1 @ h1 + A2 @ h2)


def al_lattice_generators(pd: PeriodData, a: int, c: int) -> np.ndarray:
    """Generators k'_b omega1_b, k''_b omega2_b of the periodicity lattice of al_a^(c).

    k' = 2 when h''_b = 0 and 6 otherwise; k'' likewise with h'_b.
    """
    h1, h2 = h_matrices(pd, a, c)
    k1 = np.where(h2 == 0, 2, 6)
    k2 = np.where(h1 == 0, 2, 6)
    return np.hstack([pd.omega1 * k1[None, :], pd.omega2 * k2[None, :]])


def snap_point(pd: PeriodData, x: complex, y: complex):
    return complex(x), complex(snap_to_sheet(pd.cover, x, y))


__all__ = [
    "PeriodData",
    "Anchor",
    "build_period_data",
    "trigonal_period_data",
    "branch_vector",
    "abel_point",
    "abel",
    "trace_to_point",
    "lattice_defect",
    "nearest_integer_coords",
    "zeta_on_lattice",
    "h_matrices",
    "twisted_branch",
    "phi_vector",
    "al_lattice_generators",
    "ZETA3",
]
