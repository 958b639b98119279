"""Construction of a symplectic homology basis for a cyclic cover.

Candidate cycles are figure-eight loops along the edges of a minimal
spanning tree of the branch points: out along one side of the edge, once
counter-clockwise around the far end, back along the other side, and once
clockwise around the near end.  The loop closes on the surface because
the two turns undo each other's sheet change.  One loop per edge and
starting sheet gives the candidate set.

Intersection numbers are counted from transversal crossings of the
projected polylines, keeping only crossings where both lifts sit on the
same sheet.  An exact integer reduction then produces a basis
(alpha_1..alpha_g, beta_1..beta_g) with alpha_i . beta_j = delta_ij.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .curve import CyclicCover, TracedPath, continue_along, principal_root
from .errors import BasisConstructionFailure
from .paths import arc


def spanning_tree(points: np.ndarray) -> list[tuple[int, int]]:
    """Edges of the Euclidean minimal spanning tree (Prim)."""
    n = len(points)
    inside = {0}
    edges = []
    while len(inside) < n:
        best = None
        for i in inside:
            for j in range(n):
                if j in inside:
                    continue
                d = abs(points[i] - points[j])
                if best is None or d < best[0]:
                    best = (d, i, j)
        _, i, j = best
        edges.append((i, j))
        inside.add(j)
    return edges


@dataclass
class Cycle:
    """A closed lifted polyline, labelled by tree edge and starting sheet."""

    edge: tuple[int, int]
    sheet: int
    path: TracedPath


def _figure_eight(cover: CyclicCover, a: int, b: int, radius: float, beta: float) -> np.ndarray:
    pa, pb = cover.roots[a], cover.roots[b]
    phi_ab = np.angle(pb - pa)
    phi_ba = np.angle(pa - pb)
    a_f = pa + radius * np.exp(1j * (phi_ab - beta))
    b_f = pb + radius * np.exp(1j * (phi_ba + beta))
    mid = 0.5 * (a_f + b_f)
    verts = [mid, b_f]
    verts.extend(arc(pb, radius, phi_ba + beta, 2 * np.pi - 2 * beta)[1:])
    a_b = pa + radius * np.exp(1j * (phi_ab + beta))
    verts.append(a_b)
    verts.extend(arc(pa, radius, phi_ab + beta, -(2 * np.pi + 2 * beta))[1:])
    verts.append(mid)
    return np.asarray(verts, dtype=complex)


def candidate_cycles(cover: CyclicCover) -> list[Cycle]:
    """Figure-eight loops for every tree edge and starting sheet.

    Each loop gets its own radius and offset so that no two projected
    polylines overlap.
    """
    edges = spanning_tree(cover.roots)
    m = cover.m
    r0 = 0.3 * cover.min_spacing
    total = len(edges) * m
    cycles = []
    idx = 0
    for a, b in edges:
        for k in range(m):
            frac = (idx + 1) / (total + 1)
            radius = r0 * (0.45 + 0.5 * frac)
            beta = 0.12 + 0.25 * frac
            verts = _figure_eight(cover, a, b, radius, beta)
            seg_mid = 0.5 * (cover.roots[a] + cover.roots[b])
            lead = continue_along(cover, [seg_mid, verts[0]], principal_root(cover.f(seg_mid), m))
            y0 = lead.ys[-1] * np.exp(2j * np.pi * k / m)
            path = continue_along(cover, verts, y0)
            if abs(path.ys[-1] - path.ys[0]) > 1e-8 * abs(path.ys[0]):
                raise BasisConstructionFailure("candidate loop does not close on the surface")
            cycles.append(Cycle((a, b), k, path))
            idx += 1
    return cycles


def intersection_number(cover: CyclicCover, c1: TracedPath, c2: TracedPath) -> int:
    """Algebraic intersection number of two closed lifted polylines."""
    p0, p1 = c1.xs[:-1], c1.xs[1:]
    q0, q1 = c2.xs[:-1], c2.xs[1:]
    d1 = p1 - p0
    d2 = q1 - q0
    # solve p0 + s d1 = q0 + t d2 for every pair of segments
    den = np.imag(np.conj(d1)[:, None] * d2[None, :])
    w = q0[None, :] - p0[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.imag(np.conj(w) * d2[None, :]) / den
        t = np.imag(np.conj(w) * d1[:, None]) / den
    hit = (den != 0) & (s >= 0) & (s < 1) & (t >= 0) & (t < 1)
    total = 0
    for i, j in zip(*np.nonzero(hit)):
        x = p0[i] + s[i, j] * d1[i]
        y1 = c1.ys[i] * cover.ratio_root(p0[i], x)
        y2 = c2.ys[j] * cover.ratio_root(q0[j], x)
        if abs(y1 - y2) < 0.5 * abs(y1) * abs(1 - np.exp(2j * np.pi / cover.m)):
            total += 1 if den[i, j] > 0 else -1
    return total


def intersection_matrix(cover: CyclicCover, cycles: list[Cycle]) -> np.ndarray:
    n = len(cycles)
    K = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            k = intersection_number(cover, cycles[i].path, cycles[j].path)
            K[i, j] = k
            K[j, i] = -k
    return K


def _int_det(M: np.ndarray) -> int:
    """Exact determinant of a small integer matrix (fraction-free elimination)."""
    A = [[int(v) for v in row] for row in M]
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def symplectic_reduction(K: np.ndarray) -> np.ndarray:
    """Integer unimodular S with S K S^T = [[0, I], [-I, 0]].

    ``K`` must be an antisymmetric unimodular integer matrix.  Rows of the
    result are coefficient vectors (alpha_1..alpha_g, beta_1..beta_g).
    """
    n = K.shape[0]
    if n % 2 or abs(_int_det(K)) != 1:
        raise BasisConstructionFailure("intersection form is not unimodular")
    Kp = [[int(v) for v in row] for row in K]

    def form(u, v):
        return sum(u[i] * Kp[i][j] * v[j] for i in range(n) for j in range(n) if Kp[i][j])

    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    alphas, betas = [], []
    while basis:
        e = basis.pop(0)
        rest = basis
        # unimodular moves on `rest` until exactly one vector pairs with e
        while True:
            vals = [form(e, v) for v in rest]
            nz = [i for i, v in enumerate(vals) if v != 0]
            if not nz:
                raise BasisConstructionFailure("degenerate intersection form")
            piv = min(nz, key=lambda i: abs(vals[i]))
            done = True
            for i in nz:
                if i == piv:
                    continue
                q = vals[i] // vals[piv]
                rest[i] = [x - q * y for x, y in zip(rest[i], rest[piv])]
                if vals[i] - q * vals[piv] != 0:
                    done = False
            if done:
                break
        if abs(vals[piv]) != 1:
            raise BasisConstructionFailure("intersection form is not unimodular")
        f = rest.pop(piv)
        if vals[piv] == -1:
            f = [-x for x in f]
        for i, v in enumerate(rest):
            p = form(f, v)
            if p:
                rest[i] = [x + p * y for x, y in zip(v, e)]
        alphas.append(e)
        betas.append(f)
        basis = rest
    S = np.array(alphas + betas, dtype=np.int64)
    g = n // 2
    J = np.block([[np.zeros((g, g), int), np.eye(g, dtype=int)], [-np.eye(g, dtype=int), np.zeros((g, g), int)]])
    if not np.array_equal(S @ K @ S.T, J):
        raise BasisConstructionFailure("symplectic reduction failed")
    return S


def choose_basis_subset(K: np.ndarray, genus: int) -> tuple[int, ...]:
    """Indices of 2g candidates whose intersection matrix is unimodular."""
    n = K.shape[0]
    for idx in itertools.combinations(range(n), 2 * genus):
        sub = K[np.ix_(idx, idx)]
        if abs(_int_det(sub)) == 1:
            return idx
    raise BasisConstructionFailure("no unimodular subset among candidate cycles")
