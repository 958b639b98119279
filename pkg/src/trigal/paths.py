"""Path planning in the x-plane and Gauss-Legendre quadrature along lifted paths.

Paths are polylines that keep a clearance from the branch points; where a
straight segment would pass too close, a circular detour around the
offending point is inserted.  Integrals of ``p(x)/y^j dx`` are evaluated
piece by piece with the continued y at the nodes; end points that sit on a
branch point or at infinity are handled in the local charts.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .curve import CyclicCover, Form, TracedPath, continue_along, principal_root, refine_polyline
from .errors import ContinuationFailure, QuadratureStall

#: Gauss-Legendre nodes per polyline piece
GL_NODES = 24
#: pieces are shorter than this fraction of their distance to the roots
PIECE_FRAC = 0.5


@lru_cache(maxsize=8)
def gauss_legendre(n: int):
    """Nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def arc(center: complex, radius: float, theta0: float, sweep: float, n_per_turn: int = 48):
    """Points on a circular arc, both ends included."""
    n = max(2, int(np.ceil(abs(sweep) / (2 * np.pi) * n_per_turn)) + 1)
    th = theta0 + np.linspace(0.0, sweep, n)
    return center + radius * np.exp(1j * th)


def plan_segment(cover: CyclicCover, p: complex, q: complex, clearance: float,
                 skip: Sequence[int] = ()) -> list[complex]:
    """Vertices of a path from p to q that detours around nearby branch points.

    A branch point closer than ``clearance`` to the segment is bypassed on
    an arc on the side of the segment away from it (left side when it lies
    exactly on the segment).  Indices in ``skip`` are ignored.
    """
    d = q - p
    L = abs(d)
    if L == 0:
        return [p]
    u = d / L
    n = 1j * u
    hits = []
    for j, b in enumerate(cover.roots):
        if j in skip:
            continue
        s = np.real((b - p) * np.conj(u))
        off = np.imag((b - p) * np.conj(u))
        rho = min(clearance, 0.5 * abs(b - p), 0.5 * abs(b - q))
        if abs(off) < rho and 0.0 < s < L:
            hits.append((s, j, off, rho))
    hits.sort()
    verts = [p]
    for s, j, off, rho in hits:
        b = cover.roots[j]
        w = np.sqrt(rho**2 - off**2)
        entry = p + (s - w) * u
        exit_ = p + (s + w) * u
        side = -np.sign(off) if off != 0 else 1.0
        th_e = np.angle(entry - b)
        th_x = np.angle(exit_ - b)
        th_side = np.angle(side * n)
        ccw = (th_x - th_e) % (2 * np.pi)
        if (th_side - th_e) % (2 * np.pi) < ccw:
            sweep = ccw
        else:
            sweep = ccw - 2 * np.pi
        verts.extend(arc(b, rho, th_e, sweep))
        verts.append(exit_)
    verts.append(q)
    return verts


def plan_path(cover: CyclicCover, waypoints: Sequence[complex], clearance: float,
              skip: Sequence[int] = ()) -> np.ndarray:
    verts: list[complex] = [waypoints[0]]
    for p, q in zip(waypoints[:-1], waypoints[1:]):
        verts.extend(plan_segment(cover, p, q, clearance, skip)[1:])
    return np.asarray(verts, dtype=complex)


def integrate_traced(cover: CyclicCover, path: TracedPath, forms: Sequence[Form],
                     n_nodes: int = GL_NODES) -> np.ndarray:
    """Integrals of the forms along a traced polyline (vector over forms).

    The polyline must already satisfy the piece-length rule; it is
    refined again here to be safe, re-continuing from the traced values.
    """
    xs = path.xs
    ys = path.ys
    fine = refine_polyline(cover, xs, PIECE_FRAC)
    if fine.size != xs.size:
        traced = continue_along(cover, fine, ys[0], refine=False)
        xs, ys = traced.xs, traced.ys
    s, w = gauss_legendre(n_nodes)
    x0 = xs[:-1, None]
    dx = (xs[1:] - xs[:-1])[:, None]
    nodes = x0 + dx * s[None, :]
    y = ys[:-1, None] * cover.ratio_root(np.broadcast_to(x0, nodes.shape), nodes)
    out = np.empty(len(forms), dtype=complex)
    for k, form in enumerate(forms):
        out[k] = np.sum(form.density(nodes, y) * dx * w[None, :])
    return out


def integrate_to_branch(cover: CyclicCover, a: int, x_e: complex, y_e: complex,
                        forms: Sequence[Form], n_nodes: int = 40) -> np.ndarray:
    """Integral from (x_e, y_e) straight into the branch point (b_a, 0).

    Substituting x = b_a + (x_e - b_a) s^m removes the endpoint singularity.
    """
    m = cover.m
    b = cover.roots[a]
    others = np.delete(cover.roots, a)
    if np.min(np.abs(others - b)) < 2 * abs(x_e - b):
        raise ContinuationFailure("end segment too long for the branch chart")
    s, w = gauss_legendre(n_nodes)
    out = np.zeros(len(forms), dtype=complex)
    # two panels in s keep the Legendre rule in its fast-converging regime
    for lo, hi in ((0.0, 0.5), (0.5, 1.0)):
        ss = lo + (hi - lo) * s
        ww = (hi - lo) * w
        x = b + (x_e - b) * ss**m
        q = (x[:, None] - others) / (x_e - others)
        y = y_e * ss * np.prod(principal_root(q, m), axis=-1)
        jac = m * (x_e - b) * ss ** (m - 1)
        for k, form in enumerate(forms):
            out[k] += np.sum(form.density(x, y) * jac * ww)
    return -out


def integrate_from_infinity(cover: CyclicCover, t_end: complex, forms: Sequence[Form],
                            n_nodes: int = 40) -> np.ndarray:
    """Integral from the point at infinity to the chart point with parameter ``t_end``.

    Uses x = t^-m, y = t^-d G(t)^(1/m); only forms holomorphic at infinity
    are allowed.
    """
    m, d = cover.m, cover.degree
    s, w = gauss_legendre(n_nodes)
    t = t_end * s
    g = np.prod(1.0 - cover.roots * t[:, None] ** m, axis=-1)
    if np.max(np.abs(g - 1.0)) > 0.5:
        raise QuadratureStall("anchor too close to the branch points for the infinity chart")
    out = np.empty(len(forms), dtype=complex)
    for k, form in enumerate(forms):
        c = np.asarray(form.coeffs, dtype=complex)
        deg = c.size - 1
        # p(t^-m) t^{dj} G^{-j/m} * (-m t^{-m-1}) with powers collected
        p = np.polynomial.polynomial.polyval(t**m, c[::-1])  # t^{m deg} p(t^-m)
        power = d * form.power - m - 1 - m * deg
        if power < 0:
            raise ValueError("form has a pole at infinity")
        dens = form.scale * p * t**power * principal_root(g, m) ** (-form.power) * (-m)
        out[k] = np.sum(dens * w) * t_end
    return out
