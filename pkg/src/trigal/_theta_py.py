"""Pure numpy lattice sums for theta functions with characteristics.

Each z gets its own summation centre (the lattice point nearest the peak
of |term|), and the largest exponent is factored out so that huge or tiny
values come back as ``(scaled value, log scale)`` without overflow.
"""

from __future__ import annotations

import numpy as np


def theta_sums(offsets, centers, a, tau, zb, order):
    """Scaled theta sums and their z-derivatives.

    Parameters
    ----------
    offsets : (P, g) int array
        Lattice offsets added to every centre.
    centers : (K, g) int array
        Summation centre for each point.
    a : (g,) float array
        Characteristic shifting the summation index.
    tau : (g, g) complex array
    zb : (K, g) complex array
        Arguments already shifted by the second characteristic.
    order : int
        0 for values only, 1 adds gradients, 2 adds Hessians.

    Returns
    -------
    val : (K,) complex
    grad : (K, g) complex or None
    hess : (K, g, g) complex or None
    logscale : (K,) float
        True values are ``val * exp(logscale)`` (same for derivatives).
    """
    v = centers[:, None, :] + offsets[None, :, :] + a[None, None, :]  # (K, P, g)
    quad = np.einsum("kpi,ij,kpj->kp", v, tau, v)
    lin = np.einsum("kpi,ki->kp", v, zb)
    expo = 1j * np.pi * quad + 2j * np.pi * lin
    logscale = np.max(expo.real, axis=1)
    terms = np.exp(expo - logscale[:, None])
    val = terms.sum(axis=1)
    grad = hess = None
    if order >= 1:
        grad = 2j * np.pi * np.einsum("kp,kpi->ki", terms, v)
    if order >= 2:
        hess = -4 * np.pi**2 * np.einsum("kp,kpi,kpj->kij", terms, v, v)
    return val, grad, hess, logscale
