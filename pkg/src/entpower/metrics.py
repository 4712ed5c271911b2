"""Distances on density matrices: Bures and Hilbert-Schmidt."""

from __future__ import annotations

import math

import numpy as np

from . import tolerances as tol
from .errors import DimensionMismatch
from .linalg import hermitian_eig, matrix_sqrt_psd, purity
from .sampling import RngStream, uniform_simplices


def bures_distance(r1: np.ndarray, r2: np.ndarray) -> float:
    """sqrt(2 - 2 Tr sqrt(sqrt(r2) r1 sqrt(r2))).

    The trace of the outer square root is taken directly on the
    eigenvalues of the Hermitian sandwich, so no third matrix root is
    materialized. Sandwich eigenvalues below an absolute floor (the
    operands are unit trace, so the scale is fixed) count as exact
    zeros, and a squared distance at roundoff level reports exactly 0;
    both guards stop sqrt(eps) noise from inflating the result.
    """
    if r1.shape != r2.shape:
        raise DimensionMismatch("states must share a dimension")
    s2 = matrix_sqrt_psd(r2)
    w, _ = hermitian_eig(s2 @ r1 @ s2)
    w = np.clip(w, 0.0, None)
    w[w < tol.BURES_EIG_ABS_FLOOR] = 0.0
    root_fidelity = float(np.sqrt(w).sum())
    d2 = 2.0 - 2.0 * root_fidelity
    if d2 < tol.DISTANCE_ZERO_SNAP:
        return 0.0
    return math.sqrt(d2)


def hs_distance(r1: np.ndarray, r2: np.ndarray) -> float:
    """sqrt(|Tr (r1 - r2)^2|; the absolute value guards roundoff, the
    argument is non-negative for Hermitian operands."""
    if r1.shape != r2.shape:
        raise DimensionMismatch("states must share a dimension")
    d = r1 - r2
    return math.sqrt(abs(float(np.einsum("ij,ji->", d, d).real)))


def separable_ball_contains(rho: np.ndarray) -> bool:
    """True iff the two-qubit state sits inside the maximal ball of
    guaranteed-separable states around I/4, i.e. Tr rho^2 <= 1/3."""
    if rho.shape != (4, 4):
        raise DimensionMismatch("expected a 4x4 density matrix")
    return purity(rho) <= 1.0 / 3.0 + tol.SEPARABLE_BALL_TOL


def bures_ball_radius(samples: int = 200_000, seed: int = 0) -> float:
    """Minimum Bures distance from I/4 to the purity = 1/3 shell, located
    numerically.

    Both distances to I/4 depend only on the eigenvalues, so the search
    runs over the eigenvalue simplex: each Lebesgue draw is mixed toward
    (1/4,...,1/4) onto the purity-1/3 shell and the Bures distance there
    is 2 - sum(sqrt(lambda_i)) under the square root.
    """
    rng = RngStream(seed, stream_id=0)
    lam = uniform_simplices(4, samples, rng)
    s = (lam ** 2).sum(axis=1)
    mask = s > 1.0 / 3.0
    lam = lam[mask]
    s = s[mask]
    t = np.sqrt((1.0 / 12.0) / (s - 0.25))
    shell = t[:, None] * lam + (1.0 - t)[:, None] / 4.0
    d = np.sqrt(2.0 - np.sqrt(shell).sum(axis=1))
    return float(d.min())
