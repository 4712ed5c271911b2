"""Seeded random generation of states, unitaries and eigenvalue simplices.

Every sampler draws from an RngStream. Two streams constructed with the
same (seed, stream_id) replay the same draw sequence, on any machine and
regardless of what other streams are doing; parallel experiment workers
therefore get reproducibility from substream assignment, never locking.
"""

from __future__ import annotations

import numpy as np

from . import tolerances as tol
from .linalg import dagger

_MASK64 = (1 << 64) - 1


class RngStream:
    """A named random substream: (seed, stream_id) fixes the sequence.

    The underlying generator is derived by hashing both identifiers
    through numpy's SeedSequence, so distinct stream ids under one seed
    give statistically independent streams without coordination.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed) & _MASK64
        self.stream_id = int(stream_id) & _MASK64
        self.gen = np.random.default_rng(
            np.random.SeedSequence(entropy=(self.seed, self.stream_id)))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def haar_pure_states(dim: int, n: int, rng: RngStream) -> np.ndarray:
    """n unit vectors drawn from the unitarily invariant measure, shape (n, dim).

    Each vector is dim independent standard complex Gaussians, normalized.
    """
    z = rng.gen.standard_normal((n, dim)) + 1j * rng.gen.standard_normal((n, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_pure_state(dim: int, rng: RngStream) -> np.ndarray:
    if dim < 2:
        raise ValueError("dim must be >= 2")
    return haar_pure_states(dim, 1, rng)[0]


def haar_unitaries(dim: int, n: int, rng: RngStream) -> np.ndarray:
    """n Haar-distributed unitaries, shape (n, dim, dim).

    Complex Ginibre matrix, QR factorization, then each column of Q is
    multiplied by the phase of the matching R diagonal entry. Without
    that phase fix the QR map does not produce the invariant measure.
    """
    z = rng.gen.standard_normal((n, dim, dim)) + 1j * rng.gen.standard_normal((n, dim, dim))
    q, r = np.linalg.qr(z)
    d = np.einsum("bii->bi", r)
    return q * (d / np.abs(d))[:, None, :]


def haar_unitary(dim: int, rng: RngStream) -> np.ndarray:
    if dim < 2:
        raise ValueError("dim must be >= 2")
    return haar_unitaries(dim, 1, rng)[0]


def uniform_simplices(n: int, count: int, rng: RngStream) -> np.ndarray:
    """count points uniform on the (n-1)-simplex, shape (count, n).

    Sorted-uniform spacings: the gaps between order statistics of n-1
    uniforms on [0, 1] are Lebesgue-uniform on the simplex.
    """
    if n == 1:
        return np.ones((count, 1))
    u = np.sort(rng.gen.random((count, n - 1)), axis=1)
    bounds = np.concatenate(
        [np.zeros((count, 1)), u, np.ones((count, 1))], axis=1)
    return np.diff(bounds, axis=1)


def uniform_simplex(n: int, rng: RngStream) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    return uniform_simplices(n, 1, rng)[0]


def product_measure_mixed_batch(dim: int, n: int, rng: RngStream) -> np.ndarray:
    """n mixed states rho = U diag(lambda) U^dag with U Haar and lambda
    Lebesgue-uniform on the simplex, shape (n, dim, dim)."""
    u = haar_unitaries(dim, n, rng)
    lam = uniform_simplices(dim, n, rng)
    return (u * lam[:, None, :]) @ dagger(u)


def product_measure_mixed(dim: int, rng: RngStream) -> np.ndarray:
    if dim < 2:
        raise ValueError("dim must be >= 2")
    return product_measure_mixed_batch(dim, 1, rng)[0]


def haar_product_pure_batch(dim_a: int, dim_b: int, n: int, rng: RngStream) -> np.ndarray:
    """n product states |a> x |b> with independently Haar factors, shape (n, dim_a*dim_b)."""
    a = haar_pure_states(dim_a, n, rng)
    b = haar_pure_states(dim_b, n, rng)
    return np.einsum("bi,bj->bij", a, b).reshape(n, dim_a * dim_b)


def haar_product_pure(dim_a: int, dim_b: int, rng: RngStream) -> np.ndarray:
    if dim_a < 2 or dim_b < 2:
        raise ValueError("factor dims must be >= 2")
    return haar_product_pure_batch(dim_a, dim_b, 1, rng)[0]


def ppt_min_eigenvalue_batch(rhos: np.ndarray) -> np.ndarray:
    """Smallest eigenvalue of the partial transpose of each 4x4 state."""
    b = rhos.shape[0]
    t = rhos.reshape(b, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(b, 4, 4)
    return np.linalg.eigvalsh(t)[:, 0]


def separable_mixed_2q_batch(n: int, rng: RngStream) -> tuple[np.ndarray, int, int]:
    """n separable two-qubit mixed states, with rejection bookkeeping.

    Rejection sampling: candidates come from the product measure and are
    accepted iff their partial transpose is positive, which is an exact
    separability test in 2x2 dimensions. The accepted states follow the
    product measure conditioned on separability.

    Returns (states, accepted, drawn); accepted / drawn is the unbiased
    estimator of the measure of the separable set (`accepted` counts the
    last block in full, even though the output is truncated to n).
    """
    out = []
    got = 0
    drawn = 0
    while got < n:
        block = min(8192, max(64, 2 * (n - got)))
        cand = product_measure_mixed_batch(4, block, rng)
        keep = ppt_min_eigenvalue_batch(cand) >= -tol.PPT_TOL
        drawn += block
        accepted = cand[keep]
        out.append(accepted)
        got += accepted.shape[0]
    return np.concatenate(out, axis=0)[:n], got, drawn


def separable_mixed_2q(rng: RngStream) -> np.ndarray:
    states, _, _ = separable_mixed_2q_batch(1, rng)
    return states[0]
