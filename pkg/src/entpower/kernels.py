"""Vectorized per-chunk sample generators for the Monte Carlo experiments.

Each kernel consumes one RngStream and produces per-sample value arrays
for a whole chunk at once; the scalar implementations in `measures` and
`metrics` are the reference these batch paths are tested against.
"""

from __future__ import annotations

import math

import numpy as np

from . import tolerances as tol
from .errors import InvariantViolation
from .gates import cnot, embed_gate
from .linalg import dagger
from .measures import _Y2
from .sampling import (RngStream, haar_product_pure_batch, haar_pure_states,
                       ppt_min_eigenvalue_batch, separable_mixed_2q_batch)

_LETTERS = "cdefgh"


def binary_entropy_batch(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, 1.0)
    q = 1.0 - p
    out = np.zeros_like(p)
    m = (p > 0.0) & (p < 1.0)
    out[m] = -(p[m] * np.log2(p[m]) + q[m] * np.log2(q[m]))
    return out


def eof_from_concurrence_batch(c: np.ndarray) -> np.ndarray:
    return binary_entropy_batch(
        (1.0 + np.sqrt(np.clip(1.0 - c * c, 0.0, 1.0))) / 2.0)


def eof_pure_2q_batch(psi: np.ndarray) -> np.ndarray:
    """EoF of two-qubit pure states via C = 2 |c00 c11 - c01 c10|."""
    c = 2.0 * np.abs(psi[:, 0] * psi[:, 3] - psi[:, 1] * psi[:, 2])
    return eof_from_concurrence_batch(np.clip(c, 0.0, 1.0))


def entropy_normalized_batch(psi: np.ndarray, n_a: int) -> np.ndarray:
    """S(rho_A) / log2(n_a) for pure states of an n_a x n_a system."""
    b = psi.shape[0]
    t = psi.reshape(b, n_a, n_a)
    rho_a = np.einsum("bij,bkj->bik", t, np.conj(t))
    w = np.clip(np.linalg.eigvalsh(rho_a), 0.0, 1.0)
    terms = np.where(w > 0.0, w * np.log2(np.where(w > 0.0, w, 1.0)), 0.0)
    return np.clip(-terms.sum(axis=1) / math.log2(n_a), 0.0, 1.0)


def concurrence_mixed_batch(rhos: np.ndarray) -> np.ndarray:
    """Wootters concurrence for a batch of 4x4 density matrices, through
    the Hermitian proxy sqrt(rho) rho_tilde sqrt(rho)."""
    w, v = np.linalg.eigh(rhos)
    w = np.clip(w, 0.0, None)
    s = (v * np.sqrt(w)[:, None, :]) @ dagger(v)
    rho_tilde = _Y2 @ np.conj(rhos) @ _Y2
    m = s @ rho_tilde @ s
    lam2 = np.linalg.eigvalsh(m)
    floor = tol.EIG_ZERO_REL_FLOOR * np.clip(lam2[:, -1:], 0.0, None)
    lam2 = np.where(lam2 < floor, 0.0, lam2)
    lam = np.sqrt(lam2)  # ascending
    c = lam[:, 3] - lam[:, 2] - lam[:, 1] - lam[:, 0]
    return np.clip(c, 0.0, 1.0)


def eof_mixed_batch(rhos: np.ndarray) -> np.ndarray:
    return eof_from_concurrence_batch(concurrence_mixed_batch(rhos))


def reduced_pair_batch(psi: np.ndarray, n_qubits: int, pair: tuple[int, int]) -> np.ndarray:
    """Reduced 4x4 density matrices of one qubit pair from a batch of
    n-qubit pure states (qubit 0 is the most significant index)."""
    b = psi.shape[0]
    t = psi.reshape((b,) + (2,) * n_qubits)
    ket = list(_LETTERS[:n_qubits])
    bra = [ch.upper() if q in pair else ch for q, ch in enumerate(ket)]
    out = "b" + "".join(ket[q] for q in pair) + "".join(bra[q] for q in pair)
    rho = np.einsum(f"b{''.join(ket)},b{''.join(bra)}->{out}", t, np.conj(t))
    return rho.reshape(b, 4, 4)


# ---------------------------------------------------------------------------
# experiment kernels: (rng, n, ...) -> dict of per-sample arrays / counters

def kernel_delta_e_gate(rng: RngStream, n: int, u: np.ndarray) -> dict:
    psi = haar_pure_states(4, n, rng)
    e0 = eof_pure_2q_batch(psi)
    e1 = eof_pure_2q_batch(psi @ u.T)
    return {"delta_e": e1 - e0}


def kernel_random_pair(rng: RngStream, n: int, n_a: int) -> dict:
    psi1 = haar_pure_states(n_a * n_a, n, rng)
    psi2 = haar_pure_states(n_a * n_a, n, rng)
    e1 = entropy_normalized_batch(psi1, n_a)
    e2 = entropy_normalized_batch(psi2, n_a)
    return {"delta_e": e2 - e1, "e_marginal": e1}


def kernel_entangling_power(rng: RngStream, n: int, u: np.ndarray) -> dict:
    psi = haar_product_pure_batch(2, 2, n, rng)
    return {"e": eof_pure_2q_batch(psi @ u.T)}


def kernel_dw(rng: RngStream, n: int) -> dict:
    psi = haar_pure_states(8, n, rng)
    t = psi.reshape(n, 2, 2, 2)
    rho_a = np.einsum("bijk,bmjk->bim", t, np.conj(t))
    det_a = (rho_a[:, 0, 0] * rho_a[:, 1, 1] - rho_a[:, 0, 1] * rho_a[:, 1, 0]).real
    c_ab = concurrence_mixed_batch(reduced_pair_batch(psi, 3, (0, 1)))
    c_ac = concurrence_mixed_batch(reduced_pair_batch(psi, 3, (0, 2)))
    dw = 4.0 * det_a - c_ab ** 2 - c_ac ** 2
    if dw.min() < -tol.DW_CLAMP_TOL or dw.max() > 1.0 + tol.DW_CLAMP_TOL:
        raise InvariantViolation(
            f"residual tangle outside [0, 1]: range [{dw.min()!r}, {dw.max()!r}]")
    return {"dw_raw": dw}


def kernel_multiqubit_delta_e(rng: RngStream, n: int, n_qubits: int) -> dict:
    u = embed_gate(cnot(), (0, 1), n_qubits)
    psi = haar_pure_states(2 ** n_qubits, n, rng)
    psi_after = psi @ u.T
    pairs = [("ab", (0, 1))]
    if n_qubits == 3:
        pairs += [("ac", (0, 2)), ("bc", (1, 2))]
    out = {}
    for label, pair in pairs:
        e0 = eof_mixed_batch(reduced_pair_batch(psi, n_qubits, pair))
        e1 = eof_mixed_batch(reduced_pair_batch(psi_after, n_qubits, pair))
        out[label] = e1 - e0
    return out


def _bures_batch(r1: np.ndarray, r2: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(r2)
    w = np.clip(w, 0.0, None)
    s2 = (v * np.sqrt(w)[:, None, :]) @ dagger(v)
    m = s2 @ r1 @ s2
    wm = np.clip(np.linalg.eigvalsh(m), 0.0, None)
    wm[wm < tol.BURES_EIG_ABS_FLOOR] = 0.0
    root_fid = np.sqrt(wm).sum(axis=1)
    d2 = 2.0 - 2.0 * root_fid
    d2[d2 < tol.DISTANCE_ZERO_SNAP] = 0.0
    return np.sqrt(np.clip(d2, 0.0, None))


def _hs_batch(r1: np.ndarray, r2: np.ndarray) -> np.ndarray:
    d = r1 - r2
    return np.sqrt(np.abs(np.einsum("bij,bji->b", d, d).real))


def kernel_cnot_mixed(rng: RngStream, n: int, metric: str) -> dict:
    """Distances travelled by separable states under CNOT, with the
    purity-conservation and in-ball PPT invariants enforced per sample."""
    rho, accepted, candidates = separable_mixed_2q_batch(n, rng)
    u = cnot()
    rho_after = np.einsum("ij,bjk,kl->bil", u, rho, dagger(u))
    purity_before = np.einsum("bij,bji->b", rho, rho).real
    purity_after = np.einsum("bij,bji->b", rho_after, rho_after).real
    drift = np.abs(purity_before - purity_after)
    if drift.max() > tol.PURITY_CONSERVATION_TOL:
        raise InvariantViolation(f"purity drift {drift.max():.3e} under CNOT")
    region1 = purity_before <= 1.0 / 3.0 + tol.SEPARABLE_BALL_TOL
    chunk_min_ppt = np.empty(0)
    if region1.any():
        min_ppt = float(ppt_min_eigenvalue_batch(rho_after[region1]).min())
        if min_ppt < -tol.PPT_TOL:
            raise InvariantViolation(
                f"in-ball state left the separable set: PPT min eig {min_ppt:.3e}")
        chunk_min_ppt = np.array([min_ppt])
    if metric == "bures":
        d = _bures_batch(rho, rho_after)
    elif metric == "hs":
        d = _hs_batch(rho, rho_after)
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return {
        "d": d,
        "region1": region1,
        "purity": purity_before,
        "chunk_drift_max": np.array([drift.max()]),
        "chunk_min_ppt_after": chunk_min_ppt,
        "accepted": accepted,
        "candidates": candidates,
    }
