"""Entanglement quantifiers: entropy, concurrence, formation, tangle, residual.

All logarithms are base 2, so two-qubit quantities coincide with the
usual entanglement-of-formation conventions and normalized values live
in [0, 1]. Outputs are clamped to [0, 1]: roundoff-sized excursions are
folded back, anything larger raises, to separate noise from bugs.
"""

from __future__ import annotations

import math

import numpy as np

from . import tolerances as tol
from .errors import DimensionMismatch, OutOfRange
from .linalg import dagger, hermitian_eig, kron, matrix_sqrt_psd, partial_trace, projector
from .gates import PAULI_Y

_Y2 = kron(PAULI_Y, PAULI_Y).real  # sigma_y x sigma_y happens to be real


def clamp_unit(value: float, slack: float = tol.MEASURE_CLAMP_TOL) -> float:
    """Clamp a nominally-[0, 1] value; excursions beyond `slack` raise."""
    if value < -slack or value > 1.0 + slack:
        raise OutOfRange(f"value {value!r} outside [0, 1] beyond slack {slack}")
    return min(max(value, 0.0), 1.0)


def binary_entropy(p: float) -> float:
    """h(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-Tr rho log2 rho, evaluated on the eigenvalue spectrum (bits)."""
    w, _ = hermitian_eig(rho)
    w = np.clip(w, 0.0, 1.0)
    nz = w[w > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def pure_state_entanglement(psi: np.ndarray, dims: tuple[int, int]) -> float:
    """Normalized entanglement of a bipartite pure state.

    S(rho_A) / log2(N_A) for a system of two factors of equal dimension,
    so the value runs from 0 (product) to 1 (maximally entangled). The
    same number results from the B-side reduction.
    """
    na, nb = dims
    if na != nb:
        raise DimensionMismatch("both factors must have the same dimension")
    if psi.shape != (na * nb,):
        raise DimensionMismatch(f"state length {psi.shape} != {na * nb}")
    rho_a = partial_trace(projector(psi), dims, keep=(0,))
    return clamp_unit(von_neumann_entropy(rho_a) / math.log2(na))


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    C = max(0, l1 - l2 - l3 - l4) where the l_i are the decreasing
    square roots of the eigenvalues of rho @ rho_tilde and
    rho_tilde = (sy x sy) rho* (sy x sy), the conjugate taken in the
    computational product basis. The eigenvalues are obtained from the
    Hermitian proxy sqrt(rho) rho_tilde sqrt(rho), which shares the
    nonzero spectrum of rho @ rho_tilde.
    """
    if rho.shape != (4, 4):
        raise DimensionMismatch("concurrence needs a 4x4 density matrix")
    rho_tilde = _Y2 @ np.conj(rho) @ _Y2
    s = matrix_sqrt_psd(rho)
    w, _ = hermitian_eig(s @ rho_tilde @ s)
    # zero modes must stay exact zeros: sqrt(eps) noise in them biases the
    # subtraction of the three smaller roots by ~1e-8
    floor = tol.EIG_ZERO_REL_FLOOR * max(w[-1], 0.0)
    w = np.where(w < floor, 0.0, w)
    lam = np.sqrt(w)  # ascending
    return float(max(0.0, min(lam[3] - lam[2] - lam[1] - lam[0], 1.0)))


def concurrence_pure(psi: np.ndarray) -> float:
    """Concurrence of a two-qubit pure state: 2 |c00 c11 - c01 c10|."""
    if psi.shape != (4,):
        raise DimensionMismatch("expected a 4-component state vector")
    return float(min(2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2]), 1.0))


def eof_from_concurrence(c: float) -> float:
    """Entanglement of formation in bits from a concurrence value."""
    if not 0.0 <= c <= 1.0:
        raise OutOfRange(f"concurrence {c!r} outside [0, 1]")
    return binary_entropy((1.0 + math.sqrt(1.0 - c * c)) / 2.0)


def entanglement_of_formation(rho: np.ndarray) -> float:
    """EoF of a two-qubit density matrix via the concurrence closed form."""
    return clamp_unit(eof_from_concurrence(concurrence(rho)))


def tangle_one_vs_rest(rho_a: np.ndarray) -> float:
    """4 det(rho_A) for a single-qubit reduction: squared concurrence of
    that qubit with everything it was traced against."""
    if rho_a.shape != (2, 2):
        raise DimensionMismatch("expected a 2x2 density matrix")
    det = rho_a[0, 0] * rho_a[1, 1] - rho_a[0, 1] * rho_a[1, 0]
    if abs(det.imag) > 1e-12:
        raise OutOfRange(f"determinant has imaginary residue {det.imag:.3e}")
    return clamp_unit(4.0 * det.real)


def dw_residual(psi: np.ndarray) -> float:
    """Monogamy slack of a three-qubit pure state.

    4 det(rho_A) - C^2(rho_AB) - C^2(rho_AC), clamped to [0, 1]; the raw
    value may undershoot zero by accumulated roundoff, so the clamp slack
    is wider than for single measures.
    """
    if psi.shape != (8,):
        raise DimensionMismatch("expected an 8-component state vector")
    rho = projector(psi)
    dims = (2, 2, 2)
    rho_a = partial_trace(rho, dims, keep=(0,))
    c_ab = concurrence(partial_trace(rho, dims, keep=(0, 1)))
    c_ac = concurrence(partial_trace(rho, dims, keep=(0, 2)))
    det = (rho_a[0, 0] * rho_a[1, 1] - rho_a[0, 1] * rho_a[1, 0]).real
    raw = 4.0 * det - c_ab * c_ab - c_ac * c_ac
    return clamp_unit(raw, slack=tol.DW_CLAMP_TOL)
