"""Dense complex linear algebra on small matrices.

States, gates and density operators are plain complex numpy arrays;
subsystem structure is carried separately as a tuple of factor
dimensions whose product equals the matrix (or vector) dimension.
"""

from __future__ import annotations

import math

import numpy as np
from numpy import kron  # noqa: F401  (re-exported: standard Kronecker product)

from . import tolerances as tol
from .errors import DimensionMismatch, NotHermitian, NotPSD, OutOfRange


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(a.swapaxes(-1, -2))


def is_hermitian(a: np.ndarray, atol: float = tol.HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(a - dagger(a))) <= atol)


def is_unitary(a: np.ndarray, atol: float = tol.UNITARY_TOL) -> bool:
    eye = np.eye(a.shape[-1])
    return bool(np.max(np.abs(dagger(a) @ a - eye)) <= atol)


def is_psd(a: np.ndarray, atol: float = tol.PSD_TOL) -> bool:
    if not is_hermitian(a):
        return False
    return bool(np.linalg.eigvalsh(a)[0] >= -atol)


def hermitian_eig(h: np.ndarray, atol: float = tol.HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns (w, v) with eigenvalues w ascending and unitary v such that
    h = v @ diag(w) @ v^dagger. Raises NotHermitian if the input deviates
    from Hermiticity by more than `atol` in max-abs.
    """
    if not is_hermitian(h, atol):
        raise NotHermitian(f"max |h - h^dag| exceeds {atol}")
    w, v = np.linalg.eigh(h)
    return w, v


def matrix_sqrt_psd(a: np.ndarray) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues in (-PSD_TOL, 0) are treated as roundoff and clamped to
    zero; anything more negative raises NotPSD, signalling an upstream
    bug rather than floating-point noise. Eigenvalues below a relative
    floor are zeroed exactly, otherwise sqrt(eps)-sized noise leaks into
    the null space of rank-deficient inputs.
    """
    w, v = hermitian_eig(a)
    if w[0] < -tol.PSD_TOL:
        raise NotPSD(f"eigenvalue {w[0]:.3e} below -{tol.PSD_TOL}")
    w = np.clip(w, 0.0, None)
    w[w < tol.EIG_ZERO_REL_FLOOR * w[-1]] = 0.0
    return (v * np.sqrt(w)) @ dagger(v)


def _check_dims(dim: int, dims) -> tuple:
    dims = tuple(int(d) for d in dims)
    if math.prod(dims) != dim:
        raise DimensionMismatch(f"prod{dims} != {dim}")
    return dims


def partial_trace(rho: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out every tensor factor not listed in `keep`.

    `dims` is the ordered tuple of factor dimensions (factor 0 is the
    most significant index); `keep` is an iterable of factor positions
    to retain, in ascending order.
    """
    dims = _check_dims(rho.shape[0], dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise DimensionMismatch(f"invalid keep set {keep} for {n} factors")
    t = rho.reshape(dims + dims)
    traced = [q for q in range(n) if q not in keep]
    left = list(dims)
    for q in sorted(traced, reverse=True):
        t = np.trace(t, axis1=q, axis2=q + len(left))
        del left[q]
    d = math.prod(left)
    return t.reshape(d, d)


def partial_transpose(rho: np.ndarray, dims, subsystem: int) -> np.ndarray:
    """Transpose a single tensor factor of a density matrix."""
    dims = _check_dims(rho.shape[0], dims)
    n = len(dims)
    if not 0 <= subsystem < n:
        raise DimensionMismatch(f"subsystem {subsystem} out of range for {n} factors")
    t = rho.reshape(dims + dims)
    t = t.swapaxes(subsystem, subsystem + n)
    return t.reshape(rho.shape)


def purity(rho: np.ndarray) -> float:
    """Tr rho^2; equals 1 exactly for pure states."""
    if abs(np.trace(rho) - 1.0) > tol.UNIT_TRACE_TOL:
        raise OutOfRange(f"trace {np.trace(rho):.6f} is not 1 within {tol.UNIT_TRACE_TOL}")
    return float(np.einsum("ij,ji->", rho, rho).real)


def projector(psi: np.ndarray) -> np.ndarray:
    """|psi><psi| for a state vector."""
    return np.outer(psi, np.conj(psi))
