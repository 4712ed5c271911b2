"""The two-qubit gate zoo and register embeddings.

Convention used throughout the package: qubit 0 is the most significant
bit of a computational-basis index, so |q0 q1> maps to index 2*q0 + q1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import NotUnitary
from .linalg import dagger, is_unitary, kron

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)


def cnot() -> np.ndarray:
    """Controlled-NOT with qubit 0 as control."""
    return np.array(
        [[1, 0, 0, 0],
         [0, 1, 0, 0],
         [0, 0, 0, 1],
         [0, 0, 1, 0]], dtype=complex)


def swap() -> np.ndarray:
    """Exchange of the two qubits."""
    return np.array(
        [[1, 0, 0, 0],
         [0, 0, 1, 0],
         [0, 1, 0, 0],
         [0, 0, 0, 1]], dtype=complex)


def u_theta(theta: float) -> np.ndarray:
    """Block-diagonal rotation: identity on the control-0 block, a rotation
    by `theta` on the control-1 block."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [[1, 0, 0, 0],
         [0, 1, 0, 0],
         [0, 0, c, s],
         [0, 0, -s, c]], dtype=complex)


def canonical_gate(l1: float, l2: float, l3: float) -> np.ndarray:
    """Purely nonlocal two-qubit gate exp(-i sum_k l_k sigma_k x sigma_k).

    Each factor is evaluated in closed form, exp(-i l S) = cos(l) I - i sin(l) S,
    valid because (sigma_k x sigma_k)^2 = I; the three factors commute, so
    their product order is irrelevant.
    """
    u = I4.copy()
    for lam, s in zip((l1, l2, l3), (PAULI_X, PAULI_Y, PAULI_Z)):
        ss = kron(s, s)
        u = u @ (np.cos(lam) * I4 - 1j * np.sin(lam) * ss)
    return u


def check_lambda_domain(l1: float, l2: float, l3: float) -> bool:
    """True iff (l1, l2, l3) lies in the normalized nonlocal-parameter domain:
    l1 >= l2 >= |l3|, l1 and l2 in [0, pi/4], l3 in (-pi/4, pi/4]."""
    q = np.pi / 4
    return bool(
        l1 >= l2 >= abs(l3)
        and 0 <= l1 <= q
        and 0 <= l2 <= q
        and -q < l3 <= q
    )


def local_gate(v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    """Tensor product of two single-qubit unitaries."""
    for v in (v1, v2):
        if v.shape != (2, 2) or not is_unitary(v):
            raise NotUnitary("local factors must be 2x2 unitaries")
    return kron(v1, v2)


def embed_gate(u: np.ndarray, pair: tuple[int, int], n_qubits: int) -> np.ndarray:
    """Embed a two-qubit gate so it acts on qubits `pair` of an n-qubit register.

    Qubits outside the pair are untouched. Supports n_qubits in {2, 3, 4}.
    """
    i, j = pair
    if not (0 <= i < j < n_qubits):
        raise IndexError(f"pair {pair} invalid for {n_qubits} qubits")
    if n_qubits not in (2, 3, 4):
        raise IndexError("n_qubits must be 2, 3 or 4")
    n = 2 ** n_qubits
    out = np.zeros((n, n), dtype=complex)
    shift_i = n_qubits - 1 - i
    shift_j = n_qubits - 1 - j
    rest_mask = (n - 1) ^ (1 << shift_i) ^ (1 << shift_j)
    for r in range(n):
        gr = ((r >> shift_i) & 1) << 1 | ((r >> shift_j) & 1)
        for c in range(n):
            if (r & rest_mask) != (c & rest_mask):
                continue
            gc = ((c >> shift_i) & 1) << 1 | ((c >> shift_j) & 1)
            out[r, c] = u[gr, gc]
    return out


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, atol: float = tol.PHASE_EQUAL_TOL) -> bool:
    """Matrix equality modulo one global complex phase.

    The phase is fixed from the largest-magnitude entry of `b`.
    """
    return phase_residual(a, b) <= atol


def phase_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Max-abs difference between a and b after aligning global phases."""
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) == 0.0:
        return float(np.max(np.abs(a - b)))
    ratio = a[idx] / b[idx]
    mag = abs(ratio)
    phase = ratio / mag if mag > 0 else 1.0
    return float(np.max(np.abs(a - phase * b)))


def u_la() -> np.ndarray:
    """Left auxiliary local gate relating the pi/2 rotation to CNOT."""
    return kron(np.diag([1, np.exp(1j * np.pi / 2)]), np.diag([np.exp(-1j * np.pi / 2), 1]))


def u_lb() -> np.ndarray:
    """Right auxiliary local gate relating the pi/2 rotation to CNOT."""
    return kron(I2, np.diag([np.exp(1j * np.pi / 2), 1]))


def local_equivalence_residual() -> float:
    """Max-abs residual of U_LA @ CNOT @ U_LB against u_theta(pi/2), phase-aligned."""
    return phase_residual(u_la() @ cnot() @ u_lb(), u_theta(np.pi / 2))


def verify_local_equivalence() -> bool:
    """True iff the local construction reproduces u_theta(pi/2) up to a global phase."""
    return local_equivalence_residual() <= tol.PHASE_EQUAL_TOL


@dataclass(frozen=True)
class GateSpec:
    """A gate given either as an explicit 4x4 unitary or by canonical parameters.

    The CLI grammar is `cnot`, `utheta:<radians>` or `canon:<l1>,<l2>,<l3>`.
    """

    kind: str                      # "explicit" or "canonical"
    matrix: np.ndarray | None = None
    lambdas: tuple[float, float, float] | None = None
    label: str = ""

    @classmethod
    def explicit(cls, matrix: np.ndarray, label: str = "explicit") -> "GateSpec":
        if matrix.shape != (4, 4) or not is_unitary(matrix):
            raise NotUnitary("explicit gate must be a 4x4 unitary")
        return cls(kind="explicit", matrix=matrix, label=label)

    @classmethod
    def canonical(cls, l1: float, l2: float, l3: float) -> "GateSpec":
        return cls(kind="canonical", lambdas=(float(l1), float(l2), float(l3)),
                   label=f"canon:{l1:g},{l2:g},{l3:g}")

    @classmethod
    def parse(cls, text: str) -> "GateSpec":
        """Parse the CLI gate grammar; raises ValueError on malformed input."""
        text = text.strip()
        if text == "cnot":
            return cls(kind="explicit", matrix=cnot(), label="cnot")
        if text.startswith("utheta:"):
            theta = float(text.removeprefix("utheta:"))
            return cls(kind="explicit", matrix=u_theta(theta), label=text)
        if text.startswith("canon:"):
            parts = text.removeprefix("canon:").split(",")
            if len(parts) != 3:
                raise ValueError(f"expected canon:<l1>,<l2>,<l3>, got {text!r}")
            l1, l2, l3 = (float(p) for p in parts)
            return cls(kind="canonical", lambdas=(l1, l2, l3), label=text)
        raise ValueError(f"unknown gate spec {text!r}")

    def to_matrix(self) -> np.ndarray:
        if self.kind == "explicit":
            return self.matrix
        return canonical_gate(*self.lambdas)


def gate_conjugate(u: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """U rho U^dagger."""
    return u @ rho @ dagger(u)
