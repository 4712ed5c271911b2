import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from entpower import tolerances as tol
from entpower.errors import NotUnitary
from entpower.gates import (GateSpec, I4, PAULI_X, PAULI_Y, PAULI_Z,
                            canonical_gate, check_lambda_domain, cnot,
                            embed_gate, equal_up_to_phase, local_gate,
                            local_equivalence_residual, swap, u_la, u_lb,
                            u_theta, verify_local_equivalence)
from entpower.kernels import eof_pure_2q_batch
from entpower.linalg import is_unitary, kron, projector, purity
from entpower.measures import concurrence_pure, pure_state_entanglement
from entpower.sampling import RngStream, haar_pure_states

RNG = np.random.default_rng(77)


def random_su2():
    z = RNG.standard_normal((2, 2)) + 1j * RNG.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


class TestCnot:
    def test_truth_table(self):
        # |10> -> |11> with qubit 0 (control) the most significant bit
        out = cnot() @ np.eye(4)[:, 2]
        assert_allclose(out, np.eye(4)[:, 3])

    def test_involution(self):
        assert_allclose(cnot() @ cnot(), np.eye(4))

    def test_creates_bell_state(self):
        plus_zero = np.array([1, 0, 1, 0], dtype=complex) / np.sqrt(2)
        bell = cnot() @ plus_zero
        assert pure_state_entanglement(bell, (2, 2)) == pytest.approx(1.0, abs=1e-12)


class TestUTheta:
    def test_zero_is_identity(self):
        assert_allclose(u_theta(0.0), np.eye(4))

    def test_quarter_turn_block(self):
        u = u_theta(math.pi / 2)
        assert_allclose(u[2:, 2:], np.array([[0, 1], [-1, 0]]), atol=1e-15)
        assert_allclose(u[:2, :2], np.eye(2))

    def test_inverse(self):
        assert_allclose(u_theta(0.3) @ u_theta(-0.3), np.eye(4), atol=1e-15)


class TestCanonicalGate:
    def test_zero_triple_is_identity(self):
        assert_allclose(canonical_gate(0, 0, 0), np.eye(4))

    def test_quarter_xx_entangles_fully(self):
        psi = canonical_gate(math.pi / 4, 0, 0) @ np.eye(4)[:, 0]
        # closed form: cos(pi/4)|00> - i sin(pi/4)|11>
        assert_allclose(psi, [math.cos(math.pi / 4), 0, 0, -1j * math.sin(math.pi / 4)],
                        atol=1e-15)
        assert concurrence_pure(psi) == pytest.approx(1.0, abs=1e-12)

    def test_factor_matches_power_series(self):
        # 20-term series for exp(-i l sigma_k x sigma_k) as an independent oracle
        lam = 0.7391
        for s in (PAULI_X, PAULI_Y, PAULI_Z):
            ss = kron(s, s)
            series = np.zeros((4, 4), dtype=complex)
            term = np.eye(4, dtype=complex)
            for k in range(20):
                series += term
                term = term @ (-1j * lam * ss) / (k + 1)
            closed = math.cos(lam) * I4 - 1j * math.sin(lam) * ss
            assert np.max(np.abs(series - closed)) < 1e-12

    def test_unitary_and_commuting_factors(self):
        for _ in range(25):
            l1, l2, l3 = RNG.uniform(-math.pi, math.pi, 3)
            u = canonical_gate(l1, l2, l3)
            assert is_unitary(u, tol.GATE_UNITARY_TOL)
            # reversed factor order must give the same product
            rev = canonical_gate(0, 0, l3) @ canonical_gate(0, l2, 0) @ canonical_gate(l1, 0, 0)
            assert np.max(np.abs(u - rev)) < 1e-12

    def test_quarter_triple_is_swap_up_to_phase(self):
        assert equal_up_to_phase(canonical_gate(*(math.pi / 4,) * 3), swap(), 1e-12)


class TestLambdaDomain:
    def test_paper_figure_triples(self):
        q = math.pi / 4
        e = math.pi / 8
        assert check_lambda_domain(q, 0, 0)
        assert check_lambda_domain(q, e, 0)
        assert check_lambda_domain(q, e, math.pi / 16)
        assert check_lambda_domain(q, e, -e)
        assert check_lambda_domain(e, e, e)

    def test_violations(self):
        assert not check_lambda_domain(math.pi / 8, math.pi / 4, 0)   # ordering
        assert not check_lambda_domain(math.pi / 2, 0, 0)             # range
        assert not check_lambda_domain(math.pi / 4, 0.2, -0.3)        # |l3| above l2


class TestLocalGate:
    def test_identity(self):
        assert_allclose(local_gate(np.eye(2), np.eye(2)), np.eye(4))

    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitary):
            local_gate(np.array([[1, 1], [0, 1]], dtype=complex), np.eye(2))

    def test_never_changes_entanglement(self):
        v = local_gate(random_su2(), random_su2())
        psi = haar_pure_states(4, 10_000, RngStream(5))
        before = eof_pure_2q_batch(psi)
        after = eof_pure_2q_batch(psi @ v.T)
        assert np.max(np.abs(after - before)) < 1e-10


class TestEmbedGate:
    def test_two_qubit_identity_embedding(self):
        u = canonical_gate(0.3, 0.2, 0.1)
        assert_allclose(embed_gate(u, (0, 1), 2), u)

    def test_cnot_on_first_pair_of_three(self):
        big = embed_gate(cnot(), (0, 1), 3)
        assert_allclose(big @ np.eye(8)[:, 0b101], np.eye(8)[:, 0b111])
        assert_allclose(big @ np.eye(8)[:, 0b100], np.eye(8)[:, 0b110])
        assert_allclose(big @ np.eye(8)[:, 0b001], np.eye(8)[:, 0b001])

    def test_commutes_with_spectator_unitary(self):
        u = embed_gate(canonical_gate(0.4, 0.3, -0.1), (0, 1), 3)
        w = kron(np.eye(4), random_su2())
        assert np.max(np.abs(u @ w - w @ u)) < 1e-12

    def test_embedding_on_nonadjacent_pair(self):
        big = embed_gate(cnot(), (0, 2), 3)
        # control = qubit 0, target = qubit 2: |100> -> |101>
        assert_allclose(big @ np.eye(8)[:, 0b100], np.eye(8)[:, 0b101])
        assert_allclose(big @ np.eye(8)[:, 0b110], np.eye(8)[:, 0b111])

    def test_preserves_norm_and_purity(self):
        big = embed_gate(cnot(), (1, 2), 4)
        assert is_unitary(big, 1e-12)
        psi = haar_pure_states(16, 1, RngStream(9))[0]
        out = big @ psi
        assert abs(np.linalg.norm(out) - 1) < 1e-12
        assert abs(purity(projector(out)) - 1) < 1e-12

    def test_bad_pair(self):
        with pytest.raises(IndexError):
            embed_gate(cnot(), (1, 1), 3)
        with pytest.raises(IndexError):
            embed_gate(cnot(), (0, 3), 3)


class TestLocalEquivalence:
    def test_holds_exactly(self):
        assert verify_local_equivalence()
        assert local_equivalence_residual() < tol.PHASE_EQUAL_TOL

    def test_broken_construction_fails(self):
        residual = np.max(np.abs(cnot() @ u_lb() - u_theta(math.pi / 2)))
        assert residual > 0.1  # dropping U_LA must destroy the relation

    def test_aux_gates_are_local(self):
        assert is_unitary(u_la(), 1e-12)
        assert is_unitary(u_lb(), 1e-12)


class TestPhaseEquality:
    def test_global_phase_ignored(self):
        u = canonical_gate(0.2, 0.1, 0.05)
        assert equal_up_to_phase(np.exp(1j * 0.77) * u, u)

    def test_distinct_gates_differ(self):
        assert not equal_up_to_phase(cnot(), swap())


class TestGateSpec:
    def test_parse_cnot(self):
        assert_allclose(GateSpec.parse("cnot").to_matrix(), cnot())

    def test_parse_utheta(self):
        assert_allclose(GateSpec.parse("utheta:1.5707963267948966").to_matrix(),
                        u_theta(math.pi / 2))

    def test_parse_canon(self):
        spec = GateSpec.parse("canon:0.785398163397448,0,0")
        assert spec.lambdas is not None
        assert_allclose(spec.to_matrix(), canonical_gate(math.pi / 4, 0, 0), atol=1e-12)

    def test_parse_rejects_garbage(self):
        for bad in ("nope", "canon:1,2", "utheta:abc", "canon:1,2,3,4"):
            with pytest.raises(ValueError):
                GateSpec.parse(bad)

    def test_explicit_requires_unitary(self):
        with pytest.raises(NotUnitary):
            GateSpec.explicit(np.ones((4, 4), dtype=complex))
