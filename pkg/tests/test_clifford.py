import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffdesigns import f2lin
from cliffdesigns.clifford import (
    CliffordElement,
    NotCliffordError,
    clifford_trace_check,
    compose_word,
    extract_action,
    generator_matrix,
    lift_symplectic,
    parse_word,
    projective_clifford_unitaries,
    projective_orbit,
    random_clifford,
    transvection_decomposition,
)
from cliffdesigns.f2lin import F2Matrix, fixed_space_dim, symplectic_form
from cliffdesigns.pauli import PauliLabel, pauli_matrix
from conftest import random_state


class TestGenerators:
    def test_hadamard_printed_matrix(self):
        want = (0.5 + 0.5j) * np.array([[1, 1], [1, -1]])
        assert np.allclose(generator_matrix(("H", 0), 1).matrix, want)

    def test_phase_printed_matrix(self):
        assert np.allclose(generator_matrix(("S", 0), 1).matrix, np.diag([1, -1j]))

    def test_cnot_printed_matrix(self):
        want = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], float)
        assert np.allclose(generator_matrix(("CX", 0, 1), 2).matrix, want)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            generator_matrix(("H", 2), 2)

    def test_unitarity_of_embeddings(self):
        for tok in (("H", 1), ("S", 0), ("CX", 2, 0)):
            u = generator_matrix(tok, 3).matrix
            assert np.allclose(u @ u.conj().T, np.eye(8), atol=1e-12)


class TestWords:
    def test_empty_word_is_identity(self):
        assert np.allclose(compose_word([], 2).matrix, np.eye(4))

    def test_hh_is_central_phase(self):
        assert np.allclose(compose_word("H0 H0", 1).matrix, 1j * np.eye(2))

    def test_hs_cubed_is_central(self):
        u = compose_word("H0 S0 H0 S0 H0 S0", 1).matrix
        assert np.allclose(u, u[0, 0] * np.eye(2), atol=1e-12)
        assert abs(abs(u[0, 0]) - 1) < 1e-12

    def test_parse_syntax(self):
        assert parse_word("H0 S1 CX0,2") == [("H", 0), ("S", 1), ("CX", 0, 2)]

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_word("Q3")


class TestExtractAction:
    def test_identity(self):
        F, signs = extract_action(CliffordElement(np.eye(4, dtype=complex), 2))
        assert F.rows == F2Matrix.identity(2).rows
        assert signs == (0, 0, 0, 0)

    def test_hadamard_swaps_z_and_x(self):
        F, _ = extract_action(generator_matrix(("H", 0), 1))
        assert F.rows == (0b10, 0b01)

    def test_pauli_conjugation_signs(self):
        for n in (1, 2):
            for b in range(4**n):
                u = CliffordElement(pauli_matrix(PauliLabel(n, b)), n)
                F, _ = extract_action(u)
                assert F.rows == F2Matrix.identity(n).rows
                for a in range(4**n):
                    assert u.sign_of(a) == symplectic_form(b, a, n)

    def test_non_clifford_rejected(self, rng):
        t = np.diag([1.0, np.exp(0.25j * np.pi)])  # pi/8-type gate
        with pytest.raises(NotCliffordError):
            extract_action(CliffordElement(t, 1))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2, 3]))
    def test_action_is_homomorphism(self, seed, n):
        rng = np.random.default_rng(seed)
        u = random_clifford(n, rng)
        v = random_clifford(n, rng)
        Fuv, _ = extract_action(u @ v)
        assert Fuv.rows == (u.symplectic @ v.symplectic).rows

    def test_cnot_action_matrix(self):
        # X on the control grows an X on the target; Z on the target grows
        # a Z on the control
        F, signs = extract_action(generator_matrix(("CX", 0, 1), 2))
        assert F.rows == (0b0101, 0b0010, 0b0100, 0b1010)
        assert signs == (0, 0, 0, 0)

    def test_hadamard_sign_on_y(self):
        u = generator_matrix(("H", 0), 1)
        assert u.symplectic.apply(0b11) == 0b11
        assert u.sign_of(0b11) == 1  # H flips the sign of the (1,1) Pauli

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2]))
    def test_sign_map_matches_dense_conjugation(self, seed, n):
        rng = np.random.default_rng(seed)
        u = random_clifford(n, rng)
        F, _ = u.action
        a = int(rng.integers(4**n))
        lhs = u.matrix @ pauli_matrix(PauliLabel(n, a)) @ u.matrix.conj().T
        rhs = (-1.0) ** u.sign_of(a) * pauli_matrix(PauliLabel(n, F.apply(a)))
        assert np.allclose(lhs, rhs, atol=1e-10)


class TestLift:
    @pytest.mark.parametrize("n", [1, 2])
    def test_roundtrip_exhaustive(self, n):
        for F in f2lin.enumerate_sp(n):
            u = lift_symplectic(F)
            got, _ = extract_action(u)
            assert got.rows == F.rows
            assert np.allclose(
                u.matrix @ u.matrix.conj().T, np.eye(u.d), atol=1e-10
            )

    def test_roundtrip_random_n3_n4(self, rng):
        for n in (3, 4):
            for _ in range(25):
                F = f2lin.random_symplectic(n, rng)
                got, _ = extract_action(lift_symplectic(F))
                assert got.rows == F.rows

    def test_identity_gives_empty_decomposition(self):
        assert transvection_decomposition(F2Matrix.identity(3)) == []

    def test_single_transvection_lift(self):
        for a in (0b01, 0b10, 0b11):
            t = f2lin.transvection_matrix(a, 1)
            q = (np.eye(2) + 1j * pauli_matrix(PauliLabel(1, a))) / np.sqrt(2)
            for b in range(1, 4):
                w = pauli_matrix(PauliLabel(1, b))
                img = q @ w @ q.conj().T
                target = pauli_matrix(PauliLabel(1, t.apply(b)))
                assert np.allclose(img, target, atol=1e-12) or np.allclose(
                    img, -target, atol=1e-12
                )

    def test_rejects_non_symplectic(self):
        with pytest.raises(ValueError):
            lift_symplectic(F2Matrix((0b11, 0b11), 1))

    @pytest.mark.parametrize("n", [1, 2])
    def test_entries_are_gaussian_rationals(self, n):
        # dyadic denominators: some 2^k clears all entries to Z[i]
        for F in f2lin.enumerate_sp(n):
            u = lift_symplectic(F).matrix
            ok = False
            for k in range(0, 13):
                scaled = u * (2**k)
                if np.allclose(scaled, np.round(scaled.real) + 1j * np.round(scaled.imag),
                               atol=1e-8):
                    ok = True
                    break
            assert ok


class TestRandomClifford:
    def test_normalizer_invariant(self, rng):
        for n in (1, 2, 3):
            u = random_clifford(n, rng)
            F, _ = u.action  # extraction itself asserts the +-Pauli images
            assert f2lin.is_symplectic(F)

    def test_reproducible(self):
        a = random_clifford(2, np.random.default_rng(11))
        b = random_clifford(2, np.random.default_rng(11))
        assert np.allclose(a.matrix, b.matrix)

    def test_f_marginal_uniform_n1(self):
        from scipy.stats import chi2

        rng = np.random.default_rng(123)
        counts = {m.rows: 0 for m in f2lin.enumerate_sp(1)}
        draws = 60000
        for _ in range(draws):
            counts[random_clifford(1, rng).symplectic.rows] += 1
        expect = draws / 6
        stat = sum((c - expect) ** 2 / expect for c in counts.values())
        assert stat < chi2.isf(0.001, df=5)


class TestTraceIdentities:
    def test_identity_element(self):
        rep = clifford_trace_check(CliffordElement(np.eye(2, dtype=complex), 1))
        assert rep.passed and rep.kernel_dim == 2 and rep.trace == 2

    def test_phase_gate(self):
        rep = clifford_trace_check(generator_matrix(("S", 0), 1))
        assert rep.passed and not rep.traceless
        assert rep.kernel_dim == 1
        assert abs(rep.trace - (1 - 1j)) < 1e-12

    def test_random_cliffords(self, rng):
        for n in (1, 2, 3):
            for _ in range(300):
                assert clifford_trace_check(random_clifford(n, rng)).passed

    def test_trace_count_identity(self, rng):
        # sum_a |tr(U W_a)|^2 = d^2 and the non-traceless count is
        # 2^{2n - dim ker(F-1)}
        for n in (1, 2):
            d = 2**n
            u = random_clifford(n, rng)
            traces = [
                np.trace(u.matrix @ pauli_matrix(PauliLabel(n, a))) for a in range(d * d)
            ]
            assert abs(sum(abs(t) ** 2 for t in traces) - d * d) < 1e-8
            nonzero = sum(1 for t in traces if abs(t) > 1e-8)
            assert nonzero == 2 ** (2 * n - fixed_space_dim(u.symplectic))


class TestOrbits:
    def test_stabilizer_orbit_is_octahedron(self):
        e0 = np.array([1, 0], dtype=complex)
        assert len(projective_orbit(e0, 1)) == 6

    def test_generic_orbit_size_24(self, rng):
        psi = random_state(2, rng)
        orb = projective_orbit(psi, 1)
        assert len(orb) == 24

    def test_orbit_size_divides_group(self, rng):
        for _ in range(5):
            psi = random_state(2, rng)
            t = rng.random()
            if t < 0.3:
                psi = np.array([1, 0], dtype=complex)
            assert 24 % len(projective_orbit(psi, 1)) == 0

    def test_group_size_n2(self):
        assert projective_clifford_unitaries(2).shape == (11520, 4, 4)

    @pytest.mark.slow
    def test_two_qubit_stabilizer_orbit_size(self):
        # the stabilizer-state count 2^n prod (2^i + 1) = 60 at n = 2
        e0 = np.zeros(4, dtype=complex)
        e0[0] = 1
        assert len(projective_orbit(e0, 2)) == 60

    def test_capacity(self):
        with pytest.raises(f2lin.CapacityError):
            projective_orbit(np.zeros(8, dtype=complex), 3)


class TestCsvExport:
    def test_matrix_csv(self, tmp_path):
        u = generator_matrix(("S", 0), 1)
        path = tmp_path / "u.csv"
        u.to_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "row,col,re,im"
        assert len(lines) == 5
        assert lines[4].startswith("1,1,")
