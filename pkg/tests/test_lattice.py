import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bhwalk.errors import BasisMismatchError, InvalidLatticeError, SymmetryUndefinedError
from bhwalk.lattice import (
    LatticeConfig,
    SymmetryOperator,
    TwoParticleState,
    apply_symmetry,
    boost_diagonal,
    build_basis,
    build_hamiltonian,
    number_state,
    translation_matrix,
)
from oracles import fock_hamiltonian, occupation_hamiltonian


def random_state(N, seed, complex_=True):
    rng = np.random.default_rng(seed)
    basis = build_basis(N)
    a = rng.normal(size=basis.dim) + (1j * rng.normal(size=basis.dim) if complex_ else 0)
    return TwoParticleState(basis, a / np.linalg.norm(a))


class TestBasis:
    def test_n4_order(self):
        b = build_basis(4)
        assert b.dim == 10
        assert b.entries[:5] == ((1, 1), (1, 2), (1, 3), (1, 4), (2, 2))

    @pytest.mark.parametrize("N, dim", [(3, 6), (4, 10), (30, 465)])
    def test_dimension(self, N, dim):
        assert build_basis(N).dim == dim

    def test_index_is_inverse_of_pair(self):
        b = build_basis(7)
        for k in range(b.dim):
            assert b.index(*b.pair(k)) == k

    def test_index_rejects_unordered_pair(self):
        with pytest.raises(KeyError):
            build_basis(5).index(3, 1)

    @pytest.mark.parametrize("N", [2, 1, 0, 3.5])
    def test_rejects_small_rings(self, N):
        with pytest.raises(InvalidLatticeError):
            build_basis(N)

    def test_config_validation(self):
        with pytest.raises(InvalidLatticeError):
            LatticeConfig(4, J=0.0)
        with pytest.raises(InvalidLatticeError):
            LatticeConfig(2)
        assert LatticeConfig(4, 2.0, -6.0).v == -3.0


class TestHamiltonian:
    def test_diagonal_entries(self):
        H = build_hamiltonian(LatticeConfig(4, 1.0, 8.0))
        b = H.basis
        assert H.elements[b.index(1, 1), b.index(1, 1)] == 8.0
        assert H.elements[b.index(1, 2), b.index(1, 2)] == 0.0

    def test_bosonic_factor_from_fock_oracle(self):
        H = build_hamiltonian(LatticeConfig(4, 1.0, 8.0))
        b = H.basis
        ref, _ = fock_hamiltonian(4, 1.0, 8.0)
        assert ref[b.index(1, 1), b.index(1, 2)] == pytest.approx(-np.sqrt(2))
        assert H.elements[b.index(1, 1), b.index(1, 2)] == pytest.approx(-np.sqrt(2), abs=1e-15)
        assert ref[b.index(1, 3), b.index(1, 2)] == pytest.approx(-1.0)
        assert H.elements[b.index(1, 3), b.index(1, 2)] == -1.0

    @pytest.mark.parametrize("N", [3, 4, 5, 6])
    @pytest.mark.parametrize("V", [0.0, 2.0, -8.0])
    def test_matches_tensor_product_fock_space(self, N, V):
        ref, pairs = fock_hamiltonian(N, 1.3, V)
        assert pairs == list(build_basis(N).entries)
        np.testing.assert_allclose(build_hamiltonian(LatticeConfig(N, 1.3, V)).elements, ref, atol=1e-13)

    @pytest.mark.parametrize("N", [7, 12, 30])
    def test_matches_occupation_oracle(self, N):
        ref = occupation_hamiltonian(N, 1.0, 8.0)
        np.testing.assert_allclose(build_hamiltonian(LatticeConfig(N, 1.0, 8.0)).elements, ref, atol=1e-13)

    @pytest.mark.parametrize("N", [3, 4, 9, 30])
    def test_structure(self, N):
        H = build_hamiltonian(LatticeConfig(N, 1.0, 5.0)).elements
        assert np.array_equal(H, H.T)
        off = H - np.diag(np.diag(H))
        assert (np.count_nonzero(off, axis=1) <= 4).all()
        vals = np.unique(np.round(off[off != 0], 12))
        assert set(vals) <= {round(-1.0, 12), round(-np.sqrt(2), 12)}

    @given(N=st.integers(3, 12), V=st.floats(-20, 20, allow_nan=False))
    @settings(max_examples=30, deadline=None)
    def test_sign_flip_changes_only_doublon_diagonal(self, N, V):
        Hp = build_hamiltonian(LatticeConfig(N, 1.0, V)).elements
        Hm = build_hamiltonian(LatticeConfig(N, 1.0, -V)).elements
        b = build_basis(N)
        expected = np.diag(np.where(b.is_double, 2 * V, 0.0))
        np.testing.assert_allclose(Hp - Hm, expected, atol=1e-12)

    @pytest.mark.parametrize("N", [3, 4, 5, 10, 17])
    def test_commutes_with_translation(self, N):
        H = build_hamiltonian(LatticeConfig(N, 1.0, 3.0)).elements
        T = translation_matrix(build_basis(N), 1)
        assert np.linalg.norm(H @ T - T @ H) < 1e-10

    @pytest.mark.parametrize("N", [4, 6, 10])
    def test_boost_maps_to_opposite_interaction(self, N):
        B = boost_diagonal(build_basis(N))
        Hp = build_hamiltonian(LatticeConfig(N, 1.0, 8.0)).elements
        Hm = build_hamiltonian(LatticeConfig(N, 1.0, -8.0)).elements
        BHB = B[:, None] * Hp * B[None, :]
        np.testing.assert_allclose(BHB, -Hm, atol=1e-14)
        # off-diagonal hopping changes sign, interaction does not
        np.testing.assert_allclose(np.diag(BHB), np.diag(Hp))
        np.testing.assert_allclose(np.linalg.eigvalsh(BHB), -np.linalg.eigvalsh(Hm)[::-1], atol=1e-10)


class TestSymmetryOperators:
    def test_translation_of_pair(self):
        out = apply_symmetry(SymmetryOperator.translation(30, 1), number_state(30, 15, 17))
        assert out.amplitude(16, 18) == 1.0

    def test_translation_wraps_and_resorts(self):
        out = apply_symmetry(SymmetryOperator.translation(5, 2), number_state(5, 1, 4))
        assert out.amplitude(1, 3) == 1.0

    def test_boost_parities(self):
        assert apply_symmetry(SymmetryOperator.boost(4), number_state(4, 1, 2)).amplitude(1, 2) == -1.0
        assert apply_symmetry(SymmetryOperator.boost(4), number_state(4, 1, 3)).amplitude(1, 3) == 1.0

    def test_boost_undefined_on_odd_ring(self):
        with pytest.raises(SymmetryUndefinedError):
            apply_symmetry(SymmetryOperator.boost(5), number_state(5, 1, 2))

    def test_time_reversal_conjugates(self):
        b = build_basis(4)
        a = np.zeros(b.dim, complex)
        a[b.index(1, 3)] = 1 / np.sqrt(2)
        a[b.index(2, 4)] = 1j / np.sqrt(2)
        out = apply_symmetry(SymmetryOperator.time_reversal(4), TwoParticleState(b, a))
        assert out.amplitude(2, 4) == pytest.approx(-1j / np.sqrt(2))
        assert out.amplitude(1, 3) == pytest.approx(1 / np.sqrt(2))

    def test_mismatched_ring(self):
        with pytest.raises(BasisMismatchError):
            apply_symmetry(SymmetryOperator.translation(5), number_state(4, 1, 2))

    @given(N=st.integers(3, 14), shift=st.integers(-20, 20), seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_translation_unitary(self, N, shift, seed):
        s = random_state(N, seed)
        out = apply_symmetry(SymmetryOperator.translation(N, shift), s)
        assert abs(np.linalg.norm(out.amplitudes) - 1) < 1e-12
        back = apply_symmetry(SymmetryOperator.translation(N, -shift), out)
        np.testing.assert_allclose(back.amplitudes, s.amplitudes, atol=1e-14)

    @given(N=st.sampled_from([4, 6, 8, 10]), seed=st.integers(0, 10_000))
    @settings(max_examples=20, deadline=None)
    def test_boost_unitary_and_idempotent(self, N, seed):
        s = random_state(N, seed)
        op = SymmetryOperator.boost(N)
        once = apply_symmetry(op, s)
        assert abs(np.linalg.norm(once.amplitudes) - 1) < 1e-12
        np.testing.assert_allclose(apply_symmetry(op, once).amplitudes, s.amplitudes, atol=1e-12)

    def test_state_must_be_normalized(self):
        with pytest.raises(ValueError):
            TwoParticleState(build_basis(4), np.ones(10))
        with pytest.raises(BasisMismatchError):
            TwoParticleState(build_basis(4), np.ones(3) / np.sqrt(3))
