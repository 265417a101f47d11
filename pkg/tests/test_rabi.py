import numpy as np
import pytest
from pytest import approx

from electrolum.hilbert import SystemParams, build_space, number_electron, parity
from electrolum.rabi import (
    SectorMixingError,
    dressed_basis,
    ground_photon_number,
    hamiltonian,
    jc_reference,
)


def basis_for(eta, n_max=8, **kwargs):
    space = build_space(n_max)
    params = SystemParams.from_eta(eta, **kwargs)
    return dressed_basis(hamiltonian(params, space), space), space


class TestHamiltonian:
    def test_uncoupled_diagonal(self):
        space = build_space(4)
        params = SystemParams(rabi=0.0, omega_e=1.3)
        h = hamiltonian(params, space)
        off = h - np.diag(np.diag(h))
        assert np.max(np.abs(off)) == approx(0.0)
        e1 = space.basis_state("e", 1)
        assert np.real(e1.conj() @ h @ e1) == approx(params.omega_e + params.omega_c)

    def test_coupling_elements(self):
        space = build_space(4)
        params = SystemParams.from_eta(0.07)
        h = hamiltonian(params, space)
        e0, g1 = space.basis_state("e", 0), space.basis_state("g", 1)
        e1, g0 = space.basis_state("e", 1), space.basis_state("g", 0)
        assert e0.conj() @ h @ g1 == approx(params.rabi)
        # counter-rotating partner has the same amplitude
        assert e1.conj() @ h @ g0 == approx(params.rabi)

    def test_empty_state_energies(self):
        space = build_space(5)
        params = SystemParams.from_eta(0.1, omega_s=0.2)
        h = hamiltonian(params, space)
        for n in range(space.n_photon):
            sn = space.basis_state("s", n)
            assert np.real(sn.conj() @ h @ sn) == approx(n * params.omega_c - params.omega_s)

    def test_conserves_electron_number(self):
        space = build_space(6)
        h = hamiltonian(SystemParams.from_eta(0.3), space)
        n_el = number_electron(space)
        assert np.max(np.abs(h @ n_el - n_el @ h)) < 1e-12

    def test_hermitian(self):
        space = build_space(6)
        h = hamiltonian(SystemParams.from_eta(0.2, omega_s=0.1), space)
        assert np.max(np.abs(h - h.conj().T)) == approx(0.0)


class TestDressedBasis:
    def test_uncoupled_resonant_levels(self):
        basis, _ = basis_for(0.0)
        assert basis.omega_ground == approx(0.0)
        assert basis.omega_minus == approx(1.0)
        assert basis.omega_plus == approx(1.0)  # degenerate doublet

    def test_weak_coupling_splitting(self):
        eta = 1e-3
        basis, _ = basis_for(eta)
        assert basis.omega_plus - basis.omega_minus == approx(2 * eta, rel=1e-2)

    def test_ground_energy_lowered(self):
        # second-order perturbation theory as the independent oracle
        eta = 0.1
        basis, _ = basis_for(eta)
        assert basis.omega_ground < 0
        assert basis.omega_ground == approx(-eta**2 / 2, rel=0.1)

    def test_zero_sector_states_are_bare(self):
        basis, space = basis_for(0.15)
        for n, k in enumerate(basis.s_levels):
            assert np.abs(basis.state(k)) == approx(
                np.abs(space.basis_state("s", n)), abs=1e-14
            )
            assert basis.sector[k] == 0

    def test_sector_block_structure(self):
        basis, space = basis_for(0.2)
        h = hamiltonian(SystemParams.from_eta(0.2), space)
        zero = basis.zero_electron_indices()
        one = basis.one_electron_indices()
        cross = basis.states[:, zero].conj().T @ h @ basis.states[:, one]
        assert np.max(np.abs(cross)) < 1e-14

    @pytest.mark.parametrize("eta", [0.1, 0.3])
    def test_parity_good_quantum_number(self, eta):
        basis, space = basis_for(eta)
        pi = parity(space)
        for k in basis.one_electron_indices():
            v = basis.state(k)
            expect = np.real(v.conj() @ pi @ v)
            assert abs(abs(expect) - 1.0) < 1e-10

    def test_variational_bound_and_no_crossing(self):
        for eta in np.linspace(0.0, 0.5, 11):
            basis, _ = basis_for(eta)
            assert basis.omega_ground <= 1e-12
            assert basis.omega_minus > 0  # gap between G and - never closes

    def test_sector_mixing_rejected(self):
        space = build_space(3)
        h = hamiltonian(SystemParams.from_eta(0.1), space)
        bad = h.copy()
        k_s = space.index("s", 0)
        k_g = space.index("g", 0)
        bad[k_s, k_g] = bad[k_g, k_s] = 0.05
        with pytest.raises(SectorMixingError):
            dressed_basis(bad, space)

    @pytest.mark.parametrize("eta", [0.0, 0.05, 0.2])
    def test_labels_are_lowest_one_electron_levels(self, eta):
        basis, _ = basis_for(eta)
        one_el = basis.one_electron_indices()
        assert basis.index_ground == one_el[0]
        assert {basis.index_minus, basis.index_plus} == set(one_el[1:3])
        assert basis.omega_minus <= basis.omega_plus

    def test_electron_number_expectation_integer(self):
        basis, space = basis_for(0.4)
        n_el = number_electron(space)
        for k in range(basis.dim):
            v = basis.state(k)
            expect = np.real(v.conj() @ n_el @ v)
            assert abs(expect - round(expect)) < 1e-10


class TestGroundPhotonNumber:
    def test_uncoupled_is_zero(self):
        basis, space = basis_for(0.0)
        assert ground_photon_number(basis, space) == approx(0.0, abs=1e-14)

    def test_perturbative_value(self):
        # |G> ~ |g,0> - (eta/2)|e,1> at resonance gives <n> ~ eta^2/4
        eta = 0.05
        basis, space = basis_for(eta)
        assert ground_photon_number(basis, space) == approx(eta**2 / 4, rel=0.1)

    def test_monotone_in_coupling(self):
        values = []
        for eta in np.linspace(0.0, 0.5, 11):
            basis, space = basis_for(eta)
            values.append(ground_photon_number(basis, space))
        assert all(b > a for a, b in zip(values, values[1:]))


class TestJCReference:
    def test_normalized_and_orthogonal(self):
        space = build_space(6)
        g, plus, minus = jc_reference(SystemParams.from_eta(0.05), space)
        assert np.vdot(plus, plus) == approx(1.0)
        assert np.vdot(minus, minus) == approx(1.0)
        assert np.vdot(g, g) == approx(1.0)
        assert np.vdot(plus, minus) == approx(0.0, abs=1e-14)

    def test_overlap_with_exact_states(self):
        space = build_space(8)

        def overlaps(eta):
            params = SystemParams.from_eta(eta)
            basis = dressed_basis(hamiltonian(params, space), space)
            g, plus, minus = jc_reference(params, space)
            return (
                abs(np.vdot(g, basis.state(basis.index_ground))) ** 2,
                abs(np.vdot(plus, basis.state(basis.index_plus))) ** 2,
                abs(np.vdot(minus, basis.state(basis.index_minus))) ** 2,
            )

        weak = overlaps(0.01)
        assert all(o >= 0.999 for o in weak)
        stronger = overlaps(0.05)
        assert all(w > s for w, s in zip(weak, stronger))

    def test_requires_resonance(self):
        space = build_space(4)
        with pytest.raises(ValueError):
            jc_reference(SystemParams(rabi=0.1, omega_e=1.5), space)
