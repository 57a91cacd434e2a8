import math

import numpy as np
import pytest

from qarray.errors import DimensionError, ParameterError, RegimeError, TruncationError
from qarray.fockcheck import (FockConfig, beta_residual, build_full_hamiltonian, commutator_norm,
                              excitation_number_operator, excite_atom, frame_comparison, full_model_evolve,
                              mean_photon_number, parity_operator, photon_numbers, squeezed_vacuum_product,
                              squeezed_vacuum_tail)
from qarray.model import SystemParams, drive_amplitude

R = 0.3


def driven_params(delta_s, r=R, J=1.0, G=1.0):
    """Tiny-array parameters with the atom resonant with the squeezed mode, delta_q = delta_s."""
    delta_a = delta_s * math.cosh(2 * r)
    return SystemParams(delta_a=delta_a, delta_q=delta_s, J=J, G=G, eta=drive_amplitude(delta_a, r))


def comparison_config(n_max=10, **kwargs):
    return FockConfig(n_sites=3, n_max=n_max, t_max=3.0, dt=0.05, **kwargs)


@pytest.mark.parametrize('changes', [dict(n_sites=4), dict(n_sites=9), dict(n_max=3), dict(n_atoms=3),
                                     dict(dt=0.0), dict(truncation_tol=2.0), dict(r_target=-0.1)])
def test_invalid_config(changes):
    with pytest.raises(ParameterError):
        FockConfig(**changes)


def test_dimension():
    config = FockConfig(n_sites=3, n_max=4)
    assert config.dimension == 4 * 5 ** 3
    assert build_full_hamiltonian(SystemParams(), config).dimension == config.dimension
    assert FockConfig(n_sites=3, n_max=4, n_atoms=1).dimension == 2 * 5 ** 3


def test_dimension_cap():
    with pytest.raises(DimensionError):
        build_full_hamiltonian(SystemParams(), FockConfig(n_sites=7, n_max=6))


def test_uncoupled_hamiltonian_is_diagonal():
    params = SystemParams(delta_a=3.0, delta_q=5.0, J=0.0, G=0.0, eta=0.0, N=1, j=0, l=0)
    config = FockConfig(n_sites=3, n_max=4)
    H = build_full_hamiltonian(params, config)
    rows, cols, _ = H.entries()
    assert np.all(rows == cols)

    atoms = excitation_number_operator(config).matrix.diagonal() - photon_numbers(config)
    expected = 3.0 * photon_numbers(config) + 5.0 * atoms
    assert np.allclose(H.matrix.diagonal().real, expected)


def test_number_conserving_without_drive():
    config = FockConfig(n_sites=3, n_max=4)
    H = build_full_hamiltonian(SystemParams(delta_a=20.0, delta_q=20.0, J=1.0, G=1.0), config)
    assert H.is_hermitian()
    assert commutator_norm(H, excitation_number_operator(config)) < 1e-12


def test_drive_conserves_parity_only():
    config = FockConfig(n_sites=3, n_max=4)
    H = build_full_hamiltonian(driven_params(20.0), config)
    assert H.is_hermitian()
    assert commutator_norm(H, parity_operator(config)) < 1e-12
    assert commutator_norm(H, excitation_number_operator(config)) > 0.1


def test_drive_phase_keeps_hermiticity():
    params = driven_params(20.0).replace(phi=0.7)
    assert build_full_hamiltonian(params, FockConfig(n_sites=3, n_max=4)).is_hermitian()


def test_squeezed_vacuum_tail():
    assert squeezed_vacuum_tail(0.0, 4) == 0.0
    assert 5e-8 < squeezed_vacuum_tail(R, 10) < 1.5e-7
    assert squeezed_vacuum_tail(R, 11) == squeezed_vacuum_tail(R, 10)
    assert squeezed_vacuum_tail(R, 4) > 1e-4


def test_truncation_invariant_enforced():
    with pytest.raises(TruncationError):
        squeezed_vacuum_product(R, 0.0, FockConfig(n_sites=3, n_max=4))


def test_unsqueezed_product_is_fock_vacuum():
    state = squeezed_vacuum_product(0.0, 0.0, FockConfig(n_sites=3, n_max=4))
    assert state.amplitudes[0] == 1.0
    assert np.count_nonzero(state.amplitudes) == 1
    assert state.labels[0] == 'gg|0,0,0'


def test_squeezed_vacuum_photon_number():
    config = FockConfig(n_sites=3, n_max=10)
    state = squeezed_vacuum_product(R, 0.0, config)
    assert state.norm == pytest.approx(1.0, abs=1e-12)
    for site in config.sites:
        assert mean_photon_number(state, site, config) == pytest.approx(math.sinh(R) ** 2, abs=1e-5)


@pytest.mark.parametrize('phi', [0.0, 0.7])
def test_squeezed_vacuum_annihilated_by_frame_operator(phi):
    config = FockConfig(n_sites=3, n_max=10)
    state = squeezed_vacuum_product(R, phi, config)
    assert beta_residual(state, R, phi, config) < 1e-12
    assert beta_residual(state, R, phi + math.pi / 2, config) > 0.1


def test_diagonal_evolution_keeps_populations():
    params = SystemParams(delta_a=3.0, delta_q=5.0, J=0.0, G=0.0, eta=0.0)
    config = FockConfig(n_sites=3, n_max=4)
    psi0 = excite_atom(squeezed_vacuum_product(0.0, 0.0, config), config, 'B')
    series = full_model_evolve(build_full_hamiltonian(params, config), psi0, np.linspace(0.0, 2.0, 11))
    assert np.allclose(series['P_eA'], 0.0)
    assert np.allclose(series['P_eB'], 1.0)


def test_vacuum_rabi_oscillation():
    params = SystemParams(delta_a=5.0, delta_q=5.0, J=1.0, G=1.0, eta=0.0)
    config = FockConfig(n_sites=1, n_max=4, n_atoms=1)
    psi0 = excite_atom(squeezed_vacuum_product(0.0, 0.0, config), config, 'A')
    t = np.linspace(0.0, 2 * math.pi, 41)
    series = full_model_evolve(build_full_hamiltonian(params, config), psi0, t)
    assert np.allclose(series['P_eA'], np.cos(t) ** 2, atol=1e-8)


def test_driven_evolution_conserves_norm_and_parity():
    config = FockConfig(n_sites=3, n_max=10)
    H = build_full_hamiltonian(driven_params(20.0), config)
    psi0 = excite_atom(squeezed_vacuum_product(R, 0.0, config), config, 'A')
    series = full_model_evolve(H, psi0, np.linspace(0.0, 1.0, 11))
    assert np.max(np.abs(series['norm'] - 1.0)) < 1e-8
    assert np.max(np.abs(series['parity'] + 1.0)) < 1e-8


def test_excite_atom_requires_ground_state():
    config = FockConfig(n_sites=3, n_max=4, n_atoms=1)
    state = excite_atom(squeezed_vacuum_product(0.0, 0.0, config), config, 'A')
    with pytest.raises(ParameterError):
        excite_atom(state, config, 'A')
    with pytest.raises(ParameterError):
        excite_atom(state, config, 'B')


def test_undriven_models_coincide():
    params = SystemParams(delta_a=20.0, delta_q=20.0, J=1.0, G=1.0, eta=0.0)
    report = frame_comparison(params, comparison_config(n_max=4))
    assert report.r == 0.0
    assert report.max_dev < 1e-6
    assert report.passed


def test_in_regime_deviation_small_and_converging():
    deviations = [frame_comparison(driven_params(delta_s), comparison_config()).max_dev
                  for delta_s in (10.0, 20.0, 40.0)]
    assert deviations[1] < 0.05
    assert deviations[0] > deviations[1] > deviations[2]


def test_cutoff_robustness():
    params = driven_params(20.0)
    low = frame_comparison(params, comparison_config(n_max=10))
    high = frame_comparison(params, comparison_config(n_max=11))
    assert abs(low.max_dev - high.max_dev) < 1e-4


def test_r_target_sets_drive():
    params = driven_params(20.0).replace(eta=0.0)
    report = frame_comparison(params, comparison_config(r_target=R))
    assert report.r == pytest.approx(R, rel=1e-12)


def test_violated_regime():
    params = driven_params(0.5)
    with pytest.raises(RegimeError) as e:
        frame_comparison(params, comparison_config())
    assert 'regime check failed' in str(e.value)

    report = frame_comparison(params, comparison_config(), force=True)
    assert report.forced
    assert report.max_dev > 0.1
    assert not report.passed
