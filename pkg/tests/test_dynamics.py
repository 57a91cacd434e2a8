import math

import numpy as np
import pytest

from qarray.boundstate import solve_delta
from qarray.dynamics import (BASIS, TimeSeries, bell_state, check_density_matrix, evolve_effective, evolve_lattice,
                             exchange_frequency, fidelity, ket, lattice_initial_state, product_state,
                             pure_density_matrix, transfer_target)
from qarray.errors import ParameterError
from qarray.interaction import atom_atom_coupling, protocol_times
from qarray.lattice import SingleExcitationLattice
from qarray.model import SystemParams, squeezed_frame

FIGURE_GAMMA = 1e-3


def figure_coupling(frame_at, r, d=6):
    frame = frame_at(r)
    return atom_atom_coupling(10.0, frame.G_mod, frame.J_mod, d)


def protocol_grid(G_lj, periods=3, n_points=601):
    t_ent, _ = protocol_times(G_lj)
    return np.linspace(0.0, periods * t_ent, n_points)


def test_bell_state_phase():
    assert bell_state(6)[BASIS.index('ge')] == pytest.approx(-1j / math.sqrt(2))
    assert bell_state(5)[BASIS.index('ge')] == pytest.approx(1j / math.sqrt(2))
    assert np.linalg.norm(bell_state(3)) == pytest.approx(1.0)


def test_transfer_target():
    psi = transfer_target(0.6, 0.8, 6)
    assert psi[BASIS.index('gg')] == pytest.approx(0.6)
    assert psi[BASIS.index('ge')] == pytest.approx(-0.8j)


def test_density_matrix_checks():
    rho = pure_density_matrix(product_state(1.0, 1.0))
    assert check_density_matrix(rho) is not None
    with pytest.raises(ParameterError):
        check_density_matrix(2 * rho)
    with pytest.raises(ParameterError):
        check_density_matrix(np.eye(2))
    skew = rho.copy()
    skew[0, 2] += 0.1
    with pytest.raises(ParameterError):
        check_density_matrix(skew)


def test_fidelity_is_clipped():
    rho = pure_density_matrix(ket('eg'))
    assert fidelity(rho, ket('eg')) == 1.0
    assert fidelity(rho, ket('ge')) == 0.0


def test_unitary_exchange_reaches_bell_state():
    G_lj = 1e-3
    series, _ = evolve_effective(G_lj, 0.0, pure_density_matrix(ket('eg')), protocol_grid(G_lj), d=6)
    assert series['fidelity_S'][200] == pytest.approx(1.0, abs=1e-6)
    assert series['P_eA'][200] == pytest.approx(0.5, abs=1e-6)


def test_state_transfer_phase():
    G_lj = -2e-3
    t = protocol_grid(G_lj)
    _, rho = evolve_effective(G_lj, 0.0, pure_density_matrix(product_state(0.6, 0.8)), t[:401], d=1)
    assert fidelity(rho, transfer_target(0.6, 0.8, 1)) == pytest.approx(1.0, abs=1e-6)


def test_trace_and_hermiticity_preserved(frame_at):
    G_lj = figure_coupling(frame_at, 0.0)
    t = np.linspace(0.0, 10 / FIGURE_GAMMA, 201)
    series, _ = evolve_effective(G_lj, FIGURE_GAMMA, pure_density_matrix(ket('eg')), t, keep_states=True)
    assert np.max(np.abs(series['trace'] - 1.0)) < 1e-9
    drift = np.max(np.abs(series.states - np.conj(np.transpose(series.states, (0, 2, 1)))))
    assert drift < 1e-12
    assert series['P_eA'][-1] < 1e-3


def test_weak_coupling_never_entangles(frame_at):
    G_lj = figure_coupling(frame_at, 0.0)
    series, _ = evolve_effective(G_lj, FIGURE_GAMMA, pure_density_matrix(ket('eg')), protocol_grid(G_lj), d=6)
    assert series['fidelity_S'][0] == pytest.approx(0.5)
    assert series.max('fidelity_S') < 0.65


def test_strong_coupling_entangles_and_transfers(frame_at):
    G_lj = figure_coupling(frame_at, 1.5)
    series, _ = evolve_effective(G_lj, FIGURE_GAMMA, pure_density_matrix(ket('eg')), protocol_grid(G_lj), d=6)
    assert series.max('fidelity_S') > 0.85
    assert series.max('P_eB') > 0.8


def test_exchange_frequency_of_effective_model():
    G_lj = 1e-3
    series, _ = evolve_effective(G_lj, 0.0, pure_density_matrix(ket('eg')), protocol_grid(G_lj, 2, 801))
    assert exchange_frequency(series) == pytest.approx(G_lj, rel=1e-4)


def test_exchange_frequency_needs_a_crossing():
    series = TimeSeries([0.0, 1.0], {'P_eA': [1.0, 0.9], 'P_eB': [0.0, 0.1]})
    with pytest.raises(ParameterError):
        exchange_frequency(series)


def test_time_series_validation():
    with pytest.raises(ParameterError):
        TimeSeries([0.0, 0.0], {'P_eA': [1.0, 1.0]})
    with pytest.raises(ParameterError):
        TimeSeries([0.0, 1.0], {'P_eA': [1.0]})
    series = TimeSeries([0.0, 2.0], {'P_eA': [1.0, 0.0]})
    assert series.value_at('P_eA', 1.0) == pytest.approx(0.5)
    assert list(series.rows()) == [[0.0, 1.0], [2.0, 0.0]]


@pytest.mark.parametrize('r', [0.723, 1.2])
def test_lattice_exchange_matches_dispersive_coupling(frame_at, params_at, r):
    frame = frame_at(r)
    G_lj = atom_atom_coupling(10.0, frame.G_mod, frame.J_mod, 6)
    xi_prime = 1 / math.acosh(1 + 10.0 / (2 * frame.J_mod))
    params = params_at(r, N=int(math.ceil(40 * xi_prime)) + 3 + 10)

    series = evolve_lattice(params, frame, lattice_initial_state(params), protocol_grid(G_lj, 2, 801))
    assert series.warnings == ()
    assert exchange_frequency(series) == pytest.approx(abs(G_lj), rel=0.05)


def test_lattice_bookkeeping_closes_with_losses(params_at):
    params = params_at(0.5, N=15, gamma=0.05, kappa_edge=0.5)
    frame = squeezed_frame(params)
    series = evolve_lattice(params, frame, lattice_initial_state(params, alpha1=0.6, alpha2=0.8),
                            np.linspace(0.0, 40.0, 81))
    assert np.max(np.abs(series['trace'] - 1.0)) < 1e-9
    assert series['vacuum_pop'][0] == pytest.approx(0.36)
    assert np.all(np.diff(series['vacuum_pop']) > -1e-12)
    assert series['vacuum_pop'][-1] > 0.36
    assert np.all(series['photon_pop'] >= 0)
    assert len(series.warnings) == 1


def test_lattice_rk4_agrees_with_propagator(params_at):
    params = params_at(0.0, N=5, j=-1, l=1, Delta=-20.0)
    frame = squeezed_frame(params)
    psi0 = lattice_initial_state(params)
    t = np.linspace(0.0, 2.0, 21)
    exact = evolve_lattice(params, frame, psi0, t, check_boundary=False)
    stepped = evolve_lattice(params, frame, psi0, t, method='rk4', check_boundary=False)
    assert np.max(np.abs(exact['P_eA'] - stepped['P_eA'])) < 1e-6
    assert np.max(np.abs(exact['photon_pop'] - stepped['photon_pop'])) < 1e-6


def test_lattice_single_atom(params_at):
    params = params_at(0.0, N=10)
    frame = squeezed_frame(params)
    series = evolve_lattice(params, frame, lattice_initial_state(params, atoms=1), np.linspace(0.0, 5.0, 11),
                            atoms=1, check_boundary=False)
    assert np.all(series['P_eB'] == 0.0)
    assert series['P_eA'][-1] > 0.9


def test_lattice_rejects_mismatched_state(params_at):
    params = params_at(0.0, N=10)
    psi0 = lattice_initial_state(params.replace(N=11))
    with pytest.raises(ParameterError):
        evolve_lattice(params, squeezed_frame(params), psi0, [0.0, 1.0])
    with pytest.raises(ParameterError):
        evolve_lattice(params, squeezed_frame(params), lattice_initial_state(params), [0.0, 1.0], method='euler')


def dispersive_array(params_at, frame, r, gamma=0.0, kappa_edge=0.0):
    xi_prime = 1 / math.acosh(1 + 10.0 / (2 * frame.J_mod))
    return params_at(r, N=int(math.ceil(40 * xi_prime)) + 3 + 10, gamma=gamma, kappa_edge=kappa_edge)


@pytest.mark.parametrize('r', [0.0, 0.723, 1.2])
def test_effective_model_tracks_lattice(frame_at, params_at, r):
    frame = frame_at(r)
    G_lj = atom_atom_coupling(10.0, frame.G_mod, frame.J_mod, 6)
    params = dispersive_array(params_at, frame, r, gamma=FIGURE_GAMMA)
    t = protocol_grid(G_lj, 3, 301)

    effective, _ = evolve_effective(G_lj, FIGURE_GAMMA, pure_density_matrix(ket('eg')), t, d=6)
    lattice = evolve_lattice(params, frame, lattice_initial_state(params), t)
    assert np.max(np.abs(effective['P_eB'] - lattice['P_eB'])) < 0.05


@pytest.mark.parametrize('r', [0.723, 1.2])
def test_lattice_reaches_bell_state_at_entangling_time(frame_at, params_at, r):
    frame = frame_at(r)
    G_lj = atom_atom_coupling(10.0, frame.G_mod, frame.J_mod, 6)
    params = dispersive_array(params_at, frame, r)

    series = evolve_lattice(params, frame, lattice_initial_state(params), protocol_grid(G_lj, 1, 201))
    assert series['fidelity_S'][-1] == pytest.approx(1.0, abs=0.02)


def test_lossless_lattice_conserves_norm(params_at):
    params = params_at(0.5, N=15)
    frame = squeezed_frame(params)
    series = evolve_lattice(params, frame, lattice_initial_state(params, alpha1=0.6, alpha2=0.8),
                            np.linspace(0.0, 40.0, 81), check_boundary=False)
    assert np.max(np.abs(series['vacuum_pop'] - 0.36)) < 1e-9
    block = series['P_eA'] + series['P_eB'] + series['photon_pop']
    assert np.max(np.abs(block - 0.64)) < 1e-9


def dressed_decay_rate(params):
    lattice = SingleExcitationLattice(params, squeezed_frame(params), atoms=1, reference=params.delta_q)
    energies, vectors = np.linalg.eig(lattice.hamiltonian())
    dressed = np.argmax(np.abs(vectors[lattice.atom_index('A')]))
    return -2 * energies[dressed].imag


def test_edge_damping_leaves_bound_state_alone(params_at):
    lossy_atom = dressed_decay_rate(params_at(0.0, N=100, gamma=FIGURE_GAMMA))
    with_edges = dressed_decay_rate(params_at(0.0, N=100, gamma=FIGURE_GAMMA, kappa_edge=1.0))
    assert 0.9 * FIGURE_GAMMA < lossy_atom <= FIGURE_GAMMA
    assert abs(with_edges - lossy_atom) < 0.01 * FIGURE_GAMMA


def test_decoupled_atoms_are_stationary(params_at):
    params = params_at(0.0, N=10).replace(G=0.0)
    series = evolve_lattice(params, squeezed_frame(params), lattice_initial_state(params),
                            np.linspace(0.0, 50.0, 26), check_boundary=False)
    assert np.max(np.abs(series['P_eA'] - 1.0)) < 1e-12
    assert np.max(series['P_eB']) < 1e-12
    assert np.max(series['photon_pop']) < 1e-12


def test_single_atom_rabi_oscillation_at_band_centre():
    # G_mod >> J_mod: the atom splits into two bound states symmetric about the band centre
    J = 0.05
    params = SystemParams.from_squeezing(0.0, J=J, G=1.0, N=20, j=0, l=0, delta_q=1000.0)
    frame = squeezed_frame(params)
    delta = solve_delta(-2 * J, frame.G_mod, frame.J_mod)
    splitting = 2 * (2 * J + delta)

    series = evolve_lattice(params, frame, lattice_initial_state(params, atoms=1),
                            np.linspace(0.0, 2 * math.pi / splitting, 3), atoms=1, check_boundary=False)
    assert series['P_eA'][1] < 0.05
    assert series['P_eA'][2] > 0.9
