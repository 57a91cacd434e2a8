"""Time evolution of the two atoms: the effective two-qubit master equation and the
exact single-excitation dynamics of the squeezed-frame lattice."""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import linalg

from qarray.boundstate import PROFILE_RADIUS_XI, localization_length, solve_delta
from qarray.errors import ParameterError, QArrayError
from qarray.integrate import check_time_grid, integrate_rk4
from qarray.lattice import SingleExcitationLattice
from qarray.model import band_edge_detuning

logger = logging.getLogger(__name__)

BASIS = ('gg', 'ge', 'eg', 'ee')
POPULATION_SLACK = 1e-9

_SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]])
_IDENTITY = np.eye(2)
LOWER_A = np.kron(_SIGMA_MINUS, _IDENTITY)
LOWER_B = np.kron(_IDENTITY, _SIGMA_MINUS)
EXCITED_A = LOWER_A.T @ LOWER_A
EXCITED_B = LOWER_B.T @ LOWER_B


@dataclass(frozen=True)
class TimeSeries:
    """Observables on a time grid. Columns are read-only arrays aligned with `times`."""

    times: np.ndarray
    columns: dict
    label: str = ''
    warnings: tuple = ()
    states: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise ParameterError('TimeSeries times must be strictly increasing')
        times.setflags(write=False)
        object.__setattr__(self, 'times', times)
        columns = {}
        for name, values in self.columns.items():
            values = np.array(values, dtype=float)
            if values.shape != times.shape:
                raise ParameterError('column {} does not match the time grid'.format(name))
            values.setflags(write=False)
            columns[name] = values
        object.__setattr__(self, 'columns', columns)
        for name in ('P_eA', 'P_eB', 'photon_pop', 'vacuum_pop', 'fidelity_S'):
            if name in columns and columns[name].size:
                lo, hi = columns[name].min(), columns[name].max()
                if lo < -POPULATION_SLACK or hi > 1 + POPULATION_SLACK:
                    logger.warning('%s left [0, 1] (min %.3e, max %.12f)', name, lo, hi)

    def __getitem__(self, name):
        return self.columns[name]

    @property
    def names(self):
        return list(self.columns)

    def max(self, name):
        return float(np.max(self.columns[name]))

    def value_at(self, name, t):
        return float(np.interp(t, self.times, self.columns[name]))

    def rows(self):
        names = self.names
        for i, t in enumerate(self.times):
            yield [float(t)] + [float(self.columns[name][i]) for name in names]


@dataclass(frozen=True)
class PureState:
    labels: tuple
    amplitudes: np.ndarray

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


def ket(label):
    psi = np.zeros(4, dtype=complex)
    psi[BASIS.index(label)] = 1.0
    return psi


def product_state(alpha1, alpha2):
    """(alpha1|g> + alpha2|e>)_A |g>_B, normalized."""
    psi = alpha1 * ket('gg') + alpha2 * ket('eg')
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ParameterError('alpha1 and alpha2 cannot both vanish')
    return psi / norm


def pure_density_matrix(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def check_density_matrix(rho, trace_tol=1e-9):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ParameterError('two-qubit density matrix must be 4x4, got {}'.format(rho.shape))
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise ParameterError('density matrix is not Hermitian')
    if abs(np.trace(rho).real - 1) > trace_tol:
        raise ParameterError('density matrix trace {} differs from 1'.format(np.trace(rho).real))
    if np.min(np.linalg.eigvalsh(rho)) < -1e-10:
        raise ParameterError('density matrix has negative eigenvalues')
    return rho


def bell_state(d):
    """|S> = (|e_A g_B> - i (-1)^d |g_A e_B>) / sqrt(2)."""
    parity = 1 if int(d) % 2 == 0 else -1
    return (ket('eg') - 1j * parity * ket('ge')) / math.sqrt(2)


def transfer_target(alpha1, alpha2, d):
    """|g_A> (alpha1|g_B> - i (-1)^d alpha2|e_B>), the state after a full transfer."""
    parity = 1 if int(d) % 2 == 0 else -1
    psi = alpha1 * ket('gg') - 1j * parity * alpha2 * ket('ge')
    return psi / np.linalg.norm(psi)


def fidelity(rho, target):
    """F = <target| rho |target>."""
    target = np.asarray(target, dtype=complex)
    value = np.vdot(target, np.asarray(rho) @ target)
    return float(min(1.0, max(0.0, value.real)))


def exchange_hamiltonian(G_lj):
    return G_lj * (LOWER_A.T @ LOWER_B + LOWER_B.T @ LOWER_A)


def lindblad_rhs(G_lj, gamma):
    H = exchange_hamiltonian(G_lj)
    anticommutator = gamma * (EXCITED_A + EXCITED_B)

    def rhs(rho):
        out = -1j * (H @ rho - rho @ H)
        if gamma:
            out = out + gamma * (LOWER_A @ rho @ LOWER_A.T + LOWER_B @ rho @ LOWER_B.T) \
                - 0.5 * (anticommutator @ rho + rho @ anticommutator)
        return out
    return rhs


def effective_step(G_lj, gamma):
    """Largest RK4 substep: min(0.02 / ||L||, t_ent / 2000), infinite for a trivial generator."""
    scale = 2 * abs(G_lj) + 2 * gamma
    h = 0.02 / scale if scale > 0 else math.inf
    if G_lj != 0:
        h = min(h, math.pi / (4 * abs(G_lj)) / 2000)
    return h


def evolve_effective(G_lj, gamma, rho0, t_grid, d=None, h_max=None, keep_states=False):
    """ Integrates the two-qubit master equation under H_AB = G_lj (s+_A s-_B + s-_A s+_B)

    Parameters
    ----------
    arg: G_lj (float)
        - desc: Photon-mediated coupling, its sign fixes the parity of |S> when d is None

    arg: gamma (float)
        - desc: Atomic decay rate of each atom

    arg: rho0 (4x4 array)
        - desc: Initial density matrix over (gg, ge, eg, ee), atom A first

    arg: keep_states (bool)
        - default: False
        - desc: Stores every density matrix on the returned series

    Returns:
        (TimeSeries with P_eA, P_eB, fidelity_S and trace, final density matrix)
    """
    rho0 = check_density_matrix(rho0)
    if gamma < 0:
        raise ParameterError('gamma must be >= 0, got {}'.format(gamma))
    t = check_time_grid(t_grid)
    if d is None:
        d = 0 if G_lj >= 0 else 1
    if h_max is None:
        h_max = effective_step(G_lj, gamma)
    if not math.isfinite(h_max):
        h_max = max(t[-1] - t[0], 1.0)

    states = integrate_rk4(lindblad_rhs(G_lj, gamma), rho0, t, h_max)
    target = bell_state(d)
    P_eA = np.einsum('ij,tji->t', EXCITED_A, states).real
    P_eB = np.einsum('ij,tji->t', EXCITED_B, states).real
    trace = np.trace(states, axis1=1, axis2=2).real
    fid = np.array([fidelity(rho, target) for rho in states])

    series = TimeSeries(
        times=t,
        columns={'P_eA': P_eA, 'P_eB': P_eB, 'fidelity_S': fid, 'trace': trace},
        label='effective G_lj={:.6g} gamma={:.6g}'.format(G_lj, gamma),
        states=states if keep_states else None,
    )
    return series, states[-1]


def lattice_initial_state(params, atoms=2, alpha1=0.0, alpha2=1.0):
    """alpha1 on the global vacuum and alpha2 on atom A excited, photons in the squeezed-frame vacuum."""
    labels = ('vac',) + tuple(['A', 'B'][:atoms]) + tuple('n={}'.format(n) for n in range(-params.N, params.N + 1))
    amplitudes = np.zeros(len(labels), dtype=complex)
    amplitudes[0] = alpha1
    amplitudes[1] = alpha2
    norm = np.linalg.norm(amplitudes)
    if norm == 0:
        raise ParameterError('alpha1 and alpha2 cannot both vanish')
    return PureState(labels, amplitudes / norm)


def _boundary_warnings(params, frame, atoms):
    Delta = band_edge_detuning(params.delta_q, frame)
    try:
        xi = localization_length(solve_delta(Delta, frame.G_mod, frame.J_mod), frame.J_mod)
    except QArrayError as e:
        return ('no bound state: {}'.format(e),)
    outermost = max(abs(params.j), abs(params.l)) if atoms == 2 else abs(params.j)
    distance = params.N - outermost
    if PROFILE_RADIUS_XI * xi > distance:
        return ('bound-state cloud (40 xi = {:.1f} sites) reaches the array edge at distance {}'.format(
            PROFILE_RADIUS_XI * xi, distance),)
    return ()


def _propagate_expm(H, y0, t):
    states = np.empty((t.size, y0.size), dtype=complex)
    states[0] = y0
    propagators = {}
    for i in range(1, t.size):
        dt = t[i] - t[i - 1]
        key = round(dt, 12)
        if key not in propagators:
            propagators[key] = linalg.expm(-1j * dt * H)
        states[i] = propagators[key] @ states[i - 1]
    return states


def evolve_lattice(params, frame, psi0, t_grid, atoms=2, method='expm', h_max=None, check_boundary=True):
    """ Single-excitation dynamics of the squeezed-frame array with atomic decay and edge damping

    The non-Hermitian generator H_s - i gamma/2 (atoms) - i kappa_edge/2 (end sites)
    acts on the single-excitation block; the vacuum is stationary and absorbs the
    norm lost by the block, which is exact when every jump lands in the vacuum.

    Parameters
    ----------
    arg: psi0 (PureState)
        - desc: Amplitudes over ('vac', 'A', ['B'], 'n=-N' .. 'n=N'), see lattice_initial_state

    arg: atoms (int)
        - default: 2
        - desc: 1 couples only atom A

    arg: method (string)
        - default: 'expm'
        - desc: 'expm' steps with exact propagators between output times, 'rk4' integrates
                with substeps of at most 0.02 / ||H||

    Returns:
        TimeSeries with P_eA, P_eB, fidelity_S, trace, photon_pop and vacuum_pop
    """
    lattice = SingleExcitationLattice(params, frame, atoms=atoms, reference=params.delta_q)
    labels = ('vac',) + tuple(lattice.labels)
    if tuple(psi0.labels) != labels:
        raise ParameterError('initial state basis does not match the lattice (N={}, atoms={})'.format(params.N, atoms))
    if abs(psi0.norm - 1) > 1e-9:
        raise ParameterError('initial state must be normalized, norm = {}'.format(psi0.norm))
    t = check_time_grid(t_grid)

    warnings = _boundary_warnings(params, frame, atoms) if check_boundary else ()
    for message in warnings:
        logger.warning(message)

    H = lattice.hamiltonian()
    block0 = np.asarray(psi0.amplitudes[1:], dtype=complex)
    if method == 'expm':
        states = _propagate_expm(H, block0, t)
    elif method == 'rk4':
        if h_max is None:
            h_max = 0.02 / max(np.max(np.sum(np.abs(H), axis=1)), 1e-300)
        states = integrate_rk4(lambda y: -1j * (H @ y), block0, t, h_max)
    else:
        raise ParameterError('unknown lattice propagation method {!r}'.format(method))

    a = states[:, lattice.atom_index('A')]
    b = states[:, lattice.atom_index('B')] if atoms == 2 else np.zeros(t.size, dtype=complex)
    P_eA = np.abs(a) ** 2
    P_eB = np.abs(b) ** 2
    photon_pop = np.sum(np.abs(states[:, lattice.photon_slice]) ** 2, axis=1)
    block_norm0 = float(np.sum(np.abs(block0) ** 2))
    vacuum_pop = abs(psi0.amplitudes[0]) ** 2 + (block_norm0 - (P_eA + P_eB + photon_pop))
    target = bell_state(params.separation)
    fid = np.abs(np.conj(target[BASIS.index('eg')]) * a + np.conj(target[BASIS.index('ge')]) * b) ** 2

    return TimeSeries(
        times=t,
        columns={
            'P_eA': P_eA,
            'P_eB': P_eB,
            'fidelity_S': fid,
            'trace': P_eA + P_eB + photon_pop + vacuum_pop,
            'photon_pop': photon_pop,
            'vacuum_pop': vacuum_pop,
        },
        label='lattice r={:.6g} N={} kappa_edge={:.6g}'.format(frame.r, params.N, params.kappa_edge),
        warnings=warnings,
    )


def exchange_frequency(series):
    """ Exchange frequency Omega from the first zero of P_eA - P_eB, which behaves like cos(2 Omega t)

    Returns:
        Omega, to be compared with |G_lj|
    """
    diff = np.asarray(series['P_eA']) - np.asarray(series['P_eB'])
    t = series.times
    if diff[0] <= 0:
        raise ParameterError('exchange frequency needs P_eA > P_eB at the first time')
    crossings = np.nonzero(diff <= 0)[0]
    if crossings.size == 0:
        raise ParameterError('no exchange within the time window')
    i = int(crossings[0])
    t_cross = t[i - 1] + diff[i - 1] * (t[i] - t[i - 1]) / (diff[i - 1] - diff[i])
    return math.pi / (4 * (t_cross - t[0]))
