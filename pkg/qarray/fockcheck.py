"""Brute-force check of the squeezed-frame mapping on a tiny array.

The driven Hamiltonian with two-photon pumping is built on a truncated Fock
space, evolved from the squeezed vacuum with atom A excited, and compared with
the single-excitation squeezed-frame model started from the frame vacuum.
Tensor ordering is [atom A, (atom B), site -h, ..., site h] with h = n_sites // 2;
atom levels are ordered (g, e).
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from qarray.dynamics import PureState, TimeSeries, evolve_lattice, lattice_initial_state
from qarray.errors import DimensionError, ParameterError, RegimeError, TruncationError
from qarray.integrate import check_time_grid, integrate_rk4
from qarray.model import SystemParams, drive_amplitude, squeezed_frame, validate_regime

logger = logging.getLogger(__name__)

DEFAULT_TRUNCATION_TOL = 1e-6
DEFAULT_MAX_NONZEROS = 2 * 10 ** 6
DEFAULT_THRESHOLD = 0.05
REPORT_COLUMNS = ['r', 'ratio1', 'ratio2', 'n_sites', 'n_max', 'max_dev']

_SIGMA_MINUS = sparse.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))


@dataclass(frozen=True)
class FockConfig:
    """Truncated-space settings: array size, Fock cutoff, squeezing and the evolution window.

    ``r_target`` of None keeps the drive of the params; otherwise eta is derived
    from delta_a and r_target. ``t_max`` of None covers one atom-photon exchange
    period pi / G_mod.
    """

    n_sites: int = 3
    n_max: int = 10
    r_target: Optional[float] = None
    t_max: Optional[float] = None
    dt: float = 0.05
    n_atoms: int = 2
    truncation_tol: float = DEFAULT_TRUNCATION_TOL
    max_nonzeros: int = DEFAULT_MAX_NONZEROS
    threshold: float = DEFAULT_THRESHOLD
    ratio_min: float = 10.0

    def __post_init__(self):
        if not 1 <= self.n_sites <= 7 or self.n_sites % 2 == 0:
            raise ParameterError('n_sites must be odd and between 1 and 7, got {}'.format(self.n_sites))
        if self.n_max < 4:
            raise ParameterError('n_max must be >= 4, got {}'.format(self.n_max))
        if self.n_atoms not in (1, 2):
            raise ParameterError('n_atoms must be 1 or 2, got {}'.format(self.n_atoms))
        if self.r_target is not None and not (self.r_target >= 0 and math.isfinite(self.r_target)):
            raise ParameterError('r_target must be finite and >= 0, got {}'.format(self.r_target))
        if self.t_max is not None and not self.t_max > 0:
            raise ParameterError('t_max must be > 0, got {}'.format(self.t_max))
        if not self.dt > 0:
            raise ParameterError('dt must be > 0, got {}'.format(self.dt))
        if not 0 < self.truncation_tol < 1:
            raise ParameterError('truncation_tol must lie in (0, 1), got {}'.format(self.truncation_tol))
        if self.max_nonzeros < 1 or not self.threshold > 0:
            raise ParameterError('max_nonzeros and threshold must be positive')

    @property
    def half_size(self):
        return self.n_sites // 2

    @property
    def sites(self):
        return list(range(-self.half_size, self.half_size + 1))

    @property
    def atom_sites(self):
        """Sites of atom A and B: the centre for one atom, the two ends for two."""
        if self.n_atoms == 1:
            return (0,)
        return (-self.half_size, self.half_size)

    @property
    def dims(self):
        return (2,) * self.n_atoms + (self.n_max + 1,) * self.n_sites

    @property
    def dimension(self):
        return 2 ** self.n_atoms * (self.n_max + 1) ** self.n_sites

    def time_grid(self, G_mod):
        t_max = self.t_max if self.t_max is not None else math.pi / max(G_mod, 1e-300)
        steps = max(1, int(round(t_max / self.dt)))
        return np.linspace(0.0, t_max, steps + 1)


@dataclass(frozen=True)
class SparseOperator:
    matrix: sparse.csr_matrix
    config: FockConfig

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def nnz(self):
        return self.matrix.nnz

    def entries(self):
        coo = self.matrix.tocoo()
        return coo.row, coo.col, coo.data

    def hermiticity_error(self):
        difference = self.matrix - self.matrix.conj().T
        return float(abs(difference).max()) if difference.nnz else 0.0

    def is_hermitian(self, tol=1e-12):
        return self.hermiticity_error() < tol

    def __matmul__(self, vector):
        return self.matrix @ vector


@dataclass(frozen=True)
class DeviationReport:
    r: float
    ratio1: float
    ratio2: float
    n_sites: int
    n_max: int
    max_dev: float
    threshold: float
    passed: bool
    forced: bool = False

    def as_list(self):
        return [getattr(self, name) for name in REPORT_COLUMNS]


def _annihilation(n_max):
    return sparse.diags(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1, format='csr')


def _embed(op, position, dims):
    """Places a local operator at tensor position `position`, identities elsewhere."""
    left = int(np.prod(dims[:position], dtype=np.int64))
    right = int(np.prod(dims[position + 1:], dtype=np.int64))
    out = sparse.kron(sparse.identity(left, format='csr'), op, format='csr')
    return sparse.kron(out, sparse.identity(right, format='csr'), format='csr')


def _site_position(site, config):
    if site not in config.sites:
        raise ParameterError('site {} outside the {}-site array'.format(site, config.n_sites))
    return config.n_atoms + site + config.half_size


def _local_diagonal(values, position, dims):
    left = int(np.prod(dims[:position], dtype=np.int64))
    right = int(np.prod(dims[position + 1:], dtype=np.int64))
    return np.kron(np.kron(np.ones(left), values), np.ones(right))


def excitation_numbers(config):
    """Diagonal of N_exc = sum of photon numbers plus excited atoms."""
    dims = config.dims
    total = np.zeros(config.dimension)
    for position, size in enumerate(dims):
        total += _local_diagonal(np.arange(size, dtype=float), position, dims)
    return total


def photon_numbers(config):
    dims = config.dims
    total = np.zeros(config.dimension)
    for position in range(config.n_atoms, len(dims)):
        total += _local_diagonal(np.arange(dims[position], dtype=float), position, dims)
    return total


def excitation_number_operator(config):
    return SparseOperator(sparse.diags(excitation_numbers(config), format='csr'), config)


def parity_operator(config):
    """(-1)^N_exc, conserved by the driven Hamiltonian since the pump changes photon number by two."""
    parity = np.where(excitation_numbers(config) % 2 == 0, 1.0, -1.0)
    return SparseOperator(sparse.diags(parity, format='csr'), config)


def commutator_norm(a, b):
    """Largest entry magnitude of [A, B]."""
    A = a.matrix if isinstance(a, SparseOperator) else a
    B = b.matrix if isinstance(b, SparseOperator) else b
    commutator = (A @ B - B @ A).tocsr()
    commutator.eliminate_zeros()
    return float(abs(commutator).max()) if commutator.nnz else 0.0


def _estimated_nonzeros(config):
    terms = 1 + 2 * (config.n_sites - 1) + 2 * config.n_sites + 2 * config.n_atoms
    return config.dimension * terms


def build_full_hamiltonian(params, config):
    """ Builds the driven, non-number-conserving Hamiltonian on the truncated Fock space

    H = delta_a sum a^dag a + delta_q sum s+ s- - J sum (a_n^dag a_{n+1} + h.c.)
        + eta sum (a^dag^2 e^{-i phi} + a^2 e^{i phi}) + G (a_j^dag s-_A + a_l^dag s-_B + h.c.)
    with open boundaries.

    Parameters
    ----------
    arg: params (SystemParams)
        - desc: delta_a, delta_q, J, eta, phi and G are used; positions come from the config

    arg: config (FockConfig)
        - desc: Array size, cutoff, number of atoms and the nonzero cap

    Returns:
        SparseOperator holding a Hermitian csr matrix
    """
    estimate = _estimated_nonzeros(config)
    if estimate > config.max_nonzeros:
        raise DimensionError('Hamiltonian would hold up to {} nonzeros, cap is {}'.format(
            estimate, config.max_nonzeros))

    dims = config.dims
    a = _annihilation(config.n_max)
    site_ops = {site: _embed(a, _site_position(site, config), dims) for site in config.sites}
    drive = params.eta * (a.T @ a.T) * np.exp(-1j * params.phi)
    drive = drive + drive.conj().T

    H = sparse.diags(params.delta_a * photon_numbers(config), format='csr').astype(complex)
    for atom, site in enumerate(config.atom_sites):
        lower = _embed(_SIGMA_MINUS, atom, dims)
        H = H + params.delta_q * (lower.T @ lower)
        coupling = params.G * (site_ops[site].T @ lower)
        H = H + coupling + coupling.conj().T
    for left, right in zip(config.sites, config.sites[1:]):
        hop = site_ops[left].T @ site_ops[right]
        H = H - params.J * (hop + hop.T)
    if params.eta:
        for site in config.sites:
            H = H + _embed(drive, _site_position(site, config), dims)

    H = H.tocsr()
    H.eliminate_zeros()
    if H.nnz > config.max_nonzeros:
        raise DimensionError('Hamiltonian holds {} nonzeros, cap is {}'.format(H.nnz, config.max_nonzeros))
    logger.debug('full Hamiltonian: dimension %d, %d nonzeros', H.shape[0], H.nnz)
    return SparseOperator(H, config)


def single_mode_squeezed_vacuum(r, phi, n_max):
    """Truncated, renormalized Fock amplitudes of the vacuum of b = a cosh r + a^dag e^{-i phi} sinh r."""
    psi = np.zeros(n_max + 1, dtype=complex)
    psi[0] = 1.0 / math.sqrt(math.cosh(r))
    factor = -math.tanh(r) * np.exp(-1j * phi)
    for n in range(1, n_max, 2):
        psi[n + 1] = factor * math.sqrt(n / (n + 1)) * psi[n - 1]
    return psi / np.linalg.norm(psi)


def squeezed_vacuum_tail(r, n_max):
    """Probability a single squeezed-vacuum site carries more than n_max photons."""
    if r < 0 or not math.isfinite(r):
        raise ParameterError('r must be finite and >= 0, got {}'.format(r))
    t2 = math.tanh(r) ** 2
    if t2 == 0:
        return 0.0
    # P(2k) = tanh^2k(r) (2k)! / (4^k k!^2 cosh r), summed from the first discarded even number
    k = 0
    p = 1.0 / math.cosh(r)
    while 2 * (k + 1) <= n_max:
        p *= t2 * (2 * k + 1) / (2 * k + 2)
        k += 1
    tail = 0.0
    for _ in range(1000000):
        p *= t2 * (2 * k + 1) / (2 * k + 2)
        k += 1
        tail += p
        if p < 1e-18 * max(tail, 1e-300):
            break
    return tail


def check_truncation(r, config):
    tail = squeezed_vacuum_tail(r, config.n_max)
    if tail >= config.truncation_tol:
        raise TruncationError('n_max = {} discards {:.3e} of the squeezed vacuum at r = {}, tolerance {:.1e}'.format(
            config.n_max, tail, r, config.truncation_tol))
    if config.truncation_tol > DEFAULT_TRUNCATION_TOL:
        logger.warning('truncation tolerance loosened to %.1e (tail %.3e)', config.truncation_tol, tail)
    return tail


def basis_labels(config):
    atoms = [('g', 'e')] * config.n_atoms
    photons = [range(config.n_max + 1)] * config.n_sites
    return tuple('{}|{}'.format(''.join(state[:config.n_atoms]), ','.join(str(n) for n in state[config.n_atoms:]))
                 for state in itertools.product(*(atoms + photons)))


def squeezed_vacuum_product(r, phi, config):
    """ Atoms in |g>, every site in the truncated single-mode squeezed vacuum

    Returns:
        PureState over the truncated Fock basis, labels like 'gg|0,2,0'
    """
    check_truncation(r, config)
    site = single_mode_squeezed_vacuum(r, phi, config.n_max)
    amplitudes = np.ones(1, dtype=complex)
    for _ in range(config.n_atoms):
        amplitudes = np.kron(amplitudes, np.array([1.0, 0.0]))
    for _ in range(config.n_sites):
        amplitudes = np.kron(amplitudes, site)
    return PureState(basis_labels(config), amplitudes)


def excite_atom(state, config, atom='A'):
    """Applies s+ to atom A or B of a state with that atom in |g>."""
    position = {'A': 0, 'B': 1}.get(atom)
    if position is None or position >= config.n_atoms:
        raise ParameterError('no atom {!r} in a {}-atom configuration'.format(atom, config.n_atoms))
    raising = _embed(_SIGMA_MINUS.T, position, config.dims)
    amplitudes = raising @ state.amplitudes
    norm = np.linalg.norm(amplitudes)
    if norm == 0:
        raise ParameterError('atom {} is not in its ground state'.format(atom))
    return PureState(state.labels, amplitudes / norm)


def beta_operator(r, phi, site, config):
    """Squeezed-frame annihilator b = a cosh r + a^dag e^{-i phi} sinh r on one site."""
    a = _annihilation(config.n_max)
    local = math.cosh(r) * a + math.sinh(r) * np.exp(-1j * phi) * a.T
    return _embed(local.tocsr(), _site_position(site, config), config.dims)


def beta_residual(state, r, phi, config):
    """Largest ||b_n psi|| over the sites; exactly zero for even n_max."""
    return max(float(np.linalg.norm(beta_operator(r, phi, site, config) @ state.amplitudes))
               for site in config.sites)


def mean_photon_number(state, site, config):
    probabilities = np.abs(state.amplitudes) ** 2
    numbers = _local_diagonal(np.arange(config.n_max + 1, dtype=float), _site_position(site, config), config.dims)
    return float(probabilities @ numbers)


def full_model_evolve(H, psi0, t_grid, method='expm'):
    """ Unitary evolution of the truncated driven model

    Parameters
    ----------
    arg: H (SparseOperator)
        - desc: Full Hamiltonian from build_full_hamiltonian

    arg: psi0 (PureState)
        - desc: Normalized initial state in the same truncated basis

    arg: method (string)
        - default: 'expm'
        - desc: 'expm' applies expm_multiply between output times, 'rk4' uses fixed substeps
                of at most 0.02 / ||H||_1

    Returns:
        TimeSeries with P_eA, P_eB, parity and norm
    """
    config = H.config
    amplitudes = np.asarray(psi0.amplitudes, dtype=complex)
    if amplitudes.shape != (H.dimension,):
        raise ParameterError('initial state has dimension {}, Hamiltonian {}'.format(amplitudes.size, H.dimension))
    if abs(np.linalg.norm(amplitudes) - 1) > 1e-9:
        raise ParameterError('initial state must be normalized')
    t = check_time_grid(t_grid)
    generator = (-1j * H.matrix).tocsr()

    if method == 'expm':
        states = np.empty((t.size, amplitudes.size), dtype=complex)
        states[0] = amplitudes
        for i in range(1, t.size):
            states[i] = sparse_linalg.expm_multiply(generator * (t[i] - t[i - 1]), states[i - 1])
    elif method == 'rk4':
        h_max = 0.02 / max(sparse_linalg.norm(H.matrix, 1), 1e-300)
        states = integrate_rk4(lambda y: generator @ y, amplitudes, t, h_max, richardson_tol=None)
    else:
        raise ParameterError('unknown full-model propagation method {!r}'.format(method))

    probabilities = (np.abs(states) ** 2).reshape((t.size,) + config.dims)
    P_eA = probabilities[:, 1].reshape(t.size, -1).sum(axis=1)
    if config.n_atoms == 2:
        P_eB = probabilities[:, :, 1].reshape(t.size, -1).sum(axis=1)
    else:
        P_eB = np.zeros(t.size)
    flat = probabilities.reshape(t.size, -1)
    parity = flat @ parity_operator(config).matrix.diagonal().real
    norm = np.sqrt(flat.sum(axis=1))
    return TimeSeries(times=t, columns={'P_eA': P_eA, 'P_eB': P_eB, 'parity': parity, 'norm': norm},
                      label='full model n_sites={} n_max={}'.format(config.n_sites, config.n_max))


def _frame_model_params(params, config):
    sites = config.atom_sites
    return SystemParams(delta_a=params.delta_a, delta_q=params.delta_q, J=params.J, eta=params.eta,
                        phi=params.phi, G=params.G, N=config.half_size, j=sites[0], l=sites[-1])


def frame_comparison(params, config, force=False, method='expm'):
    """ Compares P_eA of the full driven model with the squeezed-frame prediction

    Parameters
    ----------
    arg: params (SystemParams)
        - desc: Physical parameters; N, j, l, gamma and kappa_edge are replaced by the tiny array's

    arg: config (FockConfig)
        - desc: Truncated-space settings; r_target, when set, fixes eta

    arg: force (bool)
        - default: False
        - desc: Runs even when the regime check fails instead of raising RegimeError

    Returns:
        DeviationReport with max_t |P_eA(full) - P_eA(frame)|
    """
    if config.n_sites < 3:
        raise ParameterError('frame comparison needs n_sites >= 3')
    if config.r_target is not None:
        params = params.replace(eta=drive_amplitude(params.delta_a, config.r_target))
    frame = squeezed_frame(params)
    report = validate_regime(frame, params.delta_q, config.ratio_min)
    if not report.passed:
        if not force:
            raise RegimeError(report)
        logger.warning('regime check failed, comparison forced (ratios %.4g, %.4g)',
                       report.ratio_hopping, report.ratio_coupling)
    check_truncation(frame.r, config)

    t = config.time_grid(frame.G_mod)
    H = build_full_hamiltonian(params, config)
    psi0 = excite_atom(squeezed_vacuum_product(frame.r, params.phi, config), config, 'A')
    full = full_model_evolve(H, psi0, t, method=method)

    tiny = _frame_model_params(params, config)
    frame_series = evolve_lattice(tiny, frame, lattice_initial_state(tiny, atoms=config.n_atoms), t,
                                  atoms=config.n_atoms, check_boundary=False)
    max_dev = float(np.max(np.abs(full['P_eA'] - frame_series['P_eA'])))
    logger.info('frame comparison r=%.4g: max deviation %.3e (threshold %.3g)', frame.r, max_dev, config.threshold)
    return DeviationReport(
        r=frame.r,
        ratio1=report.ratio_hopping,
        ratio2=report.ratio_coupling,
        n_sites=config.n_sites,
        n_max=config.n_max,
        max_dev=max_dev,
        threshold=config.threshold,
        passed=max_dev < config.threshold,
        forced=force and not report.passed,
    )
