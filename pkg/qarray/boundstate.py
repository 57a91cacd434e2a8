"""Single-photon bound state of one atom coupled to the squeezed-frame array."""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg, optimize

from qarray.errors import NoBoundStateError, ParameterError, SolverError
from qarray.lattice import SingleExcitationLattice

logger = logging.getLogger(__name__)

RELATIVE_TOLERANCE = 1e-12
MAX_ITERATIONS = 200
PROFILE_RADIUS_XI = 40


@dataclass(frozen=True)
class BoundState:
    delta: float
    Delta_BS: float
    xi: float
    offsets: np.ndarray
    amplitudes: np.ndarray
    G_e: float
    Delta_e: float
    delta_dispersive: float
    xi_dispersive: float
    theta: Optional[float] = None

    @property
    def profile(self):
        return dict(zip(self.offsets.tolist(), self.amplitudes.tolist()))


@dataclass(frozen=True)
class LatticeBoundState:
    """Bound state read off the exact diagonalization of a finite open array."""

    eigenvalue: float
    delta: float
    atomic_weight: float
    offsets: np.ndarray
    amplitudes: np.ndarray
    Delta_e_sum_rule: float

    @property
    def theta(self):
        return math.acos(math.sqrt(min(1.0, self.atomic_weight)))

    @property
    def photon_weight(self):
        return 1.0 - self.atomic_weight


def _residual(delta, Delta, G_mod, J_mod):
    return delta - Delta - G_mod ** 2 / math.sqrt(delta ** 2 + 4 * J_mod * delta)


def solve_delta(Delta, G_mod, J_mod, rtol=RELATIVE_TOLERANCE, max_iter=MAX_ITERATIONS):
    """ Solves delta = Delta + G_mod^2 / sqrt(delta^2 + 4 J_mod delta) for the unique delta > 0

    Parameters
    ----------
    arg: Delta (float)
        - desc: Atomic detuning above the upper band edge, any sign

    arg: G_mod (float)
        - desc: Squeezed-frame atom-photon coupling, >= 0

    arg: J_mod (float)
        - desc: Squeezed-frame hopping, > 0

    Returns:
        The bound-state detuning delta above the upper band edge
    """
    if not J_mod > 0:
        raise ParameterError('J_mod must be > 0, got {}'.format(J_mod))
    if G_mod < 0:
        raise ParameterError('G_mod must be >= 0, got {}'.format(G_mod))
    if G_mod == 0:
        if Delta > 0:
            return float(Delta)
        raise NoBoundStateError('decoupled atom at or below the band edge (Delta = {})'.format(Delta))

    # fixed-point iteration, contractive in the dispersive regime
    delta = max(Delta, G_mod)
    for iteration in range(max_iter):
        updated = Delta + G_mod ** 2 / math.sqrt(delta ** 2 + 4 * J_mod * delta)
        if not updated > 0:
            break
        if abs(updated - delta) <= rtol * max(1.0, abs(updated)):
            delta = updated
            if abs(_residual(delta, Delta, G_mod, J_mod)) < rtol * max(1.0, abs(delta)):
                logger.debug('solve_delta converged by iteration after %d steps', iteration + 1)
                return delta
        delta = updated

    # the residual is strictly increasing on delta > 0, so a bracket always exists
    lo = max(Delta, 0.0)
    if lo == 0.0:
        lo = 1e-300
    # at hi the coupling term is at most (G_mod^4 / 4 J_mod)^(1/3), so the residual is >= G_mod
    hi = max(Delta, 0.0) + G_mod + (G_mod ** 4 / (4 * J_mod)) ** (1.0 / 3.0)
    f = lambda x: _residual(x, Delta, G_mod, J_mod)
    if not (f(lo) < 0 < f(hi)):
        raise SolverError('solve_delta could not bracket the root', residual=abs(f(hi)))
    delta = optimize.brentq(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=max_iter)
    residual = abs(f(delta))
    if residual >= rtol * max(1.0, abs(delta)):
        raise SolverError('solve_delta did not converge', residual=residual)
    logger.debug('solve_delta converged by bracketing, delta=%.17g', delta)
    return delta


def localization_length(delta, J_mod):
    """xi = 1 / arccosh(1 + delta / 2 J_mod), in sites."""
    if not delta > 0 or not J_mod > 0:
        raise ParameterError('localization length needs delta > 0 and J_mod > 0')
    x = delta / (2 * J_mod)
    # arccosh(1 + x) without the cancellation of forming 1 + x first
    return 1.0 / math.log1p(x + math.sqrt(x * (x + 2)))


def wavefunction(delta, J_mod, offsets):
    """Photon amplitudes c_n = (-1)^|m| exp(-|m|/xi) / sqrt(coth(1/xi)) at offsets m = n - j."""
    xi = localization_length(delta, J_mod)
    m = np.abs(np.asarray(offsets, dtype=int))
    sign = np.where(m % 2 == 0, 1.0, -1.0)
    return sign * np.exp(-m / xi) * math.sqrt(math.tanh(1.0 / xi))


def profile_radius(xi):
    return int(math.ceil(PROFILE_RADIUS_XI * xi))


def effective_jc(delta, Delta, G_mod, J_mod):
    """Jaynes-Cummings parameters of the bound photon: (G_e, Delta_e)."""
    if not delta > 0:
        raise ParameterError('delta must be > 0, got {}'.format(delta))
    G_e = math.sqrt(2) * G_mod / (1 + 4 * J_mod / delta) ** 0.25
    Delta_e = Delta + delta / (1 + delta / (2 * J_mod))
    return G_e, Delta_e


def bound_state(Delta, G_mod, J_mod, radius=None, upper_band_edge=0.0):
    """Solves the bound state and evaluates its profile on offsets -radius..radius (40 xi by default)."""
    delta = solve_delta(Delta, G_mod, J_mod)
    xi = localization_length(delta, J_mod)
    if radius is None:
        radius = profile_radius(xi)
    offsets = np.arange(-radius, radius + 1)
    G_e, Delta_e = effective_jc(delta, Delta, G_mod, J_mod)
    xi_dispersive = localization_length(Delta, J_mod) if Delta > 0 else math.inf
    return BoundState(
        delta=delta,
        Delta_BS=upper_band_edge + delta,
        xi=xi,
        offsets=offsets,
        amplitudes=wavefunction(delta, J_mod, offsets),
        G_e=G_e,
        Delta_e=Delta_e,
        delta_dispersive=Delta,
        xi_dispersive=xi_dispersive,
    )


def lattice_bound_state(params, frame):
    """ Exact bound state of atom A on the finite open array

    Diagonalizes the (2N+2)-dimensional single-excitation matrix, keeps the
    eigenvectors above the upper band edge and returns the one with the largest
    atomic weight. Its photon part is normalized with c_j > 0.

    Parameters
    ----------
    arg: params (SystemParams)
        - desc: Atom A sits at params.j; atom B and all losses are ignored

    arg: frame (SqueezedFrame)
        - desc: Squeezed-frame couplings of the array

    Returns:
        LatticeBoundState
    """
    edge = frame.upper_band_edge
    lattice = SingleExcitationLattice(params, frame, atoms=1, reference=edge, losses=False)
    H = lattice.hamiltonian().real

    # eigenvalues are measured from the band edge, so only the positive ones are bound
    energies, vectors = linalg.eigh(H, subset_by_value=(0.0, np.inf))
    if energies.size == 0:
        raise NoBoundStateError('no eigenvalue above the upper band edge')

    weights = np.abs(vectors[0, :]) ** 2
    best = int(np.argmax(weights))
    delta = float(energies[best])
    vector = vectors[:, best]
    weight = float(weights[best])
    if weight <= 0.0 or delta <= 0.0:
        raise NoBoundStateError('eigenvector above the band carries no atomic weight')

    photons = vector[lattice.photon_slice]
    photon_norm = np.linalg.norm(photons)
    offsets = lattice.sites - params.j
    if photon_norm > 0:
        photons = photons / photon_norm
        if photons[lattice.site_index(params.j) - lattice.atoms] < 0:
            photons = -photons
        band_energy = float(photons @ lattice.photon_hamiltonian() @ photons)
    else:
        band_energy = 0.0

    xi = localization_length(delta, frame.J_mod)
    distance = params.N - abs(params.j)
    if PROFILE_RADIUS_XI * xi > distance:
        logger.warning('bound-state cloud (40 xi = %.1f sites) reaches the array edge at distance %d',
                       PROFILE_RADIUS_XI * xi, distance)

    return LatticeBoundState(
        eigenvalue=edge + delta,
        delta=delta,
        atomic_weight=weight,
        offsets=offsets,
        amplitudes=photons,
        Delta_e_sum_rule=params.delta_q - band_energy,
    )


def fit_localization_length(offsets, amplitudes, max_offset=None):
    """Least-squares xi from the slope of log|c_n| against |n - j| on one side of the atom."""
    offsets = np.asarray(offsets)
    amplitudes = np.abs(np.asarray(amplitudes))
    mask = (offsets >= 1) & (amplitudes > 0)
    if max_offset is not None:
        mask &= offsets <= max_offset
    if np.count_nonzero(mask) < 2:
        raise ParameterError('need at least two non-zero amplitudes to fit a localization length')
    slope, _ = np.polyfit(offsets[mask], np.log(amplitudes[mask]), 1)
    return -1.0 / slope
