"""Physical parameters and the squeezed-frame mapping of the driven cavity array.

All energies and rates are in units of the bare atom-cavity coupling G, times
in units of 1/G. The rotating frame at half the drive frequency is the starting
point, so the cavity and atom enter only through the detunings
``delta_a = omega_a - omega_s/2`` and ``delta_q = omega_q - omega_s/2``.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass

import numpy as np

from qarray.errors import ParameterError, UnstableDriveError

logger = logging.getLogger(__name__)

BAND_EDGE = 'band_edge'
SQUEEZED_MODE = 'squeezed_mode'


@dataclass(frozen=True)
class SystemParams:
    """Inputs of the driven array: detunings, couplings, drive, atom positions and losses.

    Sites are indexed ``-N..N``; atom A sits at ``j`` and atom B at ``l``.
    ``kappa_edge`` damps the two end sites and stands in for the auxiliary
    damped cavities.
    """

    delta_a: float = 1000.0
    delta_q: float = 1030.0
    J: float = 10.0
    eta: float = 0.0
    phi: float = 0.0
    G: float = 1.0
    gamma: float = 0.0
    N: int = 60
    j: int = -3
    l: int = 3
    kappa_edge: float = 0.0

    def __post_init__(self):
        for name in ('delta_a', 'delta_q', 'J', 'eta', 'phi', 'G', 'gamma', 'kappa_edge'):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError('{} must be finite'.format(name))
        if self.N < 1:
            raise ParameterError('N must be >= 1, got {}'.format(self.N))
        if not -self.N <= self.j <= self.l <= self.N:
            raise ParameterError(
                'atom positions must satisfy -N <= j <= l <= N (N={}, j={}, l={})'.format(self.N, self.j, self.l))
        if self.J < 0:
            raise ParameterError('J must be >= 0, got {}'.format(self.J))
        if self.G < 0:
            raise ParameterError('G must be >= 0, got {}'.format(self.G))
        if self.gamma < 0 or self.kappa_edge < 0:
            raise ParameterError('decay rates must be >= 0')
        if self.eta < 0:
            raise ParameterError('eta must be >= 0, got {}'.format(self.eta))

    @property
    def separation(self):
        return self.l - self.j

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_squeezing(cls, r, delta_a=1000.0, **kwargs):
        """Builds parameters in r-direct mode, deriving eta from delta_a and r."""
        return cls(delta_a=delta_a, eta=drive_amplitude(delta_a, r), **kwargs)

    def values(self):
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class SqueezedFrame:
    """Squeezing parameter and the enhanced couplings of the tight-binding squeezed-frame model."""

    r: float
    delta_s: float
    J_mod: float
    G_mod: float

    @property
    def delta_a(self):
        return self.delta_s * math.cosh(2 * self.r)

    @property
    def eta(self):
        return self.delta_a * math.tanh(2 * self.r) / 2

    @property
    def upper_band_edge(self):
        return self.delta_s + 2 * self.J_mod

    @property
    def lower_band_edge(self):
        return self.delta_s - 2 * self.J_mod


@dataclass(frozen=True)
class RegimeReport:
    ratio_hopping: float
    ratio_coupling: float
    ratio_min: float

    @property
    def hopping_ok(self):
        return self.ratio_hopping > self.ratio_min

    @property
    def coupling_ok(self):
        return self.ratio_coupling > self.ratio_min

    @property
    def passed(self):
        return self.hopping_ok and self.coupling_ok


def squeezing_parameter(delta_a, eta):
    """ Returns the squeezing parameter r = (1/4) ln[(delta_a + 2 eta) / (delta_a - 2 eta)]

    Parameters
    ----------
    arg: delta_a (float)
        - desc: Cavity detuning from half the drive frequency, must be > 0

    arg: eta (float)
        - desc: Two-photon drive amplitude, must be >= 0 and below delta_a / 2

    Returns:
        The dimensionless squeezing parameter r >= 0
    """
    if not delta_a > 0:
        raise ParameterError('delta_a must be > 0, got {}'.format(delta_a))
    if eta < 0:
        raise ParameterError('eta must be >= 0, got {}'.format(eta))
    if 2 * eta >= delta_a:
        raise UnstableDriveError(delta_a, eta)
    # artanh(x)/2 equals the log form and keeps full precision for small drives
    return 0.5 * math.atanh(2 * eta / delta_a)


def drive_amplitude(delta_a, r):
    """Drive amplitude eta that produces squeezing r at cavity detuning delta_a."""
    if not delta_a > 0:
        raise ParameterError('delta_a must be > 0, got {}'.format(delta_a))
    if r < 0 or not math.isfinite(r):
        raise ParameterError('r must be finite and >= 0, got {}'.format(r))
    return delta_a * math.tanh(2 * r) / 2


def frame_from_squeezing(r, J, G=1.0, delta_a=1000.0):
    if r < 0 or not math.isfinite(r):
        raise ParameterError('r must be finite and >= 0, got {}'.format(r))
    return SqueezedFrame(
        r=r,
        delta_s=delta_a / math.cosh(2 * r),
        J_mod=J * math.cosh(2 * r),
        G_mod=G * math.cosh(r),
    )


def squeezed_frame(params):
    """ Maps the driven array onto the particle-conserving squeezed-frame model

    Parameters
    ----------
    arg: params (SystemParams)
        - desc: Physical inputs; only delta_a, eta, J and G enter the frame

    Returns:
        SqueezedFrame with r, delta_s = delta_a / cosh(2r), J cosh(2r) and G cosh(r)
    """
    r = squeezing_parameter(params.delta_a, params.eta)
    return frame_from_squeezing(r, params.J, params.G, params.delta_a)


def validate_regime(frame, delta_q, ratio_min=10.0):
    """Checks 2*delta_s >> J_mod and delta_s + delta_q >> G_mod, the conditions for dropping non-resonant terms."""
    if not ratio_min > 1:
        raise ParameterError('ratio_min must be > 1, got {}'.format(ratio_min))
    ratio_hopping = 2 * frame.delta_s / frame.J_mod if frame.J_mod > 0 else math.inf
    if frame.G_mod == 0:
        ratio_coupling = math.inf
    else:
        ratio_coupling = (frame.delta_s + delta_q) / frame.G_mod
    report = RegimeReport(ratio_hopping, ratio_coupling, ratio_min)
    if not report.passed:
        logger.info('regime check failed: ratios %.4g, %.4g (min %.4g)', ratio_hopping, ratio_coupling, ratio_min)
    return report


def band_edge_detuning(delta_q, frame):
    """Atomic detuning above the upper band edge, Delta = delta_q - delta_s - 2 J_mod."""
    return delta_q - frame.delta_s - 2 * frame.J_mod


def dispersion(k, frame):
    return frame.delta_s - 2 * frame.J_mod * np.cos(k)


def band_edges(frame):
    """Bottom and top of the photonic band, the dispersion at k = 0 and k = pi."""
    return float(dispersion(0.0, frame)), float(dispersion(math.pi, frame))


def operating_point(params, Delta, reference=BAND_EDGE):
    """ Returns params with delta_q placed Delta above the chosen reference of the params' own frame

    Parameters
    ----------
    arg: Delta (float)
        - desc: Detuning above the reference energy

    arg: reference (string)
        - default: 'band_edge'
        - desc: 'band_edge' places delta_q at delta_s + 2 J_mod + Delta,
                'squeezed_mode' places it at delta_s + Delta
    """
    frame = squeezed_frame(params)
    if reference == BAND_EDGE:
        delta_q = frame.upper_band_edge + Delta
    elif reference == SQUEEZED_MODE:
        delta_q = frame.delta_s + Delta
    else:
        raise ParameterError('unknown detuning reference {!r}'.format(reference))
    return params.replace(delta_q=delta_q)
