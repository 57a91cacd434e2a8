"""Photon-mediated coupling between two atoms in the dispersive regime."""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from qarray.boundstate import effective_jc, localization_length, solve_delta
from qarray.errors import (InfiniteCooperativityError, NotDispersiveError, ParameterError, QArrayError,
                           UndefinedTimeError)
from qarray.model import frame_from_squeezing
from qarray.workers import parallel_map

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ['r', 'd', 'eta', 'delta_q', 'G_lj', 'abs_G_lj', 'C', 'xi_prime', 'G_e_prime', 'delta_exact',
                 'G_lj_exact', 'flag']


@dataclass(frozen=True)
class EffectiveCoupling:
    G_lj: float
    d: int
    xi_prime: float
    G_e_prime: float
    C: float
    t_ent: float
    t_transfer: float


@dataclass(frozen=True)
class SweepRow:
    r: float
    d: int
    eta: Optional[float] = None
    delta_q: Optional[float] = None
    G_lj: Optional[float] = None
    abs_G_lj: Optional[float] = None
    C: Optional[float] = None
    xi_prime: Optional[float] = None
    G_e_prime: Optional[float] = None
    delta_exact: Optional[float] = None
    G_lj_exact: Optional[float] = None
    flag: str = ''

    def as_list(self):
        return [getattr(self, name) for name in SWEEP_COLUMNS]


def dispersive_parameters(Delta, G_mod, J_mod):
    """xi' and G_e' evaluated at delta = Delta."""
    if not Delta > 0:
        raise NotDispersiveError(Delta)
    xi_prime = localization_length(Delta, J_mod)
    G_e_prime, _ = effective_jc(Delta, Delta, G_mod, J_mod)
    return xi_prime, G_e_prime


def atom_atom_coupling(Delta, G_mod, J_mod, d, exact_delta=False):
    """ Returns G_lj = (-1)^d G_e'^2 / (2 Delta) exp(-d / xi')

    Parameters
    ----------
    arg: Delta (float)
        - desc: Atomic detuning above the upper band edge, must be > 0

    arg: d (int)
        - desc: Atomic separation |l - j| in sites

    arg: exact_delta (bool)
        - default: False
        - desc: Evaluates xi and G_e at the solved bound-state delta instead of at delta = Delta

    Returns:
        The signed coupling strength in units of G
    """
    if d < 0 or int(d) != d:
        raise ParameterError('separation d must be a non-negative integer, got {}'.format(d))
    if not Delta > 0:
        raise NotDispersiveError(Delta)
    if exact_delta:
        delta = solve_delta(Delta, G_mod, J_mod)
        xi = localization_length(delta, J_mod)
        G_e, _ = effective_jc(delta, Delta, G_mod, J_mod)
    else:
        xi, G_e = dispersive_parameters(Delta, G_mod, J_mod)
    sign = 1.0 if d % 2 == 0 else -1.0
    return sign * G_e ** 2 / (2 * Delta) * math.exp(-d / xi)


def cooperativity(G_lj, gamma):
    """C = (G_lj / gamma)^2."""
    if gamma < 0:
        raise ParameterError('gamma must be >= 0, got {}'.format(gamma))
    if gamma == 0:
        raise InfiniteCooperativityError()
    return (G_lj / gamma) ** 2


def protocol_times(G_lj):
    """Entanglement time pi / (4 |G_lj|) and transfer time pi / (2 |G_lj|)."""
    if G_lj == 0:
        raise UndefinedTimeError()
    t_ent = math.pi / (4 * abs(G_lj))
    return t_ent, 2 * t_ent


def effective_coupling(Delta, G_mod, J_mod, d, gamma):
    G_lj = atom_atom_coupling(Delta, G_mod, J_mod, d)
    xi_prime, G_e_prime = dispersive_parameters(Delta, G_mod, J_mod)
    try:
        C = cooperativity(G_lj, gamma)
    except InfiniteCooperativityError:
        C = math.inf
    t_ent, t_transfer = protocol_times(G_lj)
    return EffectiveCoupling(G_lj, int(d), xi_prime, G_e_prime, C, t_ent, t_transfer)


def _sweep_point(point, Delta, J, G, gamma, exact_delta, delta_a):
    r, d = point
    try:
        frame = frame_from_squeezing(r, J, G, delta_a)
        delta_q = frame.upper_band_edge + Delta
        xi_prime, G_e_prime = dispersive_parameters(Delta, frame.G_mod, frame.J_mod)
        G_lj = atom_atom_coupling(Delta, frame.G_mod, frame.J_mod, d)
        delta_exact = G_lj_exact = None
        if exact_delta:
            delta_exact = solve_delta(Delta, frame.G_mod, frame.J_mod)
            G_lj_exact = atom_atom_coupling(Delta, frame.G_mod, frame.J_mod, d, exact_delta=True)
        try:
            C = cooperativity(G_lj, gamma)
            flag = ''
        except InfiniteCooperativityError:
            C, flag = math.inf, 'InfiniteCooperativityError'
        return SweepRow(r, d, frame.eta, delta_q, G_lj, abs(G_lj), C, xi_prime, G_e_prime, delta_exact, G_lj_exact,
                        flag)
    except QArrayError as e:
        logger.info('sweep point r=%s d=%s failed: %s', r, d, e)
        return SweepRow(r, d, flag=type(e).__name__)


def coupling_sweep(r_values, d_values, Delta=10.0, J=10.0, G=1.0, gamma=1e-3, exact_delta=False,
                   delta_a=1000.0, progress=False):
    """ Evaluates the coupling on the r x d grid, r outer and d inner

    Parameters
    ----------
    arg: r_values (list of float)
        - desc: Squeezing parameters; Delta is held fixed, so delta_q tracks the band edge

    arg: d_values (list of int)
        - desc: Atomic separations

    arg: exact_delta (bool)
        - default: False
        - desc: Also solves the bound-state delta and reports it with G_lj evaluated there (delta_exact, G_lj_exact)

    arg: delta_a (float)
        - default: 1000.0
        - desc: Cavity detuning; sets eta and delta_q of each row, not the coupling

    Returns:
        List of SweepRow in grid order; failed points carry the error name in `flag`
    """
    points = [(float(r), int(d)) for r in r_values for d in d_values]
    if not points:
        raise ParameterError('coupling sweep needs at least one r and one d')
    return parallel_map(lambda p: _sweep_point(p, Delta, J, G, gamma, exact_delta, delta_a), points,
                        desc='coupling sweep', progress=progress)


def sweep_diagnostics(rows):
    """Monotonicity of |G_lj| in r for each d, and the per-site decay factor |G(d+1)/G(d)| for each r."""
    by_d = {}
    by_r = {}
    for row in rows:
        if row.flag and row.G_lj is None:
            continue
        by_d.setdefault(row.d, []).append((row.r, row.abs_G_lj))
        by_r.setdefault(row.r, []).append((row.d, row.abs_G_lj))

    monotone = {}
    for d, values in by_d.items():
        values.sort()
        magnitudes = np.array([v for _, v in values])
        monotone[d] = bool(np.all(np.diff(magnitudes) > 0)) if len(magnitudes) > 1 else True

    decay = {}
    for r, values in by_r.items():
        values.sort()
        ratios = [b / a for (da, a), (db, b) in zip(values, values[1:]) if db == da + 1 and a > 0]
        decay[r] = float(np.mean(ratios)) if ratios else None
    return {'monotone_in_r': monotone, 'decay_factor': decay}


def cooperativity_crossing(rows, d):
    """r at which C crosses 1 for separation d, linearly interpolated between bracketing rows."""
    points = sorted((row.r, row.C) for row in rows if row.d == d and row.C is not None and math.isfinite(row.C))
    for (r0, c0), (r1, c1) in zip(points, points[1:]):
        if (c0 - 1) * (c1 - 1) <= 0 and c1 != c0:
            return r0 + (1 - c0) * (r1 - r0) / (c1 - c0)
    return None
