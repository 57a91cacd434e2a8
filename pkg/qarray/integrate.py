"""Fixed-step fourth-order Runge-Kutta on an output grid."""

import logging
import math

import numpy as np

from qarray.errors import IntegratorError, ParameterError

logger = logging.getLogger(__name__)

RICHARDSON_TOLERANCE = 1e-8


def check_time_grid(t_grid):
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 1:
        raise ParameterError('time grid must be a non-empty 1-d sequence')
    if not np.all(np.isfinite(t)):
        raise ParameterError('time grid must be finite')
    if t.size > 1 and not np.all(np.diff(t) > 0):
        raise ParameterError('time grid must be strictly increasing')
    return t


def rk4_step(rhs, y, h):
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * h * k1)
    k3 = rhs(y + 0.5 * h * k2)
    k4 = rhs(y + h * k3)
    return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _advance(rhs, y, span, h_max):
    n_steps = max(1, int(math.ceil(span / h_max - 1e-12)))
    h = span / n_steps
    if h <= 0 or h < 64 * np.finfo(float).eps * span:
        raise IntegratorError('step size underflow (h = {:.3e})'.format(h))
    for _ in range(n_steps):
        y = rk4_step(rhs, y, h)
    return y


def integrate_rk4(rhs, y0, t_grid, h_max, richardson_tol=RICHARDSON_TOLERANCE):
    """ Integrates dy/dt = rhs(y) with equal RK4 substeps of at most h_max inside every output interval

    Parameters
    ----------
    arg: rhs (callable)
        - desc: Time-independent right-hand side acting on arrays shaped like y0

    arg: h_max (float)
        - desc: Largest substep; each output interval is split into equal substeps

    arg: richardson_tol (float)
        - default: 1e-8
        - desc: Bound on the half-step Richardson error estimate of the first interval,
                None skips the check

    Returns:
        Array of states at every grid time, shape (len(t_grid),) + y0.shape
    """
    t = check_time_grid(t_grid)
    if not h_max > 0 or not math.isfinite(h_max):
        raise IntegratorError('invalid maximum step {}'.format(h_max))

    y = np.array(y0, dtype=complex)
    states = np.empty((t.size,) + y.shape, dtype=complex)
    states[0] = y
    if t.size == 1:
        return states

    if richardson_tol is not None:
        span = t[1] - t[0]
        coarse = _advance(rhs, y, span, h_max)
        fine = _advance(rhs, y, span, h_max / 2)
        error = np.max(np.abs(coarse - fine)) / 15.0
        scale = max(1.0, float(np.max(np.abs(fine))))
        if error > richardson_tol * scale:
            raise IntegratorError('Richardson error estimate {:.3e} exceeds {:.1e}'.format(error, richardson_tol))
        logger.debug('Richardson error estimate %.3e on the first interval', error)

    for i in range(1, t.size):
        y = _advance(rhs, y, t[i] - t[i - 1], h_max)
        states[i] = y
    return states
