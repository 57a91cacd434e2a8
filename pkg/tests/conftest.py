import logging

import pytest

from qarray.model import SystemParams, frame_from_squeezing

# parameters of the figure presets, in units of G
FIGURE_DELTA = 10.0
FIGURE_J = 10.0
FIGURE_GAMMA = 1e-3


@pytest.fixture(autouse=True)
def limit_threads(monkeypatch):
    monkeypatch.setenv('QARRAY_THREADS', '2')


@pytest.fixture(autouse=True)
def quiet_logging():
    logger = logging.getLogger('qarray')
    handlers = list(logger.handlers)
    yield
    for handler in list(logger.handlers):
        if handler not in handlers:
            logger.removeHandler(handler)


@pytest.fixture
def frame_at():
    """Squeezed frame of the figure parameters at squeezing r."""
    def make(r, delta_a=1000.0):
        return frame_from_squeezing(r, FIGURE_J, 1.0, delta_a)
    return make


@pytest.fixture
def params_at():
    """SystemParams of the figure parameters at squeezing r with delta_q Delta above the band edge."""
    def make(r, N=60, j=-3, l=3, gamma=0.0, kappa_edge=0.0, Delta=FIGURE_DELTA):
        base = SystemParams.from_squeezing(r, J=FIGURE_J, G=1.0, N=N, j=j, l=l, gamma=gamma,
                                           kappa_edge=kappa_edge)
        frame = frame_from_squeezing(r, FIGURE_J, 1.0, base.delta_a)
        return base.replace(delta_q=frame.upper_band_edge + Delta)
    return make
