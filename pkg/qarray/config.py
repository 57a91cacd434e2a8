"""Run configuration: defaults, presets, key=value files and command-line overrides."""

import logging
import math

import numpy as np

from qarray.boundstate import localization_length, solve_delta
from qarray.errors import ConfigError
from qarray.model import (BAND_EDGE, SQUEEZED_MODE, SystemParams, band_edge_detuning, drive_amplitude,
                          operating_point, squeezed_frame)

logger = logging.getLogger(__name__)

ENGINES = ('effective', 'lattice', 'both')
LATTICE_METHODS = ('expm', 'rk4')
AUTO_N_MARGIN = 10

GRID = 'grid'

# key: (type, default)
SCHEMA = {
    'delta_a': (float, 1000.0),
    'delta_s': (float, None),
    'r': (float, None),
    'eta': (float, None),
    'phi': (float, 0.0),
    'J': (float, 10.0),
    'G': (float, 1.0),
    'Delta': (float, 10.0),
    'detuning_ref': (str, BAND_EDGE),
    'delta_q': (float, None),
    'gamma': (float, 1e-3),
    'kappa_edge': (float, 0.0),
    'N': (int, 0),
    'd': (int, 6),
    'j': (int, None),
    'l': (int, None),
    'r_values': (GRID, None),
    'd_values': (GRID, None),
    'exact_delta': (bool, False),
    'radius': (int, None),
    'oracle': (bool, True),
    'engine': (str, 'effective'),
    'lattice_method': (str, 'expm'),
    't_max': (float, None),
    'n_points': (int, 601),
    'alpha1': (float, 0.0),
    'alpha2': (float, 1.0),
    'fock_n_sites': (int, 3),
    'fock_n_max': (int, 10),
    'fock_n_atoms': (int, 2),
    'fock_t_max': (float, None),
    'fock_dt': (float, 0.05),
    'truncation_tol': (float, 1e-6),
    'threshold': (float, 0.05),
    'ratio_min': (float, 10.0),
    'force': (bool, False),
    'digits': (int, 17),
}

_PRESET_BASE = {'Delta': 10.0, 'J': 10.0, 'G': 1.0, 'detuning_ref': BAND_EDGE, 'delta_q': None}

PRESETS = {
    'fig2': dict(_PRESET_BASE, r_values='0,0.5,1,1.5,2'),
    'fig3a': dict(_PRESET_BASE, gamma=1e-3, r_values='0', d_values='1:20:1'),
    'fig3b': dict(_PRESET_BASE, gamma=1e-3, r_values='1', d_values='1:20:1'),
    'fig3c': dict(_PRESET_BASE, gamma=1e-3, r_values='0:1.5:0.01', d_values='6'),
    'fig4-weak': dict(_PRESET_BASE, gamma=1e-3, r=0.0, d=6, alpha1=0.0, alpha2=1.0),
    'fig4-strong': dict(_PRESET_BASE, gamma=1e-3, r=1.5, d=6, alpha1=0.0, alpha2=1.0),
    'fockcheck': {
        'r': 0.3, 'J': 1.0, 'G': 1.0, 'delta_s': 20.0, 'Delta': 0.0, 'detuning_ref': SQUEEZED_MODE,
        'delta_q': None, 'fock_n_sites': 5, 'fock_n_max': 5, 'truncation_tol': 1e-3,
    },
}

_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')


def parse_grid(text):
    """ Parses 'a,b,c' lists and inclusive 'start:stop:step' ranges into a list of floats

    Returns:
        Non-empty list of finite floats in the given order
    """
    if isinstance(text, (list, tuple, np.ndarray)):
        values = [float(v) for v in text]
    else:
        text = str(text).strip()
        try:
            if ':' in text:
                parts = [float(p) for p in text.split(':')]
                if len(parts) != 3:
                    raise ConfigError('range {!r} must read start:stop:step'.format(text))
                start, stop, step = parts
                if not step > 0 or stop < start:
                    raise ConfigError('range {!r} needs step > 0 and stop >= start'.format(text))
                count = int(math.floor((stop - start) / step + 1e-9)) + 1
                values = [round(start + i * step, 12) for i in range(count)]
            else:
                values = [float(p) for p in text.split(',') if p.strip()]
        except ValueError:
            raise ConfigError('cannot parse grid {!r}'.format(text))
    if not values:
        raise ConfigError('grid must not be empty')
    if not all(math.isfinite(v) for v in values):
        raise ConfigError('grid values must be finite')
    return values


def _coerce(key, value):
    kind, _ = SCHEMA[key]
    if value is None or (isinstance(value, str) and value.strip().lower() in ('', 'none')):
        return None
    if kind is GRID:
        return parse_grid(value)
    if kind is bool:
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in _TRUE:
            return True
        if text in _FALSE:
            return False
        raise ConfigError('{} expects a boolean, got {!r}'.format(key, value))
    if kind is str:
        return str(value).strip()
    try:
        if kind is int:
            number = float(value)
            if number != int(number):
                raise ValueError
            return int(number)
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError('{} expects {}, got {!r}'.format(key, kind.__name__, value))
    if not math.isfinite(number):
        raise ConfigError('{} must be finite'.format(key))
    return number


class RunConfig(object):
    def __init__(self, **kwargs):
        """
        Attributes
        ----------
        attr: every key of SCHEMA
        - desc: Physical parameters, drive mode (r or eta), sweep grids, engine choice,
                fockcheck settings and output precision

        Methods
        -------
        values() -> dict
        override_from_dict(values : dict) -> RunConfig
        parse(assignments : list of 'key=value' strings) -> RunConfig
        check() -> RunConfig
        """
        self._values = {key: default for key, (_, default) in SCHEMA.items()}
        self.override_from_dict(kwargs)

    def __getattr__(self, name):
        values = self.__dict__.get('_values')
        if values is not None and name in values:
            return values[name]
        raise AttributeError(name)

    def __repr__(self):
        return 'RunConfig({})'.format(', '.join('{}={!r}'.format(k, v) for k, v in self._values.items()))

    def values(self):
        return dict(self._values)

    def override_from_dict(self, values):
        for key, value in values.items():
            if key not in SCHEMA:
                raise ConfigError('unknown configuration key {!r}'.format(key))
            self._values[key] = _coerce(key, value)
        return self

    def parse(self, assignments):
        updates = {}
        for assignment in assignments:
            if '=' not in assignment:
                raise ConfigError('override {!r} must read key=value'.format(assignment))
            key, value = assignment.split('=', 1)
            updates[key.strip()] = value.strip()
        return self.override_from_dict(updates)

    def check(self):
        if self.detuning_ref not in (BAND_EDGE, SQUEEZED_MODE):
            raise ConfigError('detuning_ref must be {} or {}'.format(BAND_EDGE, SQUEEZED_MODE))
        if self.engine not in ENGINES:
            raise ConfigError('engine must be one of {}'.format(', '.join(ENGINES)))
        if self.lattice_method not in LATTICE_METHODS:
            raise ConfigError('lattice_method must be one of {}'.format(', '.join(LATTICE_METHODS)))
        if self.n_points < 2:
            raise ConfigError('n_points must be >= 2')
        if not 1 <= self.digits <= 17:
            raise ConfigError('digits must lie between 1 and 17')
        if self.r is not None and self.eta is not None:
            raise ConfigError('set exactly one of r and eta, not both')
        if self.eta is not None and self.r_values is not None:
            raise ConfigError('r_values sweeps need r-direct mode, unset eta')
        if self.r is None and self.eta is None and self.r_values is None:
            raise ConfigError('set exactly one of r and eta')
        if self.d_values is not None and any(v < 0 or v != int(v) for v in self.d_values):
            raise ConfigError('d_values must be non-negative integers')
        if self.alpha1 == 0 and self.alpha2 == 0:
            raise ConfigError('alpha1 and alpha2 cannot both vanish')
        return self


def default_config():
    return RunConfig()


def load_config_file(path):
    """Reads `key = value` lines; '#' starts a comment and blank lines are skipped."""
    values = {}
    try:
        with open(path) as f:
            lines = f.readlines()
    except OSError as e:
        raise ConfigError('cannot read configuration {}: {}'.format(path, e))
    for number, line in enumerate(lines, 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError('{}:{}: expected key = value'.format(path, number))
        key, value = line.split('=', 1)
        values[key.strip()] = value.strip()
    return values


def build_config(preset=None, path=None, assignments=()):
    """ Defaults, then the preset, then the file, then the overrides

    Parameters
    ----------
    arg: preset (string)
        - default: None
        - desc: One of PRESETS

    arg: path (string)
        - default: None
        - desc: key=value configuration file

    arg: assignments (list of string)
        - default: ()
        - desc: 'key=value' overrides applied last
    """
    config = default_config()
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError('unknown preset {!r}; choose from {}'.format(preset, ', '.join(sorted(PRESETS))))
        config.override_from_dict(PRESETS[preset])
    if path is not None:
        config.override_from_dict(load_config_file(path))
    config.parse(assignments)
    return config.check()


def atom_positions(config):
    if (config.j is None) != (config.l is None):
        raise ConfigError('set both j and l, or neither')
    if config.j is not None:
        return config.j, config.l
    if config.d < 0:
        raise ConfigError('d must be >= 0')
    j = -(config.d // 2)
    return j, j + config.d


def r_points(config):
    """Squeezing values of a run: the r_values grid, the single r, or None in (delta_a, eta) mode."""
    if config.r_values is not None:
        return list(config.r_values)
    if config.r is not None:
        return [config.r]
    return [None]


def resolve_params(config, r=None):
    """ Builds SystemParams for one squeezing value of the run

    In r-direct mode eta follows from delta_a (or delta_s cosh 2r when delta_s is
    set) and r. delta_q is explicit or placed Delta above the reference energy of
    this r, and N = 0 selects ceil(40 xi') + max(|j|, |l|) + 10.

    Returns:
        SystemParams
    """
    if r is None:
        r = config.r
    if r is not None and config.eta is not None:
        raise ConfigError('set exactly one of r and eta, not both')
    if r is None and config.eta is None:
        raise ConfigError('set exactly one of r and eta')

    if r is not None:
        delta_a = config.delta_s * math.cosh(2 * r) if config.delta_s is not None else config.delta_a
        eta = drive_amplitude(delta_a, r)
    else:
        if config.delta_s is not None:
            raise ConfigError('delta_s needs r-direct mode')
        delta_a, eta = config.delta_a, config.eta

    j, l = atom_positions(config)
    params = SystemParams(delta_a=delta_a, delta_q=config.delta_q if config.delta_q is not None else 0.0,
                          J=config.J, eta=eta, phi=config.phi, G=config.G, gamma=config.gamma,
                          N=config.N or max(abs(j), abs(l), 1), j=j, l=l, kappa_edge=config.kappa_edge)
    frame = squeezed_frame(params)
    if config.delta_q is None:
        params = operating_point(params, config.Delta, config.detuning_ref)

    if config.N == 0:
        Delta = band_edge_detuning(params.delta_q, frame)
        if Delta > 0:
            xi = localization_length(Delta, frame.J_mod)
        else:
            xi = localization_length(solve_delta(Delta, frame.G_mod, frame.J_mod), frame.J_mod)
        N = int(math.ceil(40 * xi)) + max(abs(j), abs(l)) + AUTO_N_MARGIN
        logger.debug('array half-size N=%d chosen for xi=%.4g', N, xi)
        params = params.replace(N=N)
    return params
