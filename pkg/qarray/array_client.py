#!/usr/bin/env python3

import logging
import os

import numpy as np
from termcolor import colored

from qarray.boundstate import bound_state, lattice_bound_state
from qarray.config import build_config, r_points, resolve_params
from qarray.csvio import write_csv
from qarray.dynamics import (evolve_effective, evolve_lattice, lattice_initial_state, product_state,
                             pure_density_matrix)
from qarray.errors import ConfigError, NoBoundStateError, ValidationFailure
from qarray.fockcheck import REPORT_COLUMNS, FockConfig, frame_comparison
from qarray.interaction import (SWEEP_COLUMNS, atom_atom_coupling, cooperativity_crossing, coupling_sweep,
                                protocol_times, sweep_diagnostics)
from qarray.log import announce
from qarray.model import BAND_EDGE, band_edge_detuning, band_edges, squeezed_frame
from qarray.workers import parallel_map

logger = logging.getLogger(__name__)

PROFILE_COLUMNS = ['r', 'offset', 'c_n', 'abs_c_n']
SUMMARY_COLUMNS = ['r', 'Delta', 'delta', 'xi', 'G_e', 'Delta_e', 'xi_dispersive',
                   'oracle_delta', 'oracle_delta_error', 'oracle_Delta_e', 'oracle_atomic_weight',
                   'eta', 'delta_q', 'band_lower', 'band_upper', 'N']
DIAGNOSTIC_COLUMNS = ['quantity', 'key', 'value']


class CavityArrayClient(object):
    def __init__(self, config=None, out_dir='.', progress=False):
        """
        Attributes
        ----------
        attr: config (RunConfig)
        - default: None
        - desc: Resolved run configuration; the defaults are used when None

        attr: out_dir (string)
        - default: '.'
        - desc: Directory the CSV files are written to

        attr: progress (bool)
        - default: False
        - desc: Shows tqdm bars for sweeps

        Methods
        -------
        resolve_params(r : float) -> SystemParams
        bound_state(r : float) -> (SystemParams, BoundState, LatticeBoundState or None)
        bound_state_table() -> (profile rows, summary rows)
        coupling_table() -> list of SweepRow
        coupling_diagnostics(rows : list of SweepRow) -> list of rows
        evolve() -> dict of engine name to TimeSeries
        validate() -> DeviationReport
        write_boundstate() / write_coupling() / write_evolve() / write_validate() -> list of paths
        """
        self.config = config if config is not None else build_config(preset='fig2')
        self.out_dir = out_dir
        self.progress = progress

    def resolve_params(self, r=None):
        return resolve_params(self.config, r)

    def _path(self, filename):
        return os.path.join(self.out_dir, filename)

    def bound_state(self, r=None):
        """ Analytic bound state for one squeezing value, plus the finite-array oracle when enabled

        Parameters
        ----------
        arg: r (float)
            - default: None
            - desc: Squeezing of this point; None uses the configured r or eta

        Returns:
            (SystemParams, BoundState, LatticeBoundState or None)
        """
        params = self.resolve_params(r)
        frame = squeezed_frame(params)
        Delta = band_edge_detuning(params.delta_q, frame)
        state = bound_state(Delta, frame.G_mod, frame.J_mod, radius=self.config.radius,
                            upper_band_edge=frame.upper_band_edge)
        oracle = None
        if self.config.oracle:
            try:
                oracle = lattice_bound_state(params, frame)
            except NoBoundStateError as e:
                logger.warning('finite-array oracle at r=%.4g: %s', frame.r, e)
        return params, state, oracle

    def bound_state_table(self):
        points = r_points(self.config)
        results = parallel_map(self.bound_state, points, desc='bound states', progress=self.progress)
        profile, summary = [], []
        for point, (params, state, oracle) in zip(points, results):
            frame = squeezed_frame(params)
            r = point if point is not None else frame.r
            for offset, c in zip(state.offsets.tolist(), state.amplitudes.tolist()):
                profile.append([r, offset, c, abs(c)])
            row = [r, state.delta_dispersive, state.delta, state.xi, state.G_e, state.Delta_e,
                   state.xi_dispersive]
            if oracle is not None:
                row += [oracle.delta, oracle.delta - state.delta, oracle.Delta_e_sum_rule, oracle.atomic_weight]
            else:
                row += [None, None, None, None]
            lower, upper = band_edges(frame)
            summary.append(row + [params.eta, params.delta_q, lower, upper, params.N])
        return profile, summary

    def _sweep_Delta(self):
        if self.config.delta_q is not None or self.config.detuning_ref != BAND_EDGE:
            raise ConfigError('coupling sweeps hold Delta fixed above the band edge; '
                              'unset delta_q and use detuning_ref = band_edge')
        return self.config.Delta

    def coupling_table(self):
        config = self.config
        d_values = [int(d) for d in config.d_values] if config.d_values is not None else [config.d]
        if config.r is None and config.r_values is None:
            params = self.resolve_params()
            frame = squeezed_frame(params)
            r_values = [frame.r]
            Delta = band_edge_detuning(params.delta_q, frame)
        else:
            r_values = r_points(config)
            Delta = self._sweep_Delta()
        rows = coupling_sweep(r_values, d_values, Delta=Delta, J=config.J, G=config.G, gamma=config.gamma,
                              exact_delta=config.exact_delta, delta_a=config.delta_a, progress=self.progress)
        for d in d_values:
            crossing = cooperativity_crossing(rows, d)
            if crossing is not None:
                announce('Cooperativity C = 1 at d={}'.format(d), 'r = {:.4f}'.format(crossing))
        if len(r_values) > 1:
            for d, increasing in sweep_diagnostics(rows)['monotone_in_r'].items():
                status = colored('yes', 'green') if increasing else colored('no', 'red')
                announce('|G_lj| increasing in r at d={}'.format(d), status)
        return rows

    def coupling_diagnostics(self, rows):
        """ Flattens sweep_diagnostics into (quantity, key, value) rows

        Returns:
            'monotone_in_r' rows keyed by d, then 'decay_factor' rows keyed by r
        """
        diagnostics = sweep_diagnostics(rows)
        table = [['monotone_in_r', d, flag] for d, flag in sorted(diagnostics['monotone_in_r'].items())]
        table += [['decay_factor', r, factor] for r, factor in sorted(diagnostics['decay_factor'].items())]
        return table

    def _time_grid(self, G_lj):
        t_max = self.config.t_max
        if t_max is None:
            t_ent, _ = protocol_times(G_lj)
            t_max = 3 * t_ent
        return np.linspace(0.0, t_max, self.config.n_points)

    def evolve(self):
        """ Runs the effective two-qubit model and/or the full single-excitation lattice

        Returns:
            Dict mapping 'effective' and/or 'lattice' to a TimeSeries
        """
        config = self.config
        params = self.resolve_params()
        frame = squeezed_frame(params)
        Delta = band_edge_detuning(params.delta_q, frame)
        G_lj = atom_atom_coupling(Delta, frame.G_mod, frame.J_mod, params.separation,
                                  exact_delta=config.exact_delta)
        t = self._time_grid(G_lj)
        announce('Photon-mediated coupling G_lj', '{:.6g}'.format(G_lj))

        results = {}
        if config.engine in ('effective', 'both'):
            rho0 = pure_density_matrix(product_state(config.alpha1, config.alpha2))
            series, _ = evolve_effective(G_lj, params.gamma, rho0, t, d=params.separation)
            results['effective'] = series
        if config.engine in ('lattice', 'both'):
            psi0 = lattice_initial_state(params, atoms=2, alpha1=config.alpha1, alpha2=config.alpha2)
            results['lattice'] = evolve_lattice(params, frame, psi0, t, atoms=2, method=config.lattice_method)
        for name, series in results.items():
            announce('Max fidelity_S ({})'.format(name), '{:.6f}'.format(series.max('fidelity_S')))
        return results

    def fock_config(self):
        config = self.config
        return FockConfig(n_sites=config.fock_n_sites, n_max=config.fock_n_max, t_max=config.fock_t_max,
                          dt=config.fock_dt, n_atoms=config.fock_n_atoms, truncation_tol=config.truncation_tol,
                          threshold=config.threshold, ratio_min=config.ratio_min)

    def validate(self):
        report = frame_comparison(self.resolve_params(), self.fock_config(), force=self.config.force)
        status = colored('passed', 'green') if report.passed else colored('failed', 'red')
        announce('Frame mapping deviation {:.3e}'.format(report.max_dev), status)
        return report

    def _parameters(self, params=None):
        values = self.config.values()
        if params is not None:
            values.update({'resolved_' + key: value for key, value in params.values().items()})
        return values

    def _resolved_parameters(self):
        # r-dependent values (eta, delta_q, N) are also written per row
        return self._parameters(self.resolve_params(r_points(self.config)[0]))

    def write_boundstate(self):
        profile, summary = self.bound_state_table()
        digits = self.config.digits
        parameters = self._resolved_parameters()
        return [
            write_csv(self._path('boundstate.csv'), PROFILE_COLUMNS, profile, parameters, digits),
            write_csv(self._path('boundstate_summary.csv'), SUMMARY_COLUMNS, summary, parameters, digits),
        ]

    def write_coupling(self):
        rows = self.coupling_table()
        digits = self.config.digits
        parameters = self._resolved_parameters()
        return [
            write_csv(self._path('coupling.csv'), SWEEP_COLUMNS, [row.as_list() for row in rows], parameters,
                      digits),
            write_csv(self._path('coupling_diagnostics.csv'), DIAGNOSTIC_COLUMNS, self.coupling_diagnostics(rows),
                      parameters, digits),
        ]

    def write_evolve(self):
        results = self.evolve()
        parameters = self._parameters(self.resolve_params())
        paths = []
        for name, series in results.items():
            header = ['t'] + series.names
            paths.append(write_csv(self._path('evolve_{}.csv'.format(name)), header, series.rows(), parameters,
                                   self.config.digits))
        return paths

    def write_validate(self):
        """Writes the deviation report; raises ValidationFailure after writing when the deviation is too large."""
        params = self.resolve_params()
        report = self.validate()
        path = write_csv(self._path('fockcheck.csv'), REPORT_COLUMNS, [report.as_list()],
                         self._parameters(params), self.config.digits)
        if not report.passed:
            raise ValidationFailure('frame mapping deviation {:.3e} exceeds threshold {:.3g}'.format(
                report.max_dev, report.threshold))
        return [path]
