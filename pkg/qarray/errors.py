"""Exceptions raised by qarray. Each carries the exit code the CLI reports."""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PHYSICS = 2
EXIT_VALIDATION = 3


class QArrayError(Exception):
    exit_code = EXIT_PHYSICS


class ParameterError(QArrayError, ValueError):
    pass


class UnstableDriveError(ParameterError):
    def __init__(self, delta_a, eta):
        self.delta_a = delta_a
        self.eta = eta
        super().__init__(
            'unstable drive: 2*eta = {} >= delta_a = {} (no stable squeezed frame)'.format(2 * eta, delta_a))


class NotDispersiveError(ParameterError):
    def __init__(self, Delta):
        self.Delta = Delta
        super().__init__('not dispersive: Delta = {} must be > 0'.format(Delta))


class SolverError(QArrayError):
    def __init__(self, message, residual=None):
        self.residual = residual
        if residual is not None:
            message = '{} (residual {:.3e})'.format(message, residual)
        super().__init__(message)


class NoBoundStateError(QArrayError):
    def __init__(self, detail=''):
        message = 'no bound state resolved'
        if detail:
            message += ': ' + detail
        super().__init__(message)


class InfiniteCooperativityError(QArrayError):
    def __init__(self):
        super().__init__('infinite cooperativity: gamma = 0')


class UndefinedTimeError(QArrayError):
    def __init__(self):
        super().__init__('protocol time undefined for G_lj = 0')


class IntegratorError(QArrayError):
    pass


class DimensionError(QArrayError):
    pass


class TruncationError(ParameterError):
    pass


class ConfigError(QArrayError):
    exit_code = EXIT_USAGE


class RegimeError(QArrayError):
    exit_code = EXIT_VALIDATION

    def __init__(self, report):
        self.report = report
        super().__init__(
            'regime check failed: 2*delta_s/J_mod = {:.4g}, (delta_s+delta_q)/G_mod = {:.4g}, required > {:.4g}'.format(
                report.ratio_hopping, report.ratio_coupling, report.ratio_min))


class ValidationFailure(QArrayError):
    exit_code = EXIT_VALIDATION
