import logging
import sys

from termcolor import colored

LEVEL_COLORS = {
    logging.DEBUG: 'blue',
    logging.INFO: 'cyan',
    logging.WARNING: 'yellow',
    logging.ERROR: 'red',
    logging.CRITICAL: 'red',
}


class ColoredFormatter(logging.Formatter):
    """Formatter that colours the level name the way the console status lines are coloured."""

    def format(self, record):
        record = logging.makeLogRecord(record.__dict__)
        color = LEVEL_COLORS.get(record.levelno, 'white')
        record.levelname = colored(record.levelname, color, attrs=['bold'])
        return super().format(record)


def configure_logging(verbosity=0, stream=None):
    """ Installs a single coloured handler on the `qarray` logger

    Parameters
    ----------
    arg: verbosity (int)
        - default: 0
        - desc: 0 shows warnings, 1 adds info, 2 and above adds debug output

    arg: stream (file object)
        - default: None
        - desc: Destination of the log records, `sys.stderr` when None
    """
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG

    logger = logging.getLogger('qarray')
    for handler in list(logger.handlers):
        if getattr(handler, '_qarray_handler', False):
            logger.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(ColoredFormatter('%(levelname)s %(name)s: %(message)s'))
    handler._qarray_handler = True
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger


def announce(label, status, color='cyan', stream=None):
    """Prints one console status line, label left and status right."""
    line = '{0:<60}{1:<20}'.format(colored(label, color, attrs=['bold']), status)
    print(line, file=stream or sys.stdout)
