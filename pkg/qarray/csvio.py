"""Deterministic CSV output: one comment line with the resolved parameters, a header, then rows."""

import csv
import logging
import math
import os

logger = logging.getLogger(__name__)


def format_value(value, digits=17):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        if math.isnan(value):
            return 'nan'
        return '%.*g' % (digits, value)
    if isinstance(value, (list, tuple)):
        # grids read back through parse_grid, so no spaces
        return ','.join(format_value(v, digits) for v in value)
    if hasattr(value, 'dtype'):
        if getattr(value, 'ndim', 0):
            return format_value(value.tolist(), digits)
        return format_value(value.item(), digits)
    return str(value)


def parameter_comment(values, digits=17):
    """'# key=value key=value ...' with keys sorted, so identical inputs give identical lines."""
    return '# ' + ' '.join('{}={}'.format(key, format_value(values[key], digits)) for key in sorted(values))


def write_csv(path, header, rows, parameters, digits=17):
    """ Writes rows to `path`, creating parent directories

    Parameters
    ----------
    arg: header (list of string)
        - desc: Column names

    arg: rows (iterable of lists)
        - desc: Values in header order; floats are written with `digits` significant digits

    arg: parameters (dict)
        - desc: Resolved parameter set recorded in the comment line
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    count = 0
    with open(path, 'w', newline='') as f:
        f.write(parameter_comment(parameters, digits) + '\n')
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError('row has {} values for {} columns'.format(len(row), len(header)))
            writer.writerow([format_value(value, digits) for value in row])
            count += 1
    logger.info('wrote %d rows to %s', count, path)
    return path


def read_csv(path):
    """Returns (comment, header, rows) with every cell as a string."""
    with open(path, newline='') as f:
        comment = f.readline().rstrip('\n')
        reader = csv.reader(f)
        header = next(reader)
        rows = [row for row in reader]
    return comment, header, rows
