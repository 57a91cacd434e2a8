import math

import numpy as np

from qarray.config import parse_grid
from qarray.csvio import format_value, parameter_comment, read_csv, write_csv


def test_format_scalars():
    assert format_value(None) == ''
    assert format_value(True) == 'true'
    assert format_value(3) == '3'
    assert format_value(0.1, digits=3) == '0.1'
    assert format_value(-math.inf) == '-inf'
    assert format_value(np.float64(2.5)) == '2.5'


def test_grids_read_back_through_parse_grid():
    assert format_value([0.0, 0.5, 1.0]) == '0,0.5,1'
    assert format_value(np.array([1.0, 2.0])) == '1,2'
    comment = parameter_comment({'r_values': [0.0, 0.25, 1.0], 'd': 6})
    assert comment == '# d=6 r_values=0,0.25,1'
    value = comment.split('r_values=')[1]
    assert parse_grid(value) == [0.0, 0.25, 1.0]


def test_write_and_read(tmp_path):
    path = str(tmp_path / 'nested' / 'out.csv')
    write_csv(path, ['a', 'b'], [[1, 0.5], [2, None]], {'gamma': 1e-3})
    comment, header, rows = read_csv(path)
    assert comment == '# gamma=0.001'
    assert header == ['a', 'b']
    assert rows == [['1', '0.5'], ['2', '']]
