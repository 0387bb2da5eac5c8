"""Tests for `_report`, `_parallel` and `_plot` modules."""

import json
import math
from fractions import Fraction

import pytest
import numpy as np

# Import modules to test
import sumfreetools._report as rp
import sumfreetools._parallel as par
import sumfreetools._plot as pl

# Other project specific imports
from sumfreetools.group import parse_group
from sumfreetools.extremal import stability_profile
from sumfreetools.spectral import Spectrum, SuSReport


def _square(x):
    return x * x


def test_json_safe_conversions():

    # ----- Setup --------
    record = {'ratio': Fraction(2, 5), 'values': np.array([1, 2]),
              'count': np.int64(3), 'missing': math.nan, 'members': {3, 1},
              1: (True, None)}

    desired = {'ratio': '2/5', 'values': [1, 2], 'count': 3, 'missing': None,
               'members': [1, 3], '1': [True, None]}

    # ----- Exercise -----
    actual = rp.json_safe(record)

    # ----- Verify -------
    assert actual == desired


def test_json_safe_dataclass():

    # ----- Setup --------
    report = SuSReport(True, -1.0, -1.0, 0.0, -1.9, 0.0, True)

    # ----- Exercise -----
    actual = rp.json_safe(report)

    # ----- Verify -------
    assert actual['lambda_S'] == -1.0
    assert actual['conclusion_holds'] is True


def test_format_json_is_sorted_and_versioned():

    # ----- Exercise -----
    text = rp.format_json({'b': 1, 'a': Fraction(1, 2)})

    # ----- Verify -------
    assert json.loads(text) == {'schema': 1, 'a': '1/2', 'b': 1}
    assert text.index('"a"') < text.index('"b"') < text.index('"schema"')
    assert text.endswith('\n')


def test_format_json_wraps_non_dict():

    # ----- Exercise -----
    text = rp.format_json([1, 2])

    # ----- Verify -------
    assert json.loads(text) == {'schema': 1, 'result': [1, 2]}


def test_format_csv():

    # ----- Setup --------
    rows = [{'n': 5, 'm': 2, 'ratio': 1.0}, {'n': 5, 'm': 3, 'ratio': None},
            (6, 1, Fraction(5, 3))]

    desired = '# schema=1\nn,m,ratio\n5,2,1.0\n5,3,\n6,1,5/3\n'

    # ----- Exercise -----
    actual = rp.format_csv(('n', 'm', 'ratio'), rows)

    # ----- Verify -------
    assert actual == desired


def test_parse_csv():

    # ----- Exercise -----
    header, rows = rp.parse_csv('# schema=1\nset,elements\n0,1 4\n1,2 3\n')

    # ----- Verify -------
    assert header == ['set', 'elements']
    assert rows == [['0', '1 4'], ['1', '2 3']]


def test_emit(tmp_path, capsys):

    # ----- Setup --------
    path = tmp_path / 'out.txt'

    # ----- Exercise -----
    rp.emit('to stdout\n')
    rp.emit('to file\n', path)

    # ----- Verify -------
    assert capsys.readouterr().out == 'to stdout\n'
    assert path.read_text() == 'to file\n'


@pytest.mark.parametrize('workload, requested, desired', [
    (0, 4, 1),
    (1, 8, 1),
    ([1, 2, 3], 1, 1),
    (10, 2, None),
])
def test_worker_count(workload, requested, desired):

    # ----- Exercise -----
    actual = par.worker_count(workload, requested)

    # ----- Verify -------
    if desired is None:
        assert 1 <= actual <= 2
    else:
        assert actual == desired


@pytest.mark.parametrize('workers', [1, 2])
def test_ordered_map(workers):

    # ----- Exercise -----
    actual = par.ordered_map(_square, range(7), workers)

    # ----- Verify -------
    assert actual == [0, 1, 4, 9, 16, 25, 36]


def test_plots_are_written(tmp_path):

    # ----- Setup --------
    spectrum = Spectrum((2.0, 0.5, -1.0), 'dense_solver')
    profile = stability_profile(parse_group('Z5'))
    rows = [{'m': 1, 'ratio': 2.0}, {'m': 2, 'ratio': 1.0}, {'m': 3, 'ratio': None}]

    # ----- Exercise -----
    pl.plot_spectrum(spectrum, tmp_path / 'spectrum.png')
    pl.plot_frontier(profile, tmp_path / 'frontier.png')
    pl.plot_count_ratios(rows, tmp_path / 'ratios.png')

    # ----- Verify -------
    for name in ('spectrum.png', 'frontier.png', 'ratios.png'):
        assert (tmp_path / name).stat().st_size > 0
