"""Tests for `experiments` module."""

import warnings

import pytest

# Import module to test
import sumfreetools.experiments as xp

# Other project specific imports
from sumfreetools._errors import InputError, ClaimViolation, FindingWarning


@pytest.mark.parametrize('number, check', xp.CHECKS,
                         ids=[check.__name__ for _, check in xp.CHECKS])
def test_quick_checks_pass(number, check):

    # ----- Exercise -----
    record = check('quick', seed=0)

    # ----- Verify -------
    assert record['passed']
    assert record['criterion'] == number


def test_delta_claim_reports_q2_groups():

    # ----- Exercise -----
    record = xp.check_delta_claim('quick')

    # ----- Verify -------
    assert record['groups'] > 0
    assert 'Z4' in record['q2_report']


def test_encode_decode_runs_main_algorithm():

    # ----- Exercise -----
    with warnings.catch_warnings():
        warnings.simplefilter('error', FindingWarning)
        record = xp.check_encode_decode('quick', seed=1)

    # ----- Verify -------
    assert record['basic_runs'] > 0
    assert record['main_runs'] == xp.SCALES['quick']['main_runs']
    # beta <= 0.2 and C <= 2 never reach C >= 3 / beta^7
    assert record['size_claim_unchecked'] == record['main_runs']
    assert set(record['case2_steps']) == {'case2a', 'case2b', 'case2_fallback'}


def test_encode_decode_fails_short_of_main_runs(monkeypatch):

    # ----- Setup --------
    monkeypatch.setattr(xp, '_resolved_params', lambda G, m, rng: None)

    # ----- Verify -------
    with pytest.raises(ClaimViolation, match='of 20 runs'):
        xp.check_encode_decode('quick', seed=0)


def test_bonferroni_trend_quiet_for_Z20(monkeypatch):

    # ----- Setup --------
    monkeypatch.setitem(xp.SCALES['quick'], 'bonferroni_k', (10,))

    # ----- Exercise -----
    with warnings.catch_warnings():
        warnings.simplefilter('error', FindingWarning)
        record = xp.check_bonferroni('quick')

    # ----- Verify -------
    assert [row['m'] for row in record['rows']] == list(range(1, 11))
    assert all(row['ratio'] >= 1 for row in record['rows'])


def test_run_battery_subset():

    # ----- Setup --------
    lines = []

    # ----- Exercise -----
    records = xp.run_battery('quick', seed=0, only=[1, 10], progress=lines.append)

    # ----- Verify -------
    assert [r['criterion'] for r in records] == [1, 10]
    assert len(lines) == 2
    assert lines[0].startswith('[1] check_sf0_exactness')


def test_run_battery_rejects_unknown_scale():

    # ----- Verify -------
    with pytest.raises(InputError):
        xp.run_battery('huge')
