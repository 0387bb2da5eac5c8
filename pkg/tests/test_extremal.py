"""Tests for `extremal` module."""

from fractions import Fraction

import pytest

# Import module to test
import sumfreetools.extremal as ex

# Other project specific imports
from sumfreetools._errors import InputError, NotTypeIError
from sumfreetools.group import parse_group
from sumfreetools.hypergraph import SchurHypergraph, is_sum_free
import sumfreetools._bits as bt


@pytest.fixture
def z5():
    return parse_group('Z5')


@pytest.mark.parametrize('spec, desired', [
    ('Z5', Fraction(2, 5)),
    ('Z6', Fraction(1, 2)),
    ('Z11', Fraction(4, 11)),
    ('Z4xZ2', Fraction(1, 2)),
])
def test_mu(spec, desired):

    # ----- Exercise -----
    actual = ex.mu(parse_group(spec))

    # ----- Verify -------
    assert actual == desired


def test_mu_not_typeI():

    # ----- Verify -------
    with pytest.raises(NotTypeIError):
        ex.mu(parse_group('Z9'))


@pytest.mark.parametrize('spec, desired', [
    ('Z5', [[1, 4], [2, 3]]),
    ('Z6', [[1, 3, 5]]),
    ('Z4xZ2', [[1, 2, 5, 6], [1, 3, 5, 7], [2, 3, 6, 7]]),
])
def test_enumerate_SF0(spec, desired):

    # ----- Exercise -----
    family = ex.enumerate_SF0(parse_group(spec))

    # ----- Verify -------
    assert family.as_indices() == desired


def test_SF0_members_are_maximum_sum_free(z5):

    # ----- Setup --------
    family = ex.enumerate_SF0(z5)

    # ----- Verify -------
    assert family.set_size == 2
    assert family.to_lines() == ['1 4', '2 3']
    for b in family:
        assert is_sum_free(z5, bt.to_indices(b))


@pytest.mark.parametrize('spec, q, desired', [
    ('Z5', 5, 2),
    ('Z6', 2, 1),
    ('Z11', 11, 5),
    ('Z4xZ2', 2, 3),
    ('Z2xZ2xZ2', 2, 7),
])
def test_sf0_cardinality_check(spec, q, desired):

    # ----- Exercise -----
    report = ex.sf0_cardinality_check(parse_group(spec))

    # ----- Verify -------
    assert report.q == q
    assert report.family_size == desired
    assert report.holds


def test_pairwise_intersection_quarter_law():

    # ----- Setup --------
    family = ex.enumerate_SF0(parse_group('Z4xZ2'))

    # ----- Exercise -----
    report = ex.pairwise_intersection_check(family)

    # ----- Verify -------
    assert report.pairs == 3
    assert report.max_intersection == 2
    assert report.quarter_exact


def test_pairwise_intersection_odd_q(z5):

    # ----- Exercise -----
    report = ex.pairwise_intersection_check(ex.enumerate_SF0(z5))

    # ----- Verify -------
    assert report.max_intersection == 0
    assert report.ceiling == Fraction(8, 5)
    assert report.quarter_exact is None


def test_pairwise_intersection_single_member():

    # ----- Exercise -----
    report = ex.pairwise_intersection_check(ex.enumerate_SF0(parse_group('Z6')))

    # ----- Verify -------
    assert report.pairs == 0
    assert report.holds


def test_delta_H_B(z5):

    # ----- Setup --------
    H = SchurHypergraph(z5)

    # ----- Exercise -----
    actual = ex.delta_H_B(H, [2, 3])

    # ----- Verify -------
    assert actual == 1
    assert ex.delta_H_family(H, ex.enumerate_SF0(z5)) == 1


def test_delta_H_B_needs_outside_vertex(z5):

    # ----- Verify -------
    with pytest.raises(InputError):
        ex.delta_H_B(SchurHypergraph(z5), range(5))


@pytest.mark.parametrize('spec', ['Z5', 'Z8', 'Z11', 'Z2xZ2xZ2', 'Z5xZ5'])
def test_sumset_cover_check(spec):

    # ----- Setup --------
    G = parse_group(spec)

    # ----- Verify -------
    assert ex.sumset_cover_check(G, ex.enumerate_SF0(G))


def test_exhaustive_profile(z5):

    # ----- Exercise -----
    profile = ex.stability_profile(z5)

    # ----- Verify -------
    assert len(profile) == 32
    assert profile.edge_count == 6
    assert profile.frontier == [(0, 0)]
    assert profile.normalized_frontier == [(0.0, 0.0)]


def test_profile_size_floor(z5):

    # ----- Exercise -----
    profile = ex.stability_profile(z5, min_size_fraction=0.6)

    # ----- Verify -------
    assert len(profile) == 16
    assert min(row[0] for row in profile.rows) == 3


def test_profile_workers_do_not_change_rows():

    # ----- Setup --------
    G = parse_group('Z8')

    # ----- Exercise -----
    serial = ex.stability_profile(G, min_size_fraction=0.5)
    parallel = ex.stability_profile(G, min_size_fraction=0.5, workers=2)

    # ----- Verify -------
    assert serial.rows == parallel.rows


def test_sample_profile_is_seeded(z5):

    # ----- Exercise -----
    first = ex.stability_profile(z5, mode='sample', count=50, seed=3)
    second = ex.stability_profile(z5, mode='sample', count=50, seed=3)

    # ----- Verify -------
    assert len(first) == 50
    assert first.rows == second.rows


def test_profile_rejects():

    # ----- Verify -------
    with pytest.raises(InputError):
        ex.stability_profile(parse_group('Z17'))
    with pytest.raises(InputError):
        ex.stability_profile(parse_group('Z5'), mode='greedy')
    with pytest.raises(InputError):
        ex.stability_profile(parse_group('Z5'), mode='sample', seed=1,
                             min_size_fraction=1.5)
    with pytest.raises(InputError):
        ex.stability_profile(parse_group('Z5'), mode='sample', seed=1, count=-1)


def test_profile_merge(z5):

    # ----- Setup --------
    first = ex.stability_profile(z5, mode='sample', count=5, seed=1)
    second = ex.stability_profile(z5, mode='sample', count=7, seed=2)

    # ----- Exercise -----
    merged = first.merge(second)

    # ----- Verify -------
    assert len(merged) == 12
    with pytest.raises(InputError):
        first.merge(ex.StabilityProfile(6, 1))


def test_find_stability_witness(z5):

    # ----- Setup --------
    profile = ex.stability_profile(z5)

    # ----- Exercise -----
    actual = ex.find_stability_witness(profile, 0.4, 0.05)

    # ----- Verify -------
    assert actual == Fraction(2, 5)


def test_witness_zero_when_every_large_set_is_dense():

    # ----- Setup --------
    profile = ex.StabilityProfile(5, 6, ((5, 6, 3), (4, 4, 2)))

    # ----- Exercise -----
    actual = ex.sweep_stability_witnesses(profile, 0.8, [0.1, 0.5])

    # ----- Verify -------
    assert actual == [(0.1, Fraction(0)), (0.5, Fraction(0))]
