"""Tests for `_bits` module."""

import pytest
import numpy as np
from numpy.testing import assert_array_equal

# Import module to test
import sumfreetools._bits as bt


@pytest.mark.parametrize('indices, desired', [
    ([], 0),
    ([0], 1),
    ([1, 3], 0b1010),
    ([3, 1, 3], 0b1010),
    ([70], 1 << 70),
])
def test_from_indices(indices, desired):

    # ----- Exercise -----
    actual = bt.from_indices(indices)

    # ----- Verify -------
    assert actual == desired


def test_to_indices_sorted():

    # ----- Setup --------
    mask = (1 << 65) | 0b10110

    desired = [1, 2, 4, 65]

    # ----- Exercise -----
    actual = bt.to_indices(mask)

    # ----- Verify -------
    assert actual == desired
    assert bt.popcount(mask) == 4


@pytest.mark.parametrize('mask, desired', [
    (0, -1),
    (0b1000, 3),
    (0b1011, 0),
])
def test_lowest_bit(mask, desired):

    # ----- Exercise -----
    actual = bt.lowest_bit(mask)

    # ----- Verify -------
    assert actual == desired


def test_bool_array_conversion():

    # ----- Setup --------
    flags = np.array([True, False, False, True, True])

    # ----- Exercise -----
    mask = bt.from_bool_array(flags)
    actual = bt.to_bool_array(mask, len(flags))

    # ----- Verify -------
    assert mask == 0b11001
    assert_array_equal(actual, flags)


def test_full_mask():

    # ----- Verify -------
    assert bt.full_mask(0) == 0
    assert bt.full_mask(5) == 0b11111
