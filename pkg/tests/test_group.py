"""Tests for `group` module."""

import pytest
import numpy as np
from numpy.testing import assert_allclose

# Import module to test
import sumfreetools.group as gp

# Other project specific imports
from sumfreetools._errors import InputError
import sumfreetools._bits as bt


@pytest.mark.parametrize('text, desired', [
    ('Z5', (5,)),
    ('Z4xZ2', (4, 2)),
    ('z4 x z2', (4, 2)),
    ('Z2xZ2xZ3', (2, 2, 3)),
])
def test_parse_group(text, desired):

    # ----- Exercise -----
    actual = gp.parse_group(text)

    # ----- Verify -------
    assert actual.factors == desired


@pytest.mark.parametrize('text', ['Z1', 'Z0xZ3', 'C5', 'Z4x', ''])
def test_parse_group_rejects(text):

    # ----- Verify -------
    with pytest.raises(InputError):
        gp.parse_group(text)


def test_index_is_mixed_radix():

    # ----- Setup --------
    G = gp.parse_group('Z4xZ2')

    # ----- Exercise -----
    actual = [G.index((1, 0)), G.index((3, 1)), G.index((5, 3))]

    # ----- Verify -------
    assert actual == [2, 7, 3]
    assert str(G) == 'Z4xZ2'
    assert str(G.element(7)) == '(3,1)'


def test_parse_element():

    # ----- Setup --------
    G = gp.parse_group('Z4xZ2')

    # ----- Verify -------
    assert G.parse_element('(1,1)') == 3
    assert G.parse_element('6') == 6
    with pytest.raises(InputError):
        G.parse_element('(1,x)')
    with pytest.raises(InputError):
        G.parse_element('8')


def test_group_tables_are_consistent():

    # ----- Setup --------
    G = gp.parse_group('Z6xZ3')
    n = G.order

    # ----- Exercise -----
    table = G.addition_table

    # ----- Verify -------
    assert (table[:, 0] == np.arange(n)).all()
    assert (table[np.arange(n), G.negation] == 0).all()
    assert (G.subtraction_table[table, np.arange(n)[None, :]]
            == np.arange(n)[:, None]).all()


@pytest.mark.parametrize('spec, g, desired', [
    ('Z6', 3, 2),
    ('Z6', 1, 6),
    ('Z6', 0, 1),
    ('Z4xZ2', (1, 1), 4),
    ('Z4xZ2', (2, 1), 2),
])
def test_element_order(spec, g, desired):

    # ----- Exercise -----
    actual = gp.element_order(gp.parse_group(spec), g)

    # ----- Verify -------
    assert actual == desired


@pytest.mark.parametrize('spec, q, desired', [
    ('Z5', 5, 4),
    ('Z6', 2, 1),
    ('Z2xZ2', 2, 3),
    ('Z4xZ2', 2, 3),
    ('Z9', 2, 0),
])
def test_count_elements_of_order(spec, q, desired):

    # ----- Exercise -----
    actual = gp.count_elements_of_order(gp.parse_group(spec), q)

    # ----- Verify -------
    assert actual == desired


@pytest.mark.parametrize('spec, desired', [
    ('Z10', 2),
    ('Z35', 5),
    ('Z9', None),
    ('Z7', None),
    ('Z3xZ11', 11),
])
def test_smallest_typeI_prime(spec, desired):

    # ----- Exercise -----
    actual = gp.smallest_typeI_prime(gp.parse_group(spec))

    # ----- Verify -------
    assert actual == desired


def test_surjective_homs_to_Z5():

    # ----- Setup --------
    G = gp.parse_group('Z5')

    desired = [{2, 3}, {1, 4}, {1, 4}, {2, 3}]

    # ----- Exercise -----
    homs = gp.surjective_homs_to_Zq(G, 5)
    actual = [set(bt.to_indices(h.preimage([2, 3]))) for h in homs]

    # ----- Verify -------
    assert actual == desired


@pytest.mark.parametrize('spec, q, desired', [
    ('Z6', 2, 1),
    ('Z5', 2, 0),
    ('Z4xZ2', 2, 3),
    ('Z6xZ3', 3, 8),
])
def test_surjective_hom_count(spec, q, desired):

    # ----- Exercise -----
    homs = gp.surjective_homs_to_Zq(gp.parse_group(spec), q)

    # ----- Verify -------
    assert len(homs) == desired
    for h in homs:
        assert set(h.images.tolist()) == set(range(q))


def test_surjective_homs_requires_prime():

    # ----- Verify -------
    with pytest.raises(InputError):
        gp.surjective_homs_to_Zq(gp.parse_group('Z8'), 4)


@pytest.mark.parametrize('spec, a, x, desired', [
    ('Z4', 1, 1, 1j),
    ('Z6', 3, 1, -1),
    ('Z6', 0, 5, 1),
    ('Z4xZ2', (0, 1), (3, 1), -1),
])
def test_character_value(spec, a, x, desired):

    # ----- Exercise -----
    actual = gp.character_value(gp.parse_group(spec), a, x)

    # ----- Verify -------
    assert_allclose(actual, desired, atol=1e-12)


def test_character_table_orthogonality():

    # ----- Setup --------
    G = gp.parse_group('Z4xZ6')
    n = G.order

    # ----- Exercise -----
    table = gp.character_table(G)

    # ----- Verify -------
    assert_allclose(table @ table.conj().T, n * np.eye(n), atol=1e-9)


def test_character_range_size():

    # ----- Setup --------
    G = gp.parse_group('Z12')

    # ----- Exercise -----
    chi = gp.Character(G, 8)

    # ----- Verify -------
    assert chi.range_size == 3
    assert len(set(chi.phases.tolist())) == 3


def test_index_two_subgroups():

    # ----- Setup --------
    G = gp.parse_group('Z6')

    # ----- Exercise -----
    actual = [bt.to_indices(h) for h in gp.index_two_subgroups(G)]

    # ----- Verify -------
    assert actual == [[0, 2, 4]]


def test_index_two_subgroups_match_order_two_count():

    # ----- Setup --------
    G = gp.parse_group('Z2xZ4')

    # ----- Exercise -----
    subgroups = gp.index_two_subgroups(G)

    # ----- Verify -------
    assert len(subgroups) == gp.count_elements_of_order(G, 2)
    assert all(bt.popcount(h) == G.order // 2 for h in subgroups)


def test_abelian_groups():

    # ----- Setup --------
    desired = ['Z2', 'Z3', 'Z2xZ2', 'Z4', 'Z5', 'Z6', 'Z7', 'Z2xZ2xZ2', 'Z2xZ4',
               'Z8']

    # ----- Exercise -----
    actual = [str(G) for G in gp.abelian_groups(8)]

    # ----- Verify -------
    assert actual == desired
