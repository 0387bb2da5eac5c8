"""Tests for `spectral` module."""

import math
import warnings

import pytest
import numpy as np
from numpy.testing import assert_allclose

# Import module to test
import sumfreetools.spectral as sp

# Other project specific imports
from sumfreetools._errors import InputError, FindingWarning
from sumfreetools.group import parse_group, abelian_groups
from sumfreetools.hypergraph import cayley_graph_star, graph_from_name
from sumfreetools.counting import independence_number


@pytest.mark.parametrize('spec, S, desired', [
    ('Z4', [1], -1.0),
    ('Z3', [1], -0.5),
    ('Z6', [3], -1.0),
    ('Z5', [2, 3], 2 * math.cos(4 * math.pi / 5)),
])
def test_lambda_S(spec, S, desired):

    # ----- Exercise -----
    actual = sp.lambda_S(parse_group(spec), S)

    # ----- Verify -------
    assert actual == pytest.approx(desired)


def test_lambda_S_rejects_zero():

    # ----- Verify -------
    with pytest.raises(InputError):
        sp.lambda_S(parse_group('Z5'), [0, 1])


def test_lambda_I_chi():

    # ----- Setup --------
    G = parse_group('Z6')

    # ----- Verify -------
    assert sp.lambda_I_chi(G, [1, 3, 5], 3) == pytest.approx(-3.0)
    assert sp.lambda_I_chi(G, [1, 3, 5], 0) == pytest.approx(3.0)


def test_analytic_spectrum_of_cycle():

    # ----- Setup --------
    G = parse_group('Z12')

    desired = np.sort(2 * np.cos(2 * np.pi * np.arange(12) / 12))[::-1]

    # ----- Exercise -----
    spectrum = sp.cayley_spectrum_analytic(G, [1, 11])

    # ----- Verify -------
    assert spectrum.source == 'character_analytic'
    assert_allclose(spectrum.eigenvalues, desired, atol=1e-12)
    assert spectrum.largest == pytest.approx(2.0)
    assert spectrum.second_eigenvalue == pytest.approx(2.0)


def test_analytic_spectrum_order_two_generator():

    # ----- Exercise -----
    spectrum = sp.cayley_spectrum_analytic(parse_group('Z6'), [3])

    # ----- Verify -------
    assert_allclose(spectrum.eigenvalues, [1, 1, 1, -1, -1, -1], atol=1e-12)


def test_analytic_spectrum_directed():

    # ----- Setup --------
    desired = np.sort(np.cos(2 * np.pi * np.arange(5) / 5))[::-1]

    # ----- Exercise -----
    spectrum = sp.cayley_spectrum_analytic(parse_group('Z5'), [1], symmetrized=False)

    # ----- Verify -------
    assert_allclose(spectrum.eigenvalues, desired, atol=1e-12)


@pytest.mark.parametrize('name, desired', [
    ('K3,3', [3, 0, 0, 0, 0, -3]),
    ('K3', [2, -1, -1]),
])
def test_dense_spectrum(name, desired):

    # ----- Exercise -----
    spectrum = sp.dense_symmetric_spectrum(graph_from_name(name))

    # ----- Verify -------
    assert spectrum.source == 'dense_solver'
    assert_allclose(spectrum.eigenvalues, desired, atol=1e-9)


def test_dense_spectrum_rejects():

    # ----- Verify -------
    with pytest.raises(InputError):
        sp.dense_symmetric_spectrum(np.array([[0, 1], [0, 0]]))
    with pytest.raises(InputError):
        sp.dense_symmetric_spectrum(np.zeros((2, 3)))


@pytest.mark.parametrize('G', [G for G in abelian_groups(24) if G.order >= 3][::3],
                         ids=str)
def test_analytic_matches_dense(G):

    # ----- Setup --------
    rng = np.random.default_rng(G.order)

    for _ in range(5):
        size = rng.integers(1, G.order)
        S = rng.choice(np.arange(1, G.order), size=min(size, 4), replace=False)

        # ----- Exercise -----
        analytic = sp.cayley_spectrum_analytic(G, S)
        dense = sp.dense_symmetric_spectrum(cayley_graph_star(G, S))

        # ----- Verify -------
        assert_allclose(analytic.eigenvalues, dense.eigenvalues, atol=1e-8)


def test_alon_chung_equality_cases():

    # ----- Setup --------
    graph = graph_from_name('K3,3')

    # ----- Verify -------
    assert sp.alon_chung_slack(graph, [0, 1, 2]) == pytest.approx(0, abs=1e-9)
    assert sp.alon_chung_slack(graph, range(6)) == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize('n, S', [
    (8, [1]),
    (10, [1, 3]),
    (12, [2, 5]),
    (11, [1, 2, 4]),
])
def test_alon_chung_min_slack_is_nonnegative(n, S):

    # ----- Setup --------
    graph = cayley_graph_star(parse_group(f'Z{n}'), S)

    # ----- Exercise -----
    actual = sp.alon_chung_min_slack(graph)

    # ----- Verify -------
    assert actual >= -1e-9


def test_alon_chung_needs_regular_graph():

    # ----- Verify -------
    with pytest.raises(InputError):
        sp.alon_chung_slack(graph_from_name('P4'), [0])


def test_blowup_t1_is_complete_bipartite():

    # ----- Exercise -----
    graph = sp.blowup_graph(1, 3, 3, seed=0)

    # ----- Verify -------
    assert graph.edge_count == 9
    assert graph.is_regular() == 3
    assert independence_number(graph) == 3


@pytest.mark.parametrize('t, part_size, d', [(1, 4, 2), (2, 4, 4), (2, 6, 6),
                                             (3, 3, 3)])
def test_blowup_spectrum_and_independence(t, part_size, d):

    # ----- Exercise -----
    graph = sp.blowup_graph(t, part_size, d, seed=7)
    spectrum = sp.dense_symmetric_spectrum(graph)
    alpha = independence_number(graph)

    # ----- Verify -------
    assert len(graph) == (t + 1) * part_size
    assert graph.is_regular() == d
    assert spectrum.largest == pytest.approx(d)
    assert spectrum.contains(-d / t)
    assert alpha >= part_size
    if spectrum.smallest >= -d / t - 1e-8:
        assert alpha == part_size


def test_blowup_is_seeded():

    # ----- Verify -------
    assert sp.blowup_graph(2, 5, 4, seed=3) == sp.blowup_graph(2, 5, 4, seed=3)


@pytest.mark.parametrize('args', [(2, 4, 3), (1, 2, 3), (0, 3, 3)])
def test_blowup_rejects(args):

    # ----- Verify -------
    with pytest.raises(InputError):
        sp.blowup_graph(*args, seed=0)


def test_arc_concentration_Z6():

    # ----- Exercise -----
    report = sp.arc_concentration(parse_group('Z6'), [1, 3, 5], 1)

    # ----- Verify -------
    assert report.k == 6
    assert report.mass == 1
    assert report.max_arc_size == 1
    assert report.best_center == pytest.approx(math.pi / 3)


def test_arc_concentration_single_root():

    # ----- Exercise -----
    report = sp.arc_concentration(parse_group('Z6'), [1, 4], 2)

    # ----- Verify -------
    assert report.k == 3
    assert report.mass == report.size == 2


@pytest.mark.parametrize('spec', ['Z12', 'Z9', 'Z4xZ6', 'Z15'])
def test_arc_size_at_most_a_third(spec):

    # ----- Setup --------
    G = parse_group(spec)

    # ----- Verify -------
    for a in range(1, G.order):
        report = sp.arc_concentration(G, range(G.order), a)
        if report.k >= 3:
            assert 3 * report.max_arc_size <= G.order


def test_arc_concentration_rejects_trivial_character():

    # ----- Verify -------
    with pytest.raises(InputError):
        sp.arc_concentration(parse_group('Z6'), [1], 0)


def test_eq_case2_bound_trivial_cases():

    # ----- Setup --------
    G = parse_group('Z12')

    # ----- Exercise -----
    whole = sp.eq_case2_bound(G, [1, 2, 7], 5, 0)
    single = sp.eq_case2_bound(G, [5], 1, 0)

    # ----- Verify -------
    assert whole.precondition_met and whole
    assert single.modulus == pytest.approx(1.0)
    assert single.bound == pytest.approx(1.0)


def test_eq_case2_bound_with_measured_c():

    # ----- Setup --------
    G = parse_group('Z12')
    rng = np.random.default_rng(5)

    for _ in range(50):
        I = sorted(rng.choice(12, size=rng.integers(2, 8), replace=False).tolist())
        a = int(rng.integers(1, 12))
        arcs = sp.arc_concentration(G, I, a)
        c = 1 - arcs.mass / len(I)

        # ----- Exercise -----
        report = sp.eq_case2_bound(G, I, a, c)

        # ----- Verify -------
        assert report.precondition_met
        assert report.holds


def test_eq_case2_bound_warns_without_precondition():

    # ----- Verify -------
    with pytest.warns(FindingWarning):
        report = sp.eq_case2_bound(parse_group('Z12'), [5], 1, 0.5)
    assert not report.precondition_met


def test_sample_whole_set():

    # ----- Setup --------
    G = parse_group('Z5')

    # ----- Exercise -----
    report = sp.sample_S_for_lambda(G, [2, 3], eps=1, delta=0.1, trials=3, seed=0)

    # ----- Verify -------
    assert report.found == (2, 3)
    assert report.first_success == 0
    assert report.success_rate == 1.0


def test_sample_without_trials():

    # ----- Exercise -----
    report = sp.sample_S_for_lambda(parse_group('Z5'), [2, 3], 0.5, 0.1, trials=0,
                                    seed=0)

    # ----- Verify -------
    assert report.found is None
    assert report.success_rate == 0.0


def test_sample_is_independent_of_workers():

    # ----- Setup --------
    G = parse_group('Z11')
    I = [4, 5, 6, 7]

    # ----- Exercise -----
    serial = sp.sample_S_for_lambda(G, I, 0.5, 0.1, trials=130, seed=11)
    parallel = sp.sample_S_for_lambda(G, I, 0.5, 0.1, trials=130, seed=11,
                                      workers=2)

    # ----- Verify -------
    assert serial == parallel
    assert serial.precondition_met
    assert serial.size == 2
    assert 0 <= serial.successes <= 130


def test_sample_rejects_empty_sample():

    # ----- Verify -------
    with pytest.raises(InputError):
        sp.sample_S_for_lambda(parse_group('Z5'), [], 0.5, 0.1, trials=1, seed=0)


def test_lemma_SuS_symmetric():

    # ----- Exercise -----
    report = sp.lemma_SuS_check(parse_group('Z5'), [2, 3], 0.1)

    # ----- Verify -------
    assert report.precondition_met
    assert report.conclusion_holds
    assert report.lambda_symmetric == pytest.approx(report.lambda_S)
    assert report.lambda_rest == 0.0
    assert report.residual == pytest.approx(0.0, abs=1e-12)


def test_lemma_SuS_random_asymmetric():

    # ----- Setup --------
    G = parse_group('Z12')
    rng = np.random.default_rng(2)

    with warnings.catch_warnings():
        warnings.simplefilter('ignore', FindingWarning)
        for _ in range(100):
            S = rng.choice(np.arange(1, 12), size=rng.integers(1, 6), replace=False)

            # ----- Exercise -----
            report = sp.lemma_SuS_check(G, S, 0.3)

            # ----- Verify -------
            assert report.residual >= -1e-9
            if report.precondition_met:
                assert report.conclusion_holds


@pytest.mark.parametrize('spec, I, delta, desired', [
    ('Z6', [1, 5], 0.5, 'below'),
    ('Z6', [1, 3, 5], 0.5, 'below'),
    ('Z6', [0, 2, 4], 0.5, 'above'),
    ('Z5', [1, 4], 0.5, 'above'),
])
def test_classify_SF(spec, I, delta, desired):

    # ----- Exercise -----
    actual = sp.classify_SF(parse_group(spec), I, delta)

    # ----- Verify -------
    assert actual == desired


def test_star_mode_deviation():

    # ----- Exercise -----
    actual = sp.star_mode_deviation(parse_group('Z6'), [1])

    # ----- Verify -------
    assert actual['full'] == pytest.approx(-2.0)
    assert actual['induced'] == pytest.approx(-math.sqrt(3))
    assert actual['gap'] == pytest.approx(2 - math.sqrt(3))
