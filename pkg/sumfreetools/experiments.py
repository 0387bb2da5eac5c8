'''
Desk-scale acceptance battery.

Each check exercises one family of exact laws over a corpus of small groups or
graphs and returns a summary record. A violated law raises ClaimViolation; trends
that are only reported come out as FindingWarning.

Two scales are provided: ``quick`` finishes in seconds and is what the test suite
runs, ``full`` is the battery run by ``sumfreetools report``.
'''

# Standard library imports
import math
import itertools
import warnings
from fractions import Fraction
from dataclasses import replace

# Third party imports
import numpy as np
import networkx as nx

# Project specific imports
from sumfreetools._errors import InputError, ClaimViolation, FindingWarning
import sumfreetools._bits as bt
from sumfreetools.group import GroupSpec, abelian_groups, smallest_typeI_prime
from sumfreetools.hypergraph import (DenseGraph, SchurHypergraph, is_sum_free,
                                     is_independent, cayley_graph_star)
from sumfreetools.extremal import (mu, enumerate_SF0, sf0_cardinality_check,
                                   pairwise_intersection_check, delta_H_family)
from sumfreetools.encoding import (EncodingParams, basic_encode, basic_decode,
                                   main_encode, main_decode, verify_claims,
                                   CASE2A, CASE2B, CASE2_FALLBACK)
from sumfreetools.spectral import (lambda_S, cayley_spectrum_analytic,
                                   dense_symmetric_spectrum, alon_chung_min_slack,
                                   blowup_graph, lemma_SuS_check)
from sumfreetools.counting import (count_sum_free, max_sum_free_sets,
                                   independence_number, janson_stats, janson_bounds,
                                   exact_no_Ui_probability, sf_count_prediction)

__all__ = ['SCALES', 'CHECKS', 'check_sf0_exactness', 'check_cardinality_laws',
           'check_delta_claim', 'check_encode_decode', 'check_spectral_agreement',
           'check_alon_chung', 'check_janson_transfer', 'check_blowup',
           'check_counting_ground_truth', 'check_bonferroni', 'check_lemma_batch',
           'run_battery']


SCALES = {
    'quick': {
        'sf0_order': 12, 'cardinality_order': 30, 'delta_order': 20,
        'basic_vertices': 4, 'main_runs': 20, 'main_order': 20, 'case2_runs': 20,
        'spectral_order': 10, 'spectral_sets': 3, 'slack_vertices': 7,
        'janson_graphs': 8, 'janson_vertices': 7, 'blowup_seeds': 2,
        'primes': (5, 11), 'enumerated_primes': 11, 'count_order': 12,
        'bonferroni_k': (3, 4), 'lemma_runs': 30, 'lemma_order': 16,
    },
    'full': {
        'sf0_order': 24, 'cardinality_order': 100, 'delta_order': 60,
        'basic_vertices': 7, 'main_runs': 1000, 'main_order': 30, 'case2_runs': 500,
        'spectral_order': 24, 'spectral_sets': 100, 'slack_vertices': 12,
        'janson_graphs': 200, 'janson_vertices': 14, 'blowup_seeds': 20,
        'primes': (5, 11, 17, 23), 'enumerated_primes': 11, 'count_order': 30,
        'bonferroni_k': tuple(range(8, 17)), 'lemma_runs': 1000, 'lemma_order': 40,
    },
}

# Blow-up instances (t, part_size, d), all with at most 24 vertices
BLOWUP_INSTANCES = ((1, 3, 3), (1, 4, 2), (1, 6, 4), (2, 3, 2), (2, 4, 4),
                    (2, 6, 6), (3, 3, 3), (3, 6, 6))

SPECTRAL_TOL = 1e-8
SLACK_TOL = 1e-9


def check_sf0_exactness(scale='quick', seed=0):
    '''SF0(G) equals the maximum sum-free sets found by exhaustive search.'''
    cfg = _config(scale)
    groups = _typeI_groups(cfg['sf0_order'])
    for G in groups:
        family = enumerate_SF0(G)
        best, sets = max_sum_free_sets(G)
        if best != family.set_size or set(sets) != set(family.sets):
            raise ClaimViolation(f'{G}: SF0 has {len(family)} sets of size '
                                 f'{family.set_size}, search found {len(sets)} of '
                                 f'size {best}')
    return _record(1, 'sf0_exactness', groups=len(groups))


def check_cardinality_laws(scale='quick', seed=0):
    '''|SF0| laws and the pairwise intersection ceiling.'''
    cfg = _config(scale)
    groups = _typeI_groups(cfg['cardinality_order'])
    for G in groups:
        family = enumerate_SF0(G)
        sf0_cardinality_check(G, family)
        pairwise_intersection_check(family)
    return _record(2, 'cardinality_laws', groups=len(groups))


def check_delta_claim(scale='quick', seed=0):
    '''delta(H, B) >= n / (2q) - 1/2 for odd q; q = 2 is reported only.'''
    cfg = _config(scale)
    odd, even = 0, {}
    for G in _typeI_groups(cfg['delta_order']):
        family = enumerate_SF0(G)
        delta = delta_H_family(SchurHypergraph(G), family)
        if family.q == 2:
            even[str(G)] = delta
            continue
        bound = Fraction(G.order, 2 * family.q) - Fraction(1, 2)
        if delta < bound:
            raise ClaimViolation(f'{G}: delta(H, SF0) = {delta} < {bound}')
        odd += 1
    return _record(3, 'delta_claim', groups=odd, q2_report=even)


def check_encode_decode(scale='quick', seed=0):
    '''Basic and Main certificates decode to the encoder's available set.

    Basic runs cover every independent set of every small graph and every stop
    size 1..n. Main runs check the step-count and certificate-size claims; a
    second batch with d = 1 and a large beta reaches the Case 2 branches.
    '''
    cfg = _config(scale)
    basic_runs = 0
    for nxg in nx.graph_atlas_g():
        n = nxg.number_of_nodes()
        if not 1 <= n <= cfg['basic_vertices']:
            continue
        graph = DenseGraph.from_networkx(nxg)
        for code in range(1 << n):
            I = bt.to_indices(code)
            if not graph.is_independent(I):
                continue
            for stop_size in range(1, n + 1):
                result = basic_encode(graph, I, stop_size)
                decoded = basic_decode(graph, result.selected, stop_size)
                if decoded != result.available:
                    raise ClaimViolation(f'basic: graph {sorted(nxg.edges)} I={I} '
                                         f'stop={stop_size} decodes to {decoded}, '
                                         f'not {result.available}')
                basic_runs += 1

    rng = np.random.default_rng(seed)
    groups = _typeI_groups(cfg['main_order'])
    target = cfg['main_runs']
    main_runs = skipped = unchecked_size_claims = 0
    claims = {'case1_max': 0, 'case2_max': 0}
    while main_runs < target and skipped < 10 * target:
        G = groups[int(rng.integers(len(groups)))]
        H = SchurHypergraph(G)
        family = enumerate_SF0(G)
        I = _random_independent_set(H, rng)
        params = _resolved_params(G, len(I), rng)
        if params is None:
            skipped += 1
            continue
        result = _main_round_trip(H, family, I, params)
        with warnings.catch_warnings():
            # Counted below instead
            warnings.simplefilter('ignore', FindingWarning)
            report = verify_claims(result, params, G.order, len(I))
        if not report.all_hold:
            raise ClaimViolation(f'main: {G} I={I} breaks a step claim: {report}')
        unchecked_size_claims += not report.hypothesis_met
        claims['case1_max'] = max(claims['case1_max'], report.case1_count)
        claims['case2_max'] = max(claims['case2_max'], report.case2_count)
        main_runs += 1
    if main_runs != target:
        raise ClaimViolation(f'main: only {main_runs} of {target} runs had a valid d '
                             f'after {skipped} skips')

    cases = {CASE2A: 0, CASE2B: 0, CASE2_FALLBACK: 0}
    for _ in range(cfg['case2_runs']):
        G = groups[int(rng.integers(len(groups)))]
        H = SchurHypergraph(G)
        alpha = float(mu(G))
        beta = min(float(rng.choice([0.3, 0.35, 0.4, 0.45, 0.5])), alpha)
        params = EncodingParams(alpha=alpha, beta=beta, gamma=0.01, d=1)
        result = _main_round_trip(H, enumerate_SF0(G), _random_independent_set(H, rng),
                                  params)
        for case in cases:
            cases[case] += result.case_count(case)
    return _record(4, 'encode_decode', basic_runs=basic_runs, main_runs=main_runs,
                   skipped=skipped, size_claim_unchecked=unchecked_size_claims,
                   case2_steps=cases, **claims)


def check_spectral_agreement(scale='quick', seed=0):
    '''Character spectra equal dense-solver spectra, and lambda(S) >= -|S|.'''
    cfg = _config(scale)
    rng = np.random.default_rng(seed)
    deviation = 0.0
    cases = 0
    for G in abelian_groups(cfg['spectral_order']):
        for _ in range(cfg['spectral_sets']):
            S = _random_generators(G, rng)
            analytic = np.array(cayley_spectrum_analytic(G, S).eigenvalues)
            dense = np.array(dense_symmetric_spectrum(
                cayley_graph_star(G, S)).eigenvalues)
            deviation = max(deviation, float(np.abs(analytic - dense).max()))
            if deviation > SPECTRAL_TOL:
                raise ClaimViolation(f'{G}, S={S}: spectra differ by {deviation}')
            if lambda_S(G, S) < -len(S) - SLACK_TOL:
                raise ClaimViolation(f'{G}, S={S}: lambda(S) < -|S|')
            cases += 1
    return _record(6, 'spectral_agreement', cases=cases, max_deviation=deviation)


def check_alon_chung(scale='quick', seed=0):
    '''Alon-Chung slack over all subsets of connected circulant graphs.'''
    cfg = _config(scale)
    lowest = math.inf
    graphs = 0
    for n in range(3, cfg['slack_vertices'] + 1):
        G = GroupSpec((n,))
        half = range(1, n // 2 + 1)
        for size in range(1, len(half) + 1):
            for S in itertools.combinations(half, size):
                graph = cayley_graph_star(G, S)
                if not nx.is_connected(graph.to_networkx()):
                    continue
                slack = alon_chung_min_slack(graph, cayley_spectrum_analytic(G, S))
                if slack < -SLACK_TOL:
                    raise ClaimViolation(f'C_{n}{S}: Alon-Chung slack {slack}')
                lowest = min(lowest, slack)
                graphs += 1
    return _record(7, 'alon_chung', graphs=graphs, min_slack=lowest)


def check_janson_transfer(scale='quick', seed=0):
    '''P(independent m-set) <= 3 sqrt(m) exp(-mu + Delta/2) on random graphs.'''
    cfg = _config(scale)
    rng = np.random.default_rng(seed)
    cases = 0
    for _ in range(cfg['janson_graphs']):
        n = int(rng.integers(2, cfg['janson_vertices'] + 1))
        nxg = nx.gnp_random_graph(n, float(rng.uniform(0.1, 0.9)),
                                  seed=int(rng.integers(2**31)))
        edges = [tuple(e) for e in nxg.edges]
        for m in range(n + 1):
            exact = exact_no_Ui_probability(edges, m, n)
            bound = janson_bounds(janson_stats(edges, m, n)).hypergeometric_product
            if exact > bound * (1 + SLACK_TOL):
                raise ClaimViolation(f'G(n={n}) edges={edges} m={m}: {exact} > '
                                     f'{bound}')
            cases += 1
    return _record(8, 'janson_transfer', cases=cases)


def check_blowup(scale='quick', seed=0):
    '''Blow-ups are d-regular with -d/t in the spectrum and alpha = part_size.

    Equality of alpha is asserted when t = 1 or the Hoffman bound certifies it,
    and reported otherwise.
    '''
    cfg = _config(scale)
    uncertified = []
    cases = 0
    for t, part, d in BLOWUP_INSTANCES:
        for s in range(cfg['blowup_seeds']):
            graph = blowup_graph(t, part, d, seed=seed + s)
            if graph.is_regular() != d:
                raise ClaimViolation(f'blow-up ({t}, {part}, {d}) is not {d}-regular')
            spectrum = dense_symmetric_spectrum(graph)
            if not spectrum.contains(-d / t, SPECTRAL_TOL):
                raise ClaimViolation(f'blow-up ({t}, {part}, {d}): -d/t missing')
            alpha = independence_number(graph)
            certified = t == 1 or spectrum.smallest >= -d / t - SPECTRAL_TOL
            if alpha < part or (certified and alpha != part):
                raise ClaimViolation(f'blow-up ({t}, {part}, {d}) seed {seed + s}: '
                                     f'alpha = {alpha}, part size {part}')
            if not certified:
                uncertified.append({'instance': (t, part, d), 'seed': seed + s,
                                    'alpha': alpha})
            cases += 1
    return _record(9, 'blowup', cases=cases, uncertified=uncertified)


def check_counting_ground_truth(scale='quick', seed=0):
    '''Exact counts at m = (q + 1)/3 in Z_q and at m = mu n in Type I groups.'''
    cfg = _config(scale)
    rng = np.random.default_rng(seed)
    for q in cfg['primes']:
        G = GroupSpec((q,))
        m = (q + 1) // 3
        actual = count_sum_free(G, m).value
        if actual != (q - 1) // 2:
            raise ClaimViolation(f'Z{q}: {actual} sum-free {m}-sets, expected '
                                 f'{(q - 1) // 2}')
        if q <= cfg['enumerated_primes']:
            second = sum(1 for A in itertools.combinations(range(q), m)
                         if is_sum_free(G, A))
        else:
            second = count_sum_free(G, m, order=rng.permutation(q)).value
        if second != actual:
            raise ClaimViolation(f'Z{q}: oracles disagree ({actual} vs {second})')
    groups = _typeI_groups(cfg['count_order'])
    for G in groups:
        family = enumerate_SF0(G)
        actual = count_sum_free(G, family.set_size).value
        if actual != len(family):
            raise ClaimViolation(f'{G}: {actual} sum-free sets of size mu n, '
                                 f'|SF0| = {len(family)}')
    return _record(10, 'counting_ground_truth', primes=list(cfg['primes']),
                   groups=len(groups))


def check_bonferroni(scale='quick', seed=0):
    '''Lower Bonferroni bound and ratio laws for Z_{2k}.

    Asserts lower <= exact, ratio >= 1 and ratio <= 1.1 at m = k. A ratio that
    grows with m over the top half m > k / 2 of the range is reported as a
    FindingWarning; small m sit outside the trend.
    '''
    cfg = _config(scale)
    table = []
    for k in cfg['bonferroni_k']:
        G = GroupSpec((2 * k,))
        family = enumerate_SF0(G)
        ratios = []
        for m in range(1, k + 1):
            exact = count_sum_free(G, m).value
            prediction = sf_count_prediction(G, m, family)
            ratio = prediction.ratio(exact)
            if prediction.lower_bonf > exact:
                raise ClaimViolation(f'Z{2 * k}, m={m}: lower Bonferroni bound '
                                     f'{prediction.lower_bonf} > {exact}')
            if ratio < 1 or (m == k and ratio > 1.1):
                raise ClaimViolation(f'Z{2 * k}, m={m}: ratio {ratio}')
            ratios.append(ratio)
            table.append({'n': 2 * k, 'm': m, 'exact': exact,
                          'leading': prediction.leading,
                          'upper_within': exact <= prediction.upper_bonf,
                          'ratio': ratio})
        top = ratios[k // 2:]
        if any(b > a for a, b in zip(top, top[1:])):
            warnings.warn(f'Z{2 * k}: exact / leading is not monotone over m > '
                          f'{k // 2}: {top}', FindingWarning)
    return _record(11, 'bonferroni', rows=table)


def check_lemma_batch(scale='quick', seed=0):
    '''lambda(S u -S) >= (delta/2 - 1)|S u -S| whenever lambda(S) >= (delta - 1)|S|.'''
    cfg = _config(scale)
    rng = np.random.default_rng(seed)
    groups = abelian_groups(cfg['lemma_order'])
    tested = 0
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', FindingWarning)
        for _ in range(cfg['lemma_runs']):
            G = groups[int(rng.integers(len(groups)))]
            S = _random_generators(G, rng)
            delta = float(rng.choice([0.1, 0.3, 0.5]))
            if lemma_SuS_check(G, S, delta).precondition_met:
                tested += 1
    return _record(12, 'lemma_batch', runs=cfg['lemma_runs'], tested=tested)


# Criterion numbers; 4 also covers the Main algorithm claims (5)
CHECKS = ((1, check_sf0_exactness), (2, check_cardinality_laws),
          (3, check_delta_claim), (4, check_encode_decode),
          (6, check_spectral_agreement), (7, check_alon_chung),
          (8, check_janson_transfer), (9, check_blowup),
          (10, check_counting_ground_truth), (11, check_bonferroni),
          (12, check_lemma_batch))


def run_battery(scale='quick', seed=0, only=None, progress=None):
    '''Run the checks in order and return their records.

    Parameters
    ----------
    scale : {'quick', 'full'}
    seed : int, optional
    only : iterable of int, optional
        Criterion numbers to run; all when omitted.
    progress : callable, optional
        Called with a short text line before each check.

    Returns
    -------
    list of dict
    '''
    _config(scale)
    wanted = None if only is None else set(only)
    records = []
    for number, check in CHECKS:
        if wanted is not None and number not in wanted:
            continue
        if progress is not None:
            progress(f'[{number}] {check.__name__} ({scale})')
        records.append(check(scale, seed))
    return records


def _config(scale):
    if scale not in SCALES:
        raise InputError(f'scale must be one of {sorted(SCALES)}, got {scale!r}')
    return SCALES[scale]


def _record(number, name, **details):
    return {'criterion': number, 'name': name, 'passed': True, **details}


def _typeI_groups(max_order):
    return [G for G in abelian_groups(max_order) if smallest_typeI_prime(G)]


def _random_independent_set(H, rng):
    # Greedy over a random element order; the result is maximal
    chosen = []
    for x in rng.permutation(H.order).tolist():
        if is_independent(H, chosen + [x]):
            chosen.append(x)
    return sorted(chosen)


def _resolved_params(G, m, rng):
    # The first C, in random order, whose d = round(C n / m) lies in 1..m
    params = EncodingParams(alpha=float(mu(G)),
                            beta=float(rng.choice([0.05, 0.1, 0.2])),
                            gamma=float(rng.choice([0.01, 0.05])))
    for capital_C in rng.permutation([1.0, 1.5, 2.0]).tolist():
        try:
            return replace(params, capital_C=capital_C).resolve(G.order, m)
        except InputError:
            continue
    return None


def _main_round_trip(H, family, I, params):
    result = main_encode(H, family, I, params)
    decoded = main_decode(H, family, result.selected, result.params)
    if decoded != result.available:
        raise ClaimViolation(f'main: {H.group} I={I} d={result.params.d} decodes to '
                             f'{decoded}, not {result.available}')
    return result


def _random_generators(G, rng):
    size = int(rng.integers(1, G.order))
    return sorted(int(x) for x in rng.choice(np.arange(1, G.order), size=size,
                                             replace=False))
