'''
Spectra of Cayley graphs from characters, and the eigenvalue lemmas built on them.

Theory
------
The characters of a finite Abelian group G form an eigenbasis of every Cayley
adjacency matrix A(S): the character chi has eigenvalue sum_{s in S} chi(s). So the
spectrum of a Cayley graph needs n character sums instead of a diagonalization,
and lambda(S) = min_chi Re sum_{s in S} chi(s) is exact up to rounding.
'''

# Standard library imports
import math
import warnings
from fractions import Fraction
from dataclasses import dataclass

# Third party imports
import numpy as np

# Project specific imports
from sumfreetools._errors import InputError, ClaimViolation, FindingWarning
from sumfreetools._jacobi import jacobi_eigenvalues, JACOBI_TOL
import sumfreetools._bits as bt
import sumfreetools._parallel as par
from sumfreetools.group import index_two_subgroups
from sumfreetools.hypergraph import DenseGraph, cayley_graph_star

__all__ = ['Spectrum', 'ArcReport', 'CaseTwoReport', 'SampleReport', 'SuSReport',
           'lambda_S', 'lambda_I_chi', 'cayley_spectrum_analytic',
           'dense_symmetric_spectrum', 'alon_chung_slack', 'alon_chung_min_slack',
           'blowup_graph', 'arc_concentration', 'eq_case2_bound',
           'sample_S_for_lambda', 'lemma_SuS_check', 'classify_SF',
           'star_mode_deviation']


# Largest matrix handed to the Jacobi solver
MAX_DENSE_VERTICES = 512

# Largest graph scanned subset by subset in alon_chung_min_slack
MAX_SLACK_VERTICES = 20

# Retries for one random perfect matching, and restarts of a bipartite pair
MATCHING_RETRIES = 1000
PAIR_RESTARTS = 100

TOLERANCE = 1e-9


@dataclass(frozen=True)
class Spectrum:
    '''Real eigenvalues sorted descending.'''
    eigenvalues: tuple
    source: str

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def largest(self):
        return self.eigenvalues[0]

    @property
    def smallest(self):
        return self.eigenvalues[-1]

    @property
    def second_eigenvalue(self):
        '''max(|lambda_2|, |lambda_n|).'''
        if len(self) < 2:
            return 0.0
        return max(abs(self.eigenvalues[1]), abs(self.eigenvalues[-1]))

    def contains(self, value, tol=1e-8):
        return bool(np.any(np.abs(np.array(self.eigenvalues) - value) <= tol))


@dataclass(frozen=True)
class ArcReport:
    '''Largest number of chi(x), x in I, inside an open arc of length pi/3.

    Attributes
    ----------
    best_center : float
        Angle in [0, 2 pi) of an arc attaining the maximum.
    mass : int
    k : int
        |range(chi)|.
    max_arc_size : int
        Largest number of group elements whose value lies in one such arc.

    '''
    best_center: float
    mass: int
    k: int
    max_arc_size: int
    size: int


@dataclass(frozen=True)
class CaseTwoReport:
    '''|sum_{x in I} chi(x)| against (1 - c + c cos(pi/6))|I|.'''
    precondition_met: bool
    modulus: float
    real_part: float
    bound: float
    holds: bool

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class SampleReport:
    '''Outcome of sampling subsets S of I with lambda(S) >= (delta/2 - 1)|S|.'''
    found: tuple
    size: int
    trials: int
    successes: int
    first_success: int
    precondition_met: bool

    @property
    def success_rate(self):
        return self.successes / self.trials if self.trials else 0.0


@dataclass(frozen=True)
class SuSReport:
    '''lambda(S u -S) against (delta/2 - 1)|S u -S|, with the split residual.

    ``residual`` is lambda(S u -S) - lambda(S) - lambda((-S) minus S), which is
    never negative since a minimum of sums dominates the sum of minima.
    '''
    precondition_met: bool
    lambda_S: float
    lambda_symmetric: float
    lambda_rest: float
    bound: float
    residual: float
    conclusion_holds: bool


def lambda_S(G, S):
    '''Return min over characters of Re sum_{s in S} chi(s).'''
    members = _generators(G, S)
    return _lambda(G, members)


def lambda_I_chi(G, I, a):
    '''Return Re sum_{x in I} chi_a(x).'''
    members = G.indices(I)
    phases = G.phase_table[G.index(a), members]
    return float(np.cos(2 * np.pi * phases / G.exponent).sum())


def cayley_spectrum_analytic(G, S, symmetrized=True):
    '''Return the Cayley spectrum {sum_{s in S'} chi(s)} from the characters.

    S' is S u (-S) when ``symmetrized``, otherwise S, and then the real parts of
    the complex eigenvalues are reported.
    '''
    members = _generators(G, S)
    if symmetrized:
        members = sorted(set(members) | {int(G.negation[s]) for s in members})
    angles = 2 * np.pi * G.phase_table[:, members] / G.exponent
    values = np.cos(angles).sum(axis=1)
    return Spectrum(tuple(np.sort(values)[::-1].tolist()), 'character_analytic')


def dense_symmetric_spectrum(graph):
    '''Return all adjacency eigenvalues of a graph by cyclic Jacobi rotations.

    Parameters
    ----------
    graph : DenseGraph or array_like
        A graph, or a real symmetric matrix.

    Returns
    -------
    Spectrum
    '''
    if isinstance(graph, DenseGraph):
        matrix = graph.matrix.astype(np.float64)
    else:
        matrix = np.asarray(graph, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InputError(f'expected a square matrix, got shape {matrix.shape}')
    if matrix.shape[0] > MAX_DENSE_VERTICES:
        raise InputError(f'the dense solver is limited to {MAX_DENSE_VERTICES} '
                         f'vertices, got {matrix.shape[0]}')
    if not np.array_equal(matrix, matrix.T):
        raise InputError('the dense solver needs a symmetric matrix')
    if matrix.shape[0] == 0:
        return Spectrum((), 'dense_solver')
    values, sweeps, converged = jacobi_eigenvalues(matrix, JACOBI_TOL)
    if not converged:
        warnings.warn(f'Jacobi solver stopped after {sweeps} sweeps without reaching '
                      f'tolerance {JACOBI_TOL}', FindingWarning)
    return Spectrum(tuple(values.tolist()), 'dense_solver')


def alon_chung_slack(graph, A, spectrum=None):
    '''Return 2e(A) - [(d/n)|A|^2 + (lambda/n)|A|(n - |A|)].

    lambda is the smallest adjacency eigenvalue; the slack is nonnegative for
    every vertex set A of a d-regular graph.
    '''
    d, lam = _regular_parameters(graph, spectrum)
    n = len(graph)
    flags = np.zeros(n, dtype=bool)
    flags[[graph.position(v) for v in A]] = True
    size = int(flags.sum())
    doubled_edges = int(graph.matrix[np.ix_(flags, flags)].sum())
    return doubled_edges - (d / n * size**2 + lam / n * size * (n - size))


def alon_chung_min_slack(graph, spectrum=None):
    '''Return the minimum Alon-Chung slack over all 2^n vertex sets.'''
    d, lam = _regular_parameters(graph, spectrum)
    n = len(graph)
    if n > MAX_SLACK_VERTICES:
        raise InputError(f'the subset scan is limited to {MAX_SLACK_VERTICES} '
                         f'vertices, got {n}')
    matrix = graph.matrix.astype(np.int64)
    lowest = math.inf
    block = 1 << 14
    for start in range(0, 1 << n, block):
        codes = np.arange(start, min(start + block, 1 << n), dtype=np.int64)
        subsets = ((codes[:, None] >> np.arange(n)) & 1).astype(np.int64)
        doubled_edges = ((subsets @ matrix) * subsets).sum(axis=1)
        sizes = subsets.sum(axis=1)
        slack = doubled_edges - (d / n * sizes**2 + lam / n * sizes * (n - sizes))
        lowest = min(lowest, float(slack.min()))
    return lowest


def blowup_graph(t, part_size, d, seed=None):
    '''Return a random blow-up of K_{t+1} that is d-regular.

    Each vertex of K_{t+1} becomes a part of ``part_size`` vertices and each edge
    a random (d/t)-regular bipartite graph, the union of d/t random perfect
    matchings redrawn until no edge repeats.

    Parameters
    ----------
    t : int
    part_size : int
    d : int
        Degree; t must divide d and d/t must not exceed part_size.
    seed : int, optional

    Returns
    -------
    DenseGraph
        Vertices 0..(t+1)*part_size - 1, part i holding
        i*part_size..(i+1)*part_size - 1.
    '''
    if t < 1 or part_size < 1 or d < 1:
        raise InputError('need t >= 1, part_size >= 1 and d >= 1')
    if d % t:
        raise InputError(f't = {t} must divide d = {d}')
    r = d // t
    if r > part_size:
        raise InputError(f'd/t = {r} exceeds part_size = {part_size}')
    rng = np.random.default_rng(seed)
    n = (t + 1) * part_size
    matrix = np.zeros((n, n), dtype=bool)
    for i in range(t + 1):
        for j in range(i + 1, t + 1):
            for u, v in _random_regular_bipartite(rng, part_size, r):
                a, b = i * part_size + u, j * part_size + v
                matrix[a, b] = matrix[b, a] = True
    return DenseGraph.from_matrix(range(n), matrix, regular_degree=d)


def arc_concentration(G, I, a):
    '''Return the largest |K_zeta n I| over open arcs of length pi/3.

    chi_a takes its values among the k-th roots of unity, k = |range(chi_a)|, so
    only the k arcs starting just before a root need to be scanned. Points on an
    arc endpoint are outside the arc.
    '''
    a = G.index(a)
    if a == 0:
        raise InputError('arc concentration needs a nontrivial character')
    k = int(G.element_orders[a])
    # Root number j of chi_a(x) = exp(2 pi i j / k)
    roots = (G.phase_table[a] * k) // G.exponent
    members = G.indices(I)
    counts = np.bincount(roots[members], minlength=k)
    totals = np.bincount(roots, minlength=k)
    offsets = np.arange(k)
    inside = 6 * offsets < k
    width = int(offsets[inside].max())
    best, best_start, widest = -1, 0, 0
    for start in range(k):
        window = (start + offsets[inside]) % k
        mass = int(counts[window].sum())
        widest = max(widest, int(totals[window].sum()))
        if mass > best:
            best, best_start = mass, start
    center = (2 * np.pi * (best_start + width / 2) / k) % (2 * np.pi)
    return ArcReport(float(center), best, k, widest, len(members))


def eq_case2_bound(G, I, a, c):
    '''Check |sum_{x in I} chi_a(x)| <= (1 - c + c cos(pi/6))|I|.

    Requires that no open arc of length pi/3 holds more than (1 - c)|I| of the
    values. An unmet requirement is reported with a FindingWarning; a failure
    under it raises ClaimViolation.
    '''
    members = G.indices(I)
    size = len(members)
    arcs = arc_concentration(G, members, a)
    precondition = arcs.mass <= (1 - c) * size + TOLERANCE
    phases = G.phase_table[G.index(a), members]
    total = np.exp(2j * np.pi * phases / G.exponent).sum()
    bound = (1 - c + c * math.cos(math.pi / 6)) * size
    holds = abs(total) <= bound + TOLERANCE
    if not precondition:
        warnings.warn(f'arc mass {arcs.mass} exceeds (1 - c)|I| = {(1 - c) * size}',
                      FindingWarning)
    elif not holds:
        raise ClaimViolation(f'|lambda(I, chi)| = {abs(total)} exceeds {bound}')
    return CaseTwoReport(bool(precondition), float(abs(total)), float(total.real),
                         float(bound), bool(holds))


def sample_S_for_lambda(G, I, eps, delta, trials, seed=None, workers=1):
    '''Sample subsets S of I of size ceil(eps |I|) with lambda(S) >= (delta/2 - 1)|S|.

    Every trial runs with its own seed spawned from ``seed``; the reported set is
    the one from the lowest successful trial index, whatever the worker count.

    Returns
    -------
    SampleReport
    '''
    members = G.indices(I)
    size = math.ceil(Fraction(str(eps)) * len(members))
    if size < 1:
        raise InputError('ceil(eps |I|) must be at least 1')
    precondition = _lambda(G, members) >= (delta - 1) * len(members) - TOLERANCE
    if not precondition:
        warnings.warn('lambda(I) < (delta - 1)|I|; sampling without the lemma\'s '
                      'hypothesis', FindingWarning)
    seeds = np.random.SeedSequence(seed).spawn(trials) if trials else []
    chunks = [seeds[i:i + 64] for i in range(0, len(seeds), 64)]
    jobs = [(G, members, size, delta, chunk) for chunk in chunks]
    outcomes = [o for part in par.ordered_map(_sample_chunk, jobs,
                                              par.worker_count(len(jobs), workers))
                for o in part]
    hits = [i for i, o in enumerate(outcomes) if o is not None]
    found = outcomes[hits[0]] if hits else None
    return SampleReport(found, size, trials, len(hits), hits[0] if hits else None,
                        bool(precondition))


def lemma_SuS_check(G, S, delta):
    '''Check lambda(S u -S) >= (delta/2 - 1)|S u -S| given lambda(S) >= (delta - 1)|S|.

    A failing conclusion under the hypothesis raises ClaimViolation; an unmet
    hypothesis is reported.
    '''
    members = _generators(G, S)
    negatives = {int(G.negation[s]) for s in members}
    rest = sorted(negatives - set(members))
    symmetric = sorted(set(members) | negatives)
    lam = _lambda(G, members)
    lam_sym = _lambda(G, symmetric)
    lam_rest = _lambda(G, rest)
    precondition = lam >= (delta - 1) * len(members) - TOLERANCE
    bound = (delta / 2 - 1) * len(symmetric)
    holds = lam_sym >= bound - TOLERANCE
    if not precondition:
        warnings.warn(f'lambda(S) = {lam} < (delta - 1)|S|', FindingWarning)
    elif not holds:
        raise ClaimViolation(f'lambda(S u -S) = {lam_sym} is below {bound}')
    return SuSReport(bool(precondition), lam, lam_sym, lam_rest, bound,
                     lam_sym - (lam + lam_rest), bool(holds))


def classify_SF(G, I, delta):
    '''Return ``below`` if |I n H| <= delta |I| for some index-2 subgroup H.'''
    members = G.mask(I)
    threshold = Fraction(str(delta)) * bt.popcount(members)
    for h in index_two_subgroups(G):
        if bt.popcount(members & h) <= threshold:
            return 'below'
    return 'above'


def star_mode_deviation(G, S):
    '''Return the smallest eigenvalue of G*_S in full and in exclude_S mode.

    Returns
    -------
    dict
        ``full``, ``induced`` and their difference ``gap``.
    '''
    full = cayley_spectrum_analytic(G, S, symmetrized=True).smallest
    induced_graph = cayley_graph_star(G, S, 'exclude_S')
    induced = dense_symmetric_spectrum(induced_graph).smallest if len(induced_graph) \
        else 0.0
    return {'full': full, 'induced': induced, 'gap': induced - full}


def _generators(G, S):
    members = G.indices(S)
    if 0 in members:
        raise InputError('the zero element is not allowed in S')
    return members


def _lambda(G, members):
    if not members:
        return 0.0
    angles = 2 * np.pi * G.phase_table[:, members] / G.exponent
    return float(np.cos(angles).sum(axis=1).min())


def _regular_parameters(graph, spectrum):
    d = graph.is_regular()
    if d is None:
        raise InputError('the Alon-Chung bound needs a regular graph')
    spectrum = dense_symmetric_spectrum(graph) if spectrum is None else spectrum
    return d, spectrum.smallest


def _random_regular_bipartite(rng, size, r):
    # Union of r perfect matchings without repeated edges
    for _ in range(PAIR_RESTARTS):
        edges = set()
        for _ in range(r):
            for _ in range(MATCHING_RETRIES):
                perm = rng.permutation(size)
                matching = {(u, int(perm[u])) for u in range(size)}
                if not matching & edges:
                    edges |= matching
                    break
            else:
                break
        else:
            return sorted(edges)
    # Relabelled cyclic shifts are always simple
    shifts = rng.choice(size, size=r, replace=False)
    left = rng.permutation(size)
    right = rng.permutation(size)
    return sorted((int(left[u]), int(right[(u + s) % size]))
                  for s in shifts for u in range(size))


def _sample_chunk(job):
    G, members, size, delta, seeds = job
    outcomes = []
    for seq in seeds:
        rng = np.random.default_rng(seq)
        S = sorted(int(x) for x in rng.choice(members, size=size, replace=False))
        ok = _lambda(G, S) >= (delta / 2 - 1) * size - TOLERANCE
        outcomes.append(tuple(S) if ok else None)
    return outcomes
