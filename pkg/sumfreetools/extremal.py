'''
Maximum-size sum-free families and the stability statistics around them.

Theory
------
For a group G of Type I(q), q = 3k + 2, every maximum sum-free set is the preimage
B = phi^{-1}({k+1, ..., 2k+1}) of the middle third of Z_q under a surjective
homomorphism phi: G -> Z_q, and mu(G) = (q + 1) / (3q) is its density.
'''

# Standard library imports
import math
from fractions import Fraction
from dataclasses import dataclass, field

# Third party imports
import numpy as np

# Project specific imports
from sumfreetools._errors import InputError, NotTypeIError, ClaimViolation
import sumfreetools._bits as bt
import sumfreetools._parallel as par
from sumfreetools.group import smallest_typeI_prime, surjective_homs_to_Zq
from sumfreetools.group import count_elements_of_order
from sumfreetools.hypergraph import SchurHypergraph, is_sum_free

__all__ = ['MaxSumFreeFamily', 'StabilityProfile', 'mu', 'enumerate_SF0',
           'sf0_cardinality_check', 'pairwise_intersection_check', 'delta_H_B',
           'delta_H_family', 'sumset_cover_check', 'stability_profile',
           'find_stability_witness', 'sweep_stability_witnesses']


# Largest order scanned subset by subset
MAX_EXHAUSTIVE_ORDER = 16

# Subsets handled per vectorized block of the exhaustive scan
SCAN_BLOCK = 4096


@dataclass(frozen=True)
class MaxSumFreeFamily:
    '''The family SF0(G) of maximum-size sum-free sets, as bit-vectors.'''
    group: object
    q: int
    sets: tuple

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    @property
    def set_size(self):
        '''mu(G)|G|, the common size of the members.'''
        return int(mu(self.group) * self.group.order)

    def as_indices(self):
        return [bt.to_indices(b) for b in self.sets]

    def to_lines(self):
        '''One sorted index list per member, space separated.'''
        return [' '.join(str(i) for i in members) for members in self.as_indices()]


@dataclass(frozen=True)
class CardinalityReport:
    group: str
    q: int
    family_size: int
    order_q_count: int
    expected: int
    order: int

    @property
    def holds(self):
        return self.family_size == self.expected and self.family_size <= self.order


@dataclass(frozen=True)
class IntersectionReport:
    group: str
    q: int
    pairs: int
    max_intersection: int
    ceiling: Fraction
    quarter_exact: bool = None

    @property
    def holds(self):
        return self.max_intersection <= self.ceiling and self.quarter_exact is not False


@dataclass(frozen=True)
class StabilityProfile:
    '''Rows (|A|, e(H[A]), min_B |A minus B|) over scanned subsets A.

    Parameters
    ----------
    order : int
        |G|.
    edge_count : int
        e(H) of the full hypergraph.
    rows : tuple of tuple
        One (size, schur_count, min_distance) row per scanned subset.

    '''
    order: int
    edge_count: int
    rows: tuple = field(default=())

    def __len__(self):
        return len(self.rows)

    def merge(self, other):
        '''Concatenate two partial profiles of the same group.'''
        if (self.order, self.edge_count) != (other.order, other.edge_count):
            raise InputError('profiles of different hypergraphs cannot be merged')
        return StabilityProfile(self.order, self.edge_count, self.rows + other.rows)

    @property
    def frontier(self):
        '''Pareto frontier of (schur_count, min_distance), both minimized.

        Sorted by increasing schur count.
        '''
        points = sorted({(row[1], row[2]) for row in self.rows})
        frontier = []
        best_distance = math.inf
        for schur, distance in points:
            if distance < best_distance:
                frontier.append((schur, distance))
                best_distance = distance
        return frontier

    @property
    def normalized_frontier(self):
        '''Frontier as (e(H[A]) / |G|^2, distance / |G|) floats.'''
        n = self.order
        return [(s / n**2, d / n) for s, d in self.frontier]


def mu(G):
    '''Return mu(G) = (q + 1) / (3q) for a group of Type I(q).'''
    q = smallest_typeI_prime(G)
    if q is None:
        raise NotTypeIError(f'{G} is not of Type I: no prime divisor q = 2 (mod 3)')
    return Fraction(q + 1, 3 * q)


def enumerate_SF0(G):
    '''Return SF0(G) from the preimages of the middle third of Z_q.

    Several homomorphisms can give the same set, so the family is deduplicated
    and sorted by index list. Every member is checked to be sum-free and of size
    mu(G)|G|.

    Parameters
    ----------
    G : GroupSpec
        A group of Type I(q).

    Returns
    -------
    MaxSumFreeFamily
    '''
    size = mu(G) * G.order
    q = smallest_typeI_prime(G)
    k = (q - 2) // 3
    middle = range(k + 1, 2 * k + 2)
    members = {phi.preimage(middle) for phi in surjective_homs_to_Zq(G, q)}
    members = sorted(members, key=bt.to_indices)
    for b in members:
        if bt.popcount(b) != size:
            raise ClaimViolation(f'{G}: member {bt.to_indices(b)} has size '
                                 f'{bt.popcount(b)}, expected {size}')
        if not is_sum_free(G, bt.to_indices(b)):
            raise ClaimViolation(f'{G}: member {bt.to_indices(b)} is not sum-free')
    return MaxSumFreeFamily(G, q, tuple(members))


def sf0_cardinality_check(G, family=None):
    '''Check |SF0(G)| = #order-q / 2 (odd q) or #order-2 (q = 2), and <= |G|.'''
    family = enumerate_SF0(G) if family is None else family
    q = family.q
    order_q = count_elements_of_order(G, q)
    expected = order_q if q == 2 else order_q // 2
    report = CardinalityReport(str(G), q, len(family), order_q, expected, G.order)
    if not report.holds:
        raise ClaimViolation(f'{G}: |SF0| = {len(family)}, expected {expected} '
                             f'(order-{q} elements: {order_q}, |G| = {G.order})')
    return report


def pairwise_intersection_check(F):
    '''Check that distinct members meet in at most (1 - 1/q) mu(G)|G| elements.

    For q = 2 every pair must meet in exactly |G| / 4 elements. A family with
    fewer than two members passes vacuously.
    '''
    G = F.group
    q = F.q
    ceiling = (1 - Fraction(1, q)) * mu(G) * G.order
    sizes = [bt.popcount(a & b) for i, a in enumerate(F.sets) for b in F.sets[i + 1:]]
    largest = max(sizes, default=0)
    quarter = None
    if q == 2 and sizes:
        quarter = all(4 * s == G.order for s in sizes)
    report = IntersectionReport(str(G), q, len(sizes), largest, ceiling, quarter)
    if not report.holds:
        raise ClaimViolation(f'{G}: pairwise intersections {sorted(set(sizes))} break '
                             f'the ceiling {ceiling}'
                             + (' or the |G|/4 law' if q == 2 else ''))
    return report


def delta_H_B(H, B):
    '''Return min over v outside B of #{edges e : |e n B| = 2, v in e}.

    Parameters
    ----------
    H : SchurHypergraph
    B : iterable
        A proper subset of the vertex set.

    Returns
    -------
    int
    '''
    inside = H.flags(B)
    if inside.all():
        raise InputError('delta(H, B) needs a vertex outside B')
    edges = H.edges
    hits = inside[edges]
    two = hits.sum(axis=1) == 2
    # The single vertex outside B of each such edge
    outside = edges[two][~hits[two]]
    counts = np.bincount(outside, minlength=H.order)
    return int(counts[~inside].min())


def delta_H_family(H, family):
    '''Return the minimum of delta(H, B) over the members of a family.'''
    return min(delta_H_B(H, bt.to_indices(b)) for b in family)


def sumset_cover_check(G, family):
    '''Check B u (B + B) = G for every member B.'''
    for b in family:
        members = np.array(bt.to_indices(b), dtype=np.intp)
        covered = np.zeros(G.order, dtype=bool)
        covered[members] = True
        covered[G.addition_table[np.ix_(members, members)].ravel()] = True
        if not covered.all():
            missing = np.flatnonzero(~covered).tolist()
            raise ClaimViolation(f'{G}: B = {members.tolist()} misses {missing} '
                                 f'in B u (B+B)')
    return True


def stability_profile(G, H=None, min_size_fraction=0.0, mode='exhaustive', count=1000,
                      seed=None, family=None, workers=1):
    '''Scan subsets A of G and record (|A|, e(H[A]), min_B |A minus B|).

    Parameters
    ----------
    G : GroupSpec
    H : SchurHypergraph, optional
        Defaults to the Schur hypergraph of G.
    min_size_fraction : float, optional
        Only subsets with |A| >= min_size_fraction * |G| are recorded.
    mode : {'exhaustive', 'sample'}
        ``exhaustive`` scans all 2^n subsets and needs |G| <= 16.
        ``sample`` draws ``count`` subsets with a size uniform over the admitted
        range, using ``seed``.
    family : MaxSumFreeFamily, optional
        Defaults to SF0(G).
    workers : int, optional
        Worker processes for the exhaustive scan.

    Returns
    -------
    StabilityProfile
    '''
    if not 0 <= min_size_fraction <= 1:
        raise InputError(f'min_size_fraction must lie in [0, 1], got '
                         f'{min_size_fraction}')
    if count < 0:
        raise InputError(f'count must be nonnegative, got {count}')
    H = SchurHypergraph(G) if H is None else H
    family = enumerate_SF0(G) if family is None else family
    n = G.order
    min_size =math.ceil(Fraction(str(min_size_fraction)) * n)
    outside = np.array([~bt.to_bool_array(b, n) for b in family], dtype=np.int64)

    if mode == 'exhaustive':
        if n > MAX_EXHAUSTIVE_ORDER:
            raise InputError(f'exhaustive profiling is limited to |G| <= '
                             f'{MAX_EXHAUSTIVE_ORDER}, got {n}')
        starts = range(0, 2**n, SCAN_BLOCK)
        jobs = [(n, H.edges, outside, min_size, s, min(s + SCAN_BLOCK, 2**n))
                for s in starts]
        parts = par.ordered_map(_profile_block, jobs,
                                par.worker_count(len(jobs), workers))
        rows = tuple(row for part in parts for row in part)
    elif mode == 'sample':
        rng = np.random.default_rng(seed)
        subsets = np.zeros((count, n), dtype=bool)
        for i in range(count):
            size = rng.integers(min_size, n + 1)
            subsets[i, rng.choice(n, size=size, replace=False)] = True
        rows = tuple(_profile_rows(subsets, H.edges, outside))
    else:
        raise InputError(f'mode must be "exhaustive" or "sample", got {mode!r}')
    return StabilityProfile(n, H.edge_count, rows)


def find_stability_witness(profile, alpha, beta):
    '''Return the smallest gamma making the profile (alpha, beta, gamma)-stable.

    Every row with |A| >= (alpha - beta)n must have e(H[A]) >= beta e(H) or a
    distance at most gamma n. The result is exact; it is 0 when no row needs the
    distance branch.
    '''
    n = profile.order
    size_floor = (Fraction(str(alpha)) - Fraction(str(beta))) * n
    dense = Fraction(str(beta)) * profile.edge_count
    needed = [d for s, e, d in profile.rows if s >= size_floor and e < dense]
    return Fraction(max(needed, default=0), n)


def sweep_stability_witnesses(profile, alpha, betas):
    '''Return (beta, gamma) witness pairs for each candidate beta.'''
    return [(beta, find_stability_witness(profile, alpha, beta)) for beta in betas]


def _profile_block(job):
    n, edges, outside, min_size, start, stop = job
    codes = np.arange(start, stop, dtype=np.int64)
    subsets = ((codes[:, None] >> np.arange(n)) & 1).astype(bool)
    subsets = subsets[subsets.sum(axis=1) >= min_size]
    return list(_profile_rows(subsets, edges, outside))


def _profile_rows(subsets, edges, outside):
    sizes = subsets.sum(axis=1)
    if len(edges):
        schur = subsets[:, edges].all(axis=2).sum(axis=1)
    else:
        schur = np.zeros(len(subsets), dtype=np.int64)
    distance = (subsets.astype(np.int64) @ outside.T).min(axis=1)
    for size, e, d in zip(sizes.tolist(), schur.tolist(), distance.tolist()):
        yield size, e, d
