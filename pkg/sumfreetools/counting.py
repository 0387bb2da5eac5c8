'''
Exact counting oracles and closed-form counting bounds.

The searches are exact or fail loudly: a search that runs out of its node budget
raises ``BudgetExhausted`` with the partial count attached instead of returning
an underestimate.
'''

# Standard library imports
import math
import itertools
from fractions import Fraction
from dataclasses import dataclass

# Third party imports
import numpy as np
from scipy.special import gammaln

# Project specific imports
from sumfreetools._errors import InputError, BudgetExhausted
import sumfreetools._bits as bt
import sumfreetools._parallel as par
from sumfreetools.group import count_elements_of_order
from sumfreetools.extremal import enumerate_SF0

__all__ = ['ExactCount', 'JansonStats', 'JansonBounds', 'BoundRecord', 'Prediction',
           'binom_exact', 'binom_log', 'count_independent_sets', 'count_sum_free',
           'max_sum_free_sets', 'independence_number', 'janson_stats',
           'janson_bounds', 'exact_no_Ui_probability', 'thm_graphs_bound',
           'alon_rodl_bound', 'basic_algorithm_bound', 'lambda_q',
           'one_outside_lower_bound', 'sf_count_prediction', 'count_row']


DEFAULT_BUDGET_NODES = 50_000_000

# Largest number of m-subsets enumerated by exact_no_Ui_probability
ENUMERATION_BUDGET = 10**7

# Largest graph handled by independence_number
MAX_SEARCH_VERTICES = 64


@dataclass(frozen=True)
class ExactCount:
    '''An exact set count together with the search nodes spent on it.'''
    value: int
    nodes: int = 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __add__(self, other):
        return ExactCount(self.value + other.value, self.nodes + other.nodes)


@dataclass(frozen=True)
class JansonStats:
    '''mu and Delta of a family U_1, ..., U_k for a random m-subset of an n-set.

    ``mu`` and ``delta_sum`` are Fractions when computed exactly, floats otherwise.
    '''
    mu: object
    delta_sum: object
    family_size: int
    m: int
    n: int


@dataclass(frozen=True)
class JansonBounds:
    '''Janson bounds on P(no U_i inside R).

    Attributes
    ----------
    product_bound : float
        exp(-mu + Delta / 2) for the product measure, clamped at 1.
    max_form_bound : float
        max(exp(-mu / 2), exp(-mu^2 / (2 Delta))), the exp(-mu / 2) branch alone
        when Delta = 0.
    transfer_factor : float
        Factor moving a product-measure bound to fixed-size subsets.

    '''
    product_bound: float
    max_form_bound: float
    transfer_factor: float
    mode: str = 'sqrt_m'

    @property
    def hypergeometric_product(self):
        return self.transfer_factor * self.product_bound

    @property
    def hypergeometric_max_form(self):
        return self.transfer_factor * self.max_form_bound


@dataclass(frozen=True)
class BoundRecord:
    '''A log-space bound value with the rounding applied to its binomial.'''
    name: str
    log_value: float
    argument: int = None
    raw_argument: float = None
    floored: bool = False
    applicable: bool = True

    @property
    def value(self):
        return math.exp(self.log_value) if self.applicable else math.nan


@dataclass(frozen=True)
class Prediction:
    '''Counting prediction for sum-free m-sets from the family SF0(G).

    ``leading`` is |SF0| binom(mu n, m). ``lower_bonf`` and ``upper_bonf`` are the
    second and first order Bonferroni bounds on the number of m-sets contained in
    some member of SF0.
    '''
    group: str
    n: int
    m: int
    q: int
    family_size: int
    formula_family_size: Fraction
    set_size: int
    leading: int
    lower_bonf: int
    upper_bonf: int
    one_outside: float = None

    @property
    def family_size_matches(self):
        return self.formula_family_size == self.family_size

    def ratio(self, exact):
        '''Return exact / leading, or None when the leading term vanishes.'''
        return exact / self.leading if self.leading else None


def binom_exact(a, b):
    '''Return the binomial coefficient as an exact integer (0 when b > a).'''
    if a < 0 or b < 0:
        raise InputError(f'binomial arguments must be nonnegative, got ({a}, {b})')
    return math.comb(a, b)


def binom_log(a, b):
    '''Return log binom(a, b) for a real a >= 0 via log-gamma.

    Returns 0.0 for b = 0 and -inf for b > a.
    '''
    if a < 0 or b < 0:
        raise InputError(f'binomial arguments must be nonnegative, got ({a}, {b})')
    if b == 0:
        return 0.0
    if b > a:
        return -math.inf
    return float(gammaln(a + 1) - gammaln(b + 1) - gammaln(a - b + 1))


def count_independent_sets(graph, m, budget_nodes=DEFAULT_BUDGET_NODES, workers=1):
    '''Count the independent m-sets of a graph exactly.

    Vertices are branched on in reverse degeneracy order (dense core first). A
    branch stops as soon as fewer candidates remain than vertices are needed.

    Parameters
    ----------
    graph : DenseGraph
    m : int
    budget_nodes : int, optional
        Search nodes allowed over all subtrees.
    workers : int, optional
        Worker processes; the count does not depend on it.

    Returns
    -------
    ExactCount
    '''
    if m < 0:
        raise InputError(f'm must be nonnegative, got {m}')
    order = _degeneracy_order(graph)[::-1]
    # Relabel so that bit i is the i-th vertex in branching order
    position = {old: new for new, old in enumerate(order)}
    rows = [0] * len(order)
    for old, row in enumerate(graph.rows):
        rows[position[old]] = bt.from_indices(position[j] for j in bt.iter_bits(row))
    jobs = _split_independent(rows, bt.full_mask(len(rows)), m, depth=2)
    jobs = [(rows, cand, need, budget_nodes) for cand, need in jobs]
    return _merge_counts(par.ordered_map(_count_independent_job, jobs,
                                         par.worker_count(len(jobs), workers)),
                         budget_nodes)


def count_sum_free(G, m, mode='group_sense', budget_nodes=DEFAULT_BUDGET_NODES,
                   workers=1, order=None):
    '''Count the sum-free m-subsets of G exactly.

    The search extends a set only by elements that come later in the extension
    order and keep it sum-free, so every set is reached once.

    Parameters
    ----------
    G : GroupSpec
    m : int
    mode : {'group_sense', 'hypergraph_sense'}
        ``group_sense`` counts sets with (A + A) n A empty. ``hypergraph_sense``
        counts independent sets of the Schur hypergraph, where only relations
        between three distinct elements are forbidden.
    order : sequence of int, optional
        Extension order as a permutation of the linear indices. Defaults to
        index order. Any order gives the same count.

    Returns
    -------
    ExactCount
    '''
    if m < 0:
        raise InputError(f'm must be nonnegative, got {m}')
    search = _SumFreeSearch(G, mode, order)
    jobs = [(search, chosen, forbidden, cand, need, budget_nodes)
            for chosen, forbidden, cand, need in search.split(m)]
    return _merge_counts(par.ordered_map(_count_sum_free_job, jobs,
                                         par.worker_count(len(jobs), workers)),
                         budget_nodes)


def max_sum_free_sets(G, budget_nodes=DEFAULT_BUDGET_NODES):
    '''Return the largest size of a sum-free set and all sets of that size.

    Found by exhaustive search; the sets are bit-vectors sorted by index list.
    '''
    search = _SumFreeSearch(G, 'group_sense')
    best, sets = search.maximum(budget_nodes)
    return best, sorted(sets, key=bt.to_indices)


def independence_number(graph):
    '''Return the independence number by branch and bound.'''
    n = len(graph)
    if n > MAX_SEARCH_VERTICES:
        raise InputError(f'independence_number is limited to {MAX_SEARCH_VERTICES} '
                         f'vertices, got {n}')
    rows = graph.rows
    best = 0

    def extend(cand, size):
        nonlocal best
        if size + bt.popcount(cand) <= best:
            return
        if not cand:
            best = size
            return
        v = bt.lowest_bit(cand)
        rest = cand & ~(1 << v)
        if rows[v] & rest:
            extend(rest & ~rows[v], size + 1)
            extend(rest, size)
        else:
            # An isolated vertex belongs to some maximum set
            extend(rest, size + 1)

    extend(bt.full_mask(n), 0)
    return best


def janson_stats(family, m, n, exact=False):
    '''Return mu = sum p^|U_i| and Delta over ordered intersecting pairs, p = m/n.

    Parameters
    ----------
    family : iterable of iterables
        Nonempty subsets U_i of {0, ..., n-1}.
    m, n : int
    exact : bool, optional
        Use Fractions instead of floats.

    Returns
    -------
    JansonStats
    '''
    if not 0 <= m <= n:
        raise InputError(f'need 0 <= m <= n, got m={m}, n={n}')
    masks = [bt.from_indices(u) for u in family]
    for u in masks:
        if u == 0 or u >> n:
            raise InputError('family members must be nonempty subsets of the n-set')
    p = Fraction(m, n) if exact else m / n
    zero = Fraction(0) if exact else 0.0
    mu = sum((p ** bt.popcount(u) for u in masks), zero)
    delta = zero
    for i, u in enumerate(masks):
        for v in masks[i + 1:]:
            if u & v:
                delta += 2 * p ** bt.popcount(u | v)
    return JansonStats(mu, delta, len(masks), m, n)


def janson_bounds(stats, pittel_constant_mode='sqrt_m', constant=None):
    '''Return the Janson bounds and the hypergeometric transfer factor.

    Parameters
    ----------
    stats : JansonStats
    pittel_constant_mode : {'sqrt_m', 'abstract_C'}
        ``sqrt_m`` uses 3 sqrt(m), which always holds. ``abstract_C`` uses the
        supplied ``constant`` and is meant for exploration only.

    Returns
    -------
    JansonBounds
    '''
    mu = float(stats.mu)
    delta = float(stats.delta_sum)
    # Bounds at or above 1 carry no information
    product = math.exp(min(delta / 2 - mu, 0.0))
    if delta == 0:
        max_form = math.exp(-mu / 2)
    else:
        max_form = max(math.exp(-mu / 2), math.exp(-mu**2 / (2 * delta)))
    if pittel_constant_mode == 'sqrt_m':
        # A 0-subset is the p = 0 sample, empty with probability 1
        factor = 3 * math.sqrt(stats.m) if stats.m >= 1 else 1.0
    elif pittel_constant_mode == 'abstract_C':
        if constant is None or constant <= 0:
            raise InputError('abstract_C mode needs a positive constant')
        factor = float(constant)
    else:
        raise InputError(f'unknown Pittel constant mode {pittel_constant_mode!r}')
    return JansonBounds(product, max_form, factor, pittel_constant_mode)


def exact_no_Ui_probability(family, m, n):
    '''Return P(a uniform m-subset of the n-set contains no U_i) exactly.'''
    total = math.comb(n, m)
    if total > ENUMERATION_BUDGET:
        raise InputError(f'binom({n}, {m}) = {total} exceeds the enumeration budget '
                         f'{ENUMERATION_BUDGET}')
    masks = [bt.from_indices(u) for u in family]
    avoiding = 0
    for subset in itertools.combinations(range(n), m):
        chosen = bt.from_indices(subset)
        if not any(u & chosen == u for u in masks):
            avoiding += 1
    return Fraction(avoiding, total)


def thm_graphs_bound(n, d, lam, eps, m):
    '''Return log binom(floor((lam / (d + lam) + eps) n), m).

    The log is -inf when the floored argument is below m.
    '''
    if d <= 0 or lam <= 0 or eps < 0:
        raise InputError('need d > 0, lambda > 0 and eps >= 0')
    ratio = _exact(lam) / (_exact(d) + _exact(lam)) + _exact(eps)
    raw = ratio * n
    argument = math.floor(raw)
    return BoundRecord('thm_graphs', binom_log(argument, m), argument, float(raw),
                       floored=raw != argument)


def alon_rodl_bound(n, d, lam, m):
    '''Return log[(e m d^2 / (4 lam n log n))^{2(n/d) log n} binom(2 lam n / d, m)].

    Not applicable when m < 2(n/d) log n.
    '''
    if d <= 0 or lam <= 0 or n < 2:
        raise InputError('need d > 0, lambda > 0 and n >= 2')
    exponent = 2 * (n / d) * math.log(n)
    raw = 2 * lam * n / d
    argument = math.floor(raw)
    if m < exponent:
        return BoundRecord('alon_rodl', math.nan, argument, raw,
                           floored=raw != argument, applicable=False)
    base = math.e * m * d**2 / (4 * lam * n * math.log(n))
    log_value = exponent * math.log(base) + binom_log(argument, m)
    return BoundRecord('alon_rodl', log_value, argument, raw, floored=raw != argument)


def basic_algorithm_bound(n, stop_size, max_selected, m):
    '''Return sum_{t <= max_selected} binom(n, t) binom(stop_size, m - t).

    Every independent m-set I is determined by its certificate S and by I minus S,
    a subset of the available set. So this counts an upper bound on the
    independent m-sets whenever every certificate has at most ``max_selected``
    elements and every available set at most ``stop_size``.
    '''
    return sum(math.comb(n, t) * math.comb(stop_size, m - t)
               for t in range(min(max_selected, m) + 1))


def lambda_q(q):
    '''Return 1 for q = 2 and 1/2 otherwise.'''
    return Fraction(1) if q == 2 else Fraction(1, 2)


def one_outside_lower_bound(n, mu_n, m):
    '''Evaluate (n/2)(mu n - 3m)^{m-1} / (m-1)!, clamped at 0.'''
    if m < 1:
        return 0.0
    if m == 1:
        return n / 2
    base = mu_n - 3 * m
    if base <= 0:
        return 0.0
    return math.exp(math.log(n / 2) + (m - 1) * math.log(base) - math.lgamma(m))


def sf_count_prediction(G, m, family=None):
    '''Return the SF0-based prediction for the number of sum-free m-sets.

    Parameters
    ----------
    G : GroupSpec
        A group of Type I(q).
    m : int
    family : MaxSumFreeFamily, optional
        Defaults to SF0(G).

    Returns
    -------
    Prediction
    '''
    family = enumerate_SF0(G) if family is None else family
    q = family.q
    size = family.set_size
    first = sum(math.comb(bt.popcount(b), m) for b in family)
    second = sum(math.comb(bt.popcount(a & b), m)
                 for i, a in enumerate(family.sets) for b in family.sets[i + 1:])
    formula = lambda_q(q) * count_elements_of_order(G, q)
    return Prediction(group=str(G), n=G.order, m=m, q=q, family_size=len(family),
                      formula_family_size=formula, set_size=size,
                      leading=len(family) * math.comb(size, m),
                      lower_bonf=first - second, upper_bonf=first,
                      one_outside=one_outside_lower_bound(G.order, size, m))


def count_row(G, m, mode='group_sense', budget_nodes=DEFAULT_BUDGET_NODES, workers=1,
              family=None):
    '''Return one counting-table row as a dict.

    Keys follow the table header ``n,m,exact,leading,lower_bonf,upper_bonf,ratio``.
    A budget failure gives ``exact = None`` and a ``budget_exhausted`` flag.
    '''
    prediction = sf_count_prediction(G, m, family)
    try:
        exact = count_sum_free(G, m, mode, budget_nodes, workers).value
        exhausted = False
    except BudgetExhausted:
        exact, exhausted = None, True
    ratio = None if exact is None else prediction.ratio(exact)
    return {'n': G.order, 'm': m, 'exact': exact, 'leading': prediction.leading,
            'lower_bonf': prediction.lower_bonf, 'upper_bonf': prediction.upper_bonf,
            'ratio': ratio, 'budget_exhausted': exhausted}


class _SumFreeSearch:
    '''Index tables for the sum-free DFS, expressed in extension ranks.'''

    def __init__(self, G, mode='group_sense', order=None):
        if mode not in ('group_sense', 'hypergraph_sense'):
            raise InputError(f'mode must be "group_sense" or "hypergraph_sense", '
                             f'got {mode!r}')
        n = G.order
        order = list(range(n)) if order is None else [int(x) for x in order]
        if sorted(order) != list(range(n)):
            raise InputError('order must be a permutation of the linear indices')
        rank = np.empty(n, dtype=np.intp)
        rank[order] = np.arange(n)
        # Tables indexed and valued by rank
        self.add = rank[G.addition_table[np.ix_(order, order)]].tolist()
        self.sub = rank[G.subtraction_table[np.ix_(order, order)]].tolist()
        doubled = rank[G.doubling[order]]
        self.halves = [0] * n
        for r, h in enumerate(doubled.tolist()):
            self.halves[h] |= 1 << r
        self.order = order
        self.n = n
        self.group_sense = mode == 'group_sense'
        self.initial_forbidden = (1 << int(rank[0])) if self.group_sense else 0

    def forbid(self, x, chosen, forbidden):
        '''Return the forbidden mask after adding rank x to the chosen ranks.'''
        add, sub = self.add, self.sub
        # x + s, s - x and x - s may no longer be chosen
        for s in chosen:
            forbidden |= (1 << add[x][s]) | (1 << sub[s][x]) | (1 << sub[x][s])
        if self.group_sense:
            # Repeated summands: 2x, and every y with 2y = x
            forbidden |= (1 << add[x][x]) | self.halves[x]
        return forbidden

    def split(self, m):
        '''Expand the first two branch decisions into independent subtrees.'''
        root = ((), self.initial_forbidden,
                bt.full_mask(self.n) & ~self.initial_forbidden, m)
        states = [root]
        for _ in range(2):
            expanded = []
            for chosen, forbidden, cand, need in states:
                if need == 0:
                    expanded.append((chosen, forbidden, cand, need))
                    continue
                for x in bt.iter_bits(cand):
                    later = cand >> (x + 1) << (x + 1)
                    new_forbidden = self.forbid(x, chosen, forbidden)
                    expanded.append((chosen + (x,), new_forbidden,
                                     later & ~new_forbidden, need - 1))
            states = expanded
        return states

    def count(self, chosen, forbidden, cand, need, budget):
        nodes = 0

        def extend(chosen, forbidden, cand, need):
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise _Exhausted()
            if need == 0:
                return 1
            available = bt.popcount(cand)
            if available < need:
                return 0
            # Candidates are still sum-free with every chosen rank
            if need == 1:
                return available
            total = 0
            for x in bt.iter_bits(cand):
                later = cand >> (x + 1) << (x + 1)
                # Too few larger ranks left to finish
                if bt.popcount(later) + 1 < need:
                    break
                new_forbidden = self.forbid(x, chosen, forbidden)
                total += extend(chosen + (x,), new_forbidden, later & ~new_forbidden,
                                need - 1)
            return total

        try:
            return extend(chosen, forbidden, cand, need), nodes, False
        except _Exhausted:
            return 0, nodes, True

    def maximum(self, budget):
        best = 0
        found = []
        nodes = 0

        def extend(chosen, forbidden, cand):
            nonlocal best, found, nodes
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(nodes, len(found), budget)
            if len(chosen) + bt.popcount(cand) < best:
                return
            if len(chosen) > best:
                best, found = len(chosen), []
            if len(chosen) == best:
                found.append(bt.from_indices(self.order[r] for r in chosen))
            for x in bt.iter_bits(cand):
                later = cand >> (x + 1) << (x + 1)
                new_forbidden = self.forbid(x, chosen, forbidden)
                extend(chosen + (x,), new_forbidden, later & ~new_forbidden)

        extend((), self.initial_forbidden,
               bt.full_mask(self.n) & ~self.initial_forbidden)
        return best, found


class _Exhausted(Exception):
    pass


def _count_sum_free_job(job):
    search, chosen, forbidden, cand, need, budget = job
    return search.count(chosen, forbidden, cand, need, budget)


def _count_independent_job(job):
    rows, cand, need, budget = job
    nodes = 0

    def extend(cand, need):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Exhausted()
        if need == 0:
            return 1
        available = bt.popcount(cand)
        if available < need:
            return 0
        # Any single candidate completes the set
        if need == 1:
            return available
        v = bt.lowest_bit(cand)
        rest = cand & ~(1 << v)
        # Take v and drop its neighbours, or skip v
        return extend(rest & ~rows[v], need - 1) + extend(rest, need)

    try:
        return extend(cand, need), nodes, False
    except _Exhausted:
        return 0, nodes, True


def _split_independent(rows, cand, m, depth):
    # Include / exclude the lowest candidate, ``depth`` levels deep
    states = [(cand, m)]
    for _ in range(depth):
        expanded = []
        for cand, need in states:
            if need == 0 or bt.popcount(cand) < need:
                expanded.append((cand, need))
                continue
            v = bt.lowest_bit(cand)
            rest = cand & ~(1 << v)
            expanded.append((rest & ~rows[v], need - 1))
            expanded.append((rest, need))
        states = expanded
    return states


def _merge_counts(parts, budget):
    value = sum(p[0] for p in parts)
    nodes = sum(p[1] for p in parts)
    if any(p[2] for p in parts) or nodes > budget:
        raise BudgetExhausted(nodes, value, budget)
    return ExactCount(value, nodes)


def _degeneracy_order(graph):
    # Smallest-last order: repeatedly remove a vertex of minimum remaining degree
    remaining = bt.full_mask(len(graph))
    order = []
    while remaining:
        v = min(bt.iter_bits(remaining),
                key=lambda u: (bt.popcount(graph.rows[u] & remaining), u))
        order.append(v)
        remaining &= ~(1 << v)
    return order


def _exact(value):
    # Shortest decimal repr keeps 0.05 as 1/20
    if isinstance(value, Fraction):
        return value
    return Fraction(repr(value)) if isinstance(value, float) else Fraction(value)
