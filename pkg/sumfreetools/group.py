'''
Finite Abelian groups given as products of cyclic factors.

Elements are addressed by a linear index 0..n-1 obtained by mixed-radix encoding of
their residue tuples, the first factor being the most significant digit. This fixed
order is the base ordering every tie-break in the package relies on, so it is part
of the certificate contract of ``sumfreetools.encoding``.
'''

# Standard library imports
import re
import math
import itertools
from dataclasses import dataclass
from functools import cached_property, reduce

# Third party imports
import numpy as np
import sympy

# Project specific imports
from sumfreetools._errors import InputError
import sumfreetools._bits as bt

__all__ = ['GroupSpec', 'GroupElement', 'Character', 'Homomorphism', 'parse_group',
           'element_order', 'count_elements_of_order', 'smallest_typeI_prime',
           'surjective_homs_to_Zq', 'character_value', 'character_table',
           'index_two_subgroups', 'abelian_groups']


_GROUP_PATTERN = re.compile(r'^\s*z(\d+)((?:\s*x\s*z\d+)*)\s*$', re.IGNORECASE)


@dataclass(frozen=True)
class GroupElement:
    '''An element of a GroupSpec as a tuple of reduced residues.'''
    residues: tuple

    def __str__(self):
        return '(' + ','.join(str(r) for r in self.residues) + ')'


@dataclass(frozen=True)
class GroupSpec:
    '''A finite Abelian group Z_{n_1} x ... x Z_{n_k}.

    No canonicalization is done: ``Z6`` and ``Z2xZ3`` are different inputs even
    though the groups are isomorphic.

    Parameters
    ----------
    factors : tuple of int
        Cyclic orders n_1, ..., n_k, each at least 2.

    '''
    factors: tuple

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        if not factors:
            raise InputError('a group needs at least one cyclic factor')
        for f in factors:
            if f < 2:
                raise InputError(f'cyclic factor Z{f} is below 2')
        object.__setattr__(self, 'factors', factors)

    def __str__(self):
        return 'x'.join(f'Z{f}' for f in self.factors)

    def __len__(self):
        return self.order

    @property
    def order(self):
        return math.prod(self.factors)

    @property
    def rank(self):
        return len(self.factors)

    @cached_property
    def weights(self):
        '''Mixed-radix place values of the factors.'''
        return np.array([math.prod(self.factors[i + 1:])
                         for i in range(self.rank)], dtype=np.int64)

    @cached_property
    def residues(self):
        '''Residue tuples of all elements as an (n, k) array in index order.'''
        grid = np.indices(self.factors).reshape(self.rank, -1)
        return np.ascontiguousarray(grid.T)

    @cached_property
    def addition_table(self):
        '''Table ``T[x, y]`` holding the index of x + y.'''
        n = self.order
        table = np.zeros((n, n), dtype=np.intp)
        for i, f in enumerate(self.factors):
            column = self.residues[:, i]
            table += ((column[:, None] + column[None, :]) % f) * self.weights[i]
        return table

    @cached_property
    def negation(self):
        '''Array holding the index of -x for each x.'''
        return ((-self.residues) % np.array(self.factors)) @ self.weights

    @cached_property
    def subtraction_table(self):
        '''Table ``T[x, y]`` holding the index of x - y.'''
        return self.addition_table[:, self.negation]

    @cached_property
    def doubling(self):
        '''Array holding the index of 2x for each x.'''
        return np.diagonal(self.addition_table).copy()

    @cached_property
    def element_orders(self):
        '''Order of every element, in index order.'''
        n_i = np.array(self.factors)
        per_factor = n_i // np.gcd(self.residues, n_i)
        return np.lcm.reduce(per_factor, axis=1)

    @cached_property
    def exponent(self):
        '''Least common multiple of the factors.'''
        return reduce(math.lcm, self.factors)

    @cached_property
    def phase_table(self):
        '''Integer phases p with chi_a(x) = exp(2 pi i p[a, x] / exponent).'''
        # Phases are kept as reduced integers so that each root of unity comes from
        # one exact argument
        scale = self.exponent // np.array(self.factors)
        return ((self.residues * scale) @ self.residues.T) % self.exponent

    def index(self, element):
        '''Return the linear index of an element.

        Parameters
        ----------
        element : GroupElement, tuple or int
            A GroupElement or residue tuple (residues are reduced), or a linear
            index which is returned after a range check.

        Returns
        -------
        int
        '''
        if isinstance(element, GroupElement):
            element = element.residues
        if isinstance(element, (int, np.integer)):
            if not 0 <= element < self.order:
                raise InputError(f'index {element} is outside {self}')
            return int(element)
        if len(element) != self.rank:
            raise InputError(f'element {tuple(element)} does not have {self.rank} '
                             f'residues')
        reduced = [int(x) % f for x, f in zip(element, self.factors)]
        return int(np.dot(reduced, self.weights))

    def element(self, index):
        '''Return the GroupElement with the given linear index.'''
        return GroupElement(tuple(int(r) for r in self.residues[self.index(index)]))

    def elements(self):
        '''Iterate over all elements in index order.'''
        for i in range(self.order):
            yield self.element(i)

    def indices(self, elements):
        '''Return the sorted, deduplicated linear indices of an element set.'''
        return sorted({self.index(e) for e in elements})

    def mask(self, elements):
        '''Return an element set as a bit-vector.'''
        return bt.from_indices(self.indices(elements))

    def add(self, x, y):
        return int(self.addition_table[self.index(x), self.index(y)])

    def neg(self, x):
        return int(self.negation[self.index(x)])

    def sub(self, x, y):
        return int(self.subtraction_table[self.index(x), self.index(y)])

    def parse_element(self, text):
        '''Parse ``(1,0)`` style residue tuples or a bare linear index.'''
        text = text.strip()
        if text.startswith('(') and text.endswith(')'):
            try:
                residues = tuple(int(r) for r in text[1:-1].split(','))
            except ValueError:
                raise InputError(f'malformed element {text!r}') from None
            return self.index(residues)
        if not text.isdigit():
            raise InputError(f'malformed element {text!r}')
        return self.index(int(text))


@dataclass(frozen=True)
class Character:
    '''The character chi_a(x) = exp(2 pi i sum_j a_j x_j / n_j) of a group.'''
    group: GroupSpec
    index: int

    def __call__(self, x):
        return character_value(self.group, self.index, x)

    @property
    def is_trivial(self):
        return self.index == 0

    @property
    def range_size(self):
        '''Number of distinct values, which equals the order of a.'''
        return int(self.group.element_orders[self.index])

    @cached_property
    def phases(self):
        '''Integer phases p(x) with chi(x) = exp(2 pi i p(x) / exponent).'''
        return self.group.phase_table[self.index]

    @cached_property
    def values(self):
        '''Character values over all elements, in index order.'''
        return _roots(self.phases, self.group.exponent)


@dataclass(frozen=True)
class Homomorphism:
    '''A homomorphism phi(x) = sum_i a_i x_i mod q from a group onto Z_q.'''
    group: GroupSpec
    q: int
    coefficients: tuple

    def __call__(self, x):
        return int(self.images[self.group.index(x)])

    @cached_property
    def images(self):
        '''Image of every element, in index order.'''
        return (self.group.residues @ np.array(self.coefficients)) % self.q

    def preimage(self, values):
        '''Return phi^{-1}(values) as a bit-vector.'''
        return bt.from_bool_array(np.isin(self.images, list(values)))

    @property
    def kernel(self):
        return self.preimage([0])


def parse_group(text):
    '''Parse a group spec of the form ``Z<int>(xZ<int>)*``, case-insensitive.

    Parameters
    ----------
    text : str
        Group spec, e.g. ``'Z4xZ2'``.

    Returns
    -------
    GroupSpec
    '''
    match = _GROUP_PATTERN.match(text)
    if match is None:
        raise InputError(f'cannot parse group spec {text!r}; expected Z<int>(xZ<int>)*')
    factors = [int(match.group(1))] + [int(f) for f in
                                       re.findall(r'\d+', match.group(2))]
    return GroupSpec(tuple(factors))


def element_order(G, g):
    '''Return the smallest t >= 1 with t*g = 0.'''
    return int(G.element_orders[G.index(g)])


def count_elements_of_order(G, q):
    '''Return the number of elements of order exactly q.'''
    if q < 1:
        raise InputError(f'element orders are positive, got {q}')
    return int(np.count_nonzero(G.element_orders == q))


def smallest_typeI_prime(G):
    '''Return the smallest prime q | |G| with q = 2 (mod 3), or None.

    A group with such a prime is of Type I(q).
    '''
    for p in sympy.primefactors(G.order):
        if p % 3 == 2:
            return int(p)
    return None


def surjective_homs_to_Zq(G, q):
    '''Return all surjective homomorphisms G -> Z_q for a prime q.

    A coefficient a_i may be nonzero only when q divides n_i, which makes
    phi(x) = sum a_i x_i mod q well defined. Every nonzero coefficient tuple gives
    a surjection, so there are q^c - 1 of them with c = #{i : q | n_i}.

    Parameters
    ----------
    G : GroupSpec
    q : int
        A prime.

    Returns
    -------
    list of Homomorphism
        In lexicographic order of the coefficient tuples.
    '''
    if not sympy.isprime(q):
        raise InputError(f'q = {q} is not prime')
    choices = [range(q) if f % q == 0 else (0,) for f in G.factors]
    homs = []
    for coefficients in itertools.product(*choices):
        if any(coefficients):
            homs.append(Homomorphism(G, q, tuple(coefficients)))
    return homs


def character_value(G, a, x):
    '''Return chi_a(x) = exp(2 pi i sum_j a_j x_j / n_j).'''
    a_res = G.residues[G.index(a)]
    x_res = G.residues[G.index(x)]
    scale = G.exponent // np.array(G.factors)
    phase = int(np.sum(a_res * x_res * scale)) % G.exponent
    return complex(_roots(np.array([phase]), G.exponent)[0])


def character_table(G):
    '''Return the n x n complex matrix with entry [a, x] = chi_a(x).'''
    return _roots(G.phase_table, G.exponent)


def index_two_subgroups(G):
    '''Return the subgroups of index 2 as bit-vectors.

    Each is the kernel of a surjection onto Z_2, so there are as many as there
    are elements of order 2.
    '''
    return [h.kernel for h in surjective_homs_to_Zq(G, 2)]


def abelian_groups(max_order, max_rank=3):
    '''Return one group per isomorphism class of order at most ``max_order``.

    Groups are built from invariant factors n_1 | n_2 | ... | n_k with k <= max_rank
    and are sorted by order, then by factor list.
    '''
    found = []

    def extend(factors, product):
        if factors:
            found.append(factors)
        if len(factors) == max_rank:
            return
        last = factors[-1] if factors else 1
        for f in range(max(2, last), max_order // product + 1, last):
            extend(factors + (f,), product * f)

    extend((), 1)
    found.sort(key=lambda f: (math.prod(f), f))
    return [GroupSpec(f) for f in found]


def _roots(phases, modulus):
    angle = 2 * np.pi * np.asarray(phases) / modulus
    return np.cos(angle) + 1j * np.sin(angle)
