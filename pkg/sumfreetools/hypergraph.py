'''
The Schur-triple hypergraph of a group and the graphs derived from it.

An edge of ``SchurHypergraph(G)`` is a 3-element set {x, y, z} of distinct
elements with x + y = z. Triples that need a repeated element (x + x = 2x and
x + 0 = x) are not edges; with ``include_degenerate=True`` they are kept as extra
constraints so that independence coincides with sum-freeness.

Graphs are ``DenseGraph`` objects holding one bit-vector row per vertex.
'''

# Standard library imports
import re
from dataclasses import dataclass
from functools import cached_property

# Third party imports
import numpy as np
import networkx as nx

# Project specific imports
from sumfreetools._errors import InputError
import sumfreetools._bits as bt

__all__ = ['DenseGraph', 'SchurHypergraph', 'HypergraphStats', 'graph_from_name',
           'is_sum_free', 'is_independent', 'schur_triple_count', 'delta2',
           'hypergraph_stats', 'link_matrix', 'link_graph', 'cayley_graph_star']


_NAMED_GRAPH = re.compile(r'^(?:([CKP])(\d+)|K(\d+),(\d+))$', re.IGNORECASE)


@dataclass(frozen=True)
class DenseGraph:
    '''A simple undirected graph with bit-vector adjacency rows.

    Parameters
    ----------
    vertices : tuple
        Vertex labels. Position i in this tuple is bit i in every row, and the
        position order is the tie-break order of the encoding algorithms.
    rows : tuple of int
        Adjacency bit-vectors, one per vertex.
    regular_degree : int, optional
        If set, every row must have exactly this many bits.

    '''
    vertices: tuple
    rows: tuple
    regular_degree: int = None

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(self.vertices))
        object.__setattr__(self, 'rows', tuple(int(r) for r in self.rows))
        if len(self.rows) != len(self.vertices):
            raise InputError('one adjacency row per vertex is required')
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError('vertex labels must be distinct')
        n = len(self.vertices)
        for i, row in enumerate(self.rows):
            if row >> n:
                raise InputError(f'row {i} refers to a vertex beyond {n - 1}')
            if row >> i & 1:
                raise InputError(f'vertex {self.vertices[i]} has a self-loop')
            for j in bt.iter_bits(row):
                if not self.rows[j] >> i & 1:
                    raise InputError(f'adjacency between {self.vertices[i]} and '
                                     f'{self.vertices[j]} is not symmetric')
        if self.regular_degree is not None:
            if any(bt.popcount(r) != self.regular_degree for r in self.rows):
                raise InputError(f'graph is not {self.regular_degree}-regular')

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return (f'DenseGraph(n={len(self)}, edges={self.edge_count}, '
                f'regular_degree={self.regular_degree})')

    @classmethod
    def from_matrix(cls, vertices, matrix, regular_degree=None):
        '''Build a graph from a boolean adjacency matrix.'''
        matrix = np.asarray(matrix, dtype=bool)
        rows = [bt.from_bool_array(r) for r in matrix]
        return cls(tuple(vertices), tuple(rows), regular_degree)

    @classmethod
    def from_edges(cls, vertices, edges, regular_degree=None):
        '''Build a graph from an iterable of label pairs.'''
        vertices = tuple(vertices)
        position = {v: i for i, v in enumerate(vertices)}
        rows = [0] * len(vertices)
        for u, v in edges:
            if u not in position or v not in position:
                raise InputError(f'edge ({u}, {v}) uses an unknown vertex')
            i, j = position[u], position[v]
            if i == j:
                raise InputError(f'self-loop at {u}')
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(vertices, tuple(rows), regular_degree)

    @classmethod
    def from_networkx(cls, graph):
        '''Build a graph from a networkx graph, vertices in sorted order.'''
        vertices = sorted(graph.nodes)
        return cls.from_edges(vertices, graph.edges)

    @classmethod
    def from_edge_list(cls, path, n=None):
        '''Read a ``u v`` per line edge list of integer labels.

        With ``n`` given, the vertex set is 0..n-1 so isolated vertices survive.
        '''
        edges = []
        with open(path) as f:
            for line_no, line in enumerate(f, start=1):
                line = line.strip()
                if not line or line.startswith('#'):
                    continue
                parts = line.split()
                if len(parts) != 2 or not all(p.isdigit() for p in parts):
                    raise InputError(f'{path}:{line_no}: expected "u v", got {line!r}')
                edges.append((int(parts[0]), int(parts[1])))
        if n is None:
            vertices = sorted({v for e in edges for v in e})
        else:
            vertices = list(range(n))
        return cls.from_edges(vertices, edges)

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges())
        return graph

    def write_edge_list(self, path):
        '''Write one ``u v`` pair per line, by vertex label.'''
        with open(path, 'w') as f:
            for u, v in self.edges():
                f.write(f'{u} {v}\n')

    @cached_property
    def matrix(self):
        '''Adjacency matrix as a boolean numpy array.'''
        n = len(self)
        out = np.zeros((n, n), dtype=bool)
        for i, row in enumerate(self.rows):
            out[i, bt.to_indices(row)] = True
        return out

    @property
    def degrees(self):
        return np.array([bt.popcount(r) for r in self.rows], dtype=np.int64)

    @property
    def max_degree(self):
        return int(self.degrees.max()) if len(self) else 0

    @property
    def edge_count(self):
        return sum(bt.popcount(r) for r in self.rows) // 2

    def is_regular(self):
        '''Return the common degree, or None for an irregular graph.'''
        degrees = set(self.degrees.tolist())
        return degrees.pop() if len(degrees) == 1 else None

    def position(self, label):
        try:
            return self.vertices.index(label)
        except ValueError:
            raise InputError(f'{label!r} is not a vertex') from None

    def positions_mask(self, labels):
        '''Return a set of vertex labels as a bit-vector over positions.'''
        return bt.from_indices(self.position(v) for v in labels)

    def labels(self, mask):
        '''Return the labels of a bit-vector over positions, in position order.'''
        return [self.vertices[i] for i in bt.iter_bits(mask)]

    def edges(self):
        '''Yield every edge once as a label pair, in position order.'''
        for i, row in enumerate(self.rows):
            for j in bt.iter_bits(row >> (i + 1)):
                yield self.vertices[i], self.vertices[i + 1 + j]

    def is_independent(self, labels):
        mask = self.positions_mask(labels)
        return all(not (self.rows[i] & mask) for i in bt.iter_bits(mask))

    def induced(self, labels):
        '''Return the subgraph induced by the given labels, in position order.'''
        keep = sorted(self.position(v) for v in set(labels))
        sub = self.matrix[np.ix_(keep, keep)]
        return DenseGraph.from_matrix([self.vertices[i] for i in keep], sub)


@dataclass(frozen=True)
class HypergraphStats:
    '''Edge count, co-degree maximum and vertex degrees of a hypergraph.'''
    edge_count: int
    delta2: int
    degrees: tuple

    @property
    def max_degree(self):
        return max(self.degrees) if self.degrees else 0


@dataclass(frozen=True)
class SchurHypergraph:
    '''The 3-uniform hypergraph of Schur triples of a group.

    Parameters
    ----------
    group : GroupSpec
    include_degenerate : bool, optional
        If True, the degenerate relations 0 + 0 = 0 and x + x = 2x are kept as the
        extra constraints {0} and {x, 2x}. They restrict independence only; edge
        statistics always describe the 3-uniform part. Defaults to False.

    '''
    group: object
    include_degenerate: bool = False

    @cached_property
    def edges(self):
        '''All edges as an (e, 3) array of sorted linear indices.'''
        n = self.group.order
        x, y = np.triu_indices(n, k=1)
        z = self.group.addition_table[x, y]
        keep = (z != x) & (z != y)
        triples = np.sort(np.stack([x[keep], y[keep], z[keep]], axis=1), axis=1)
        if len(triples) == 0:
            return np.zeros((0, 3), dtype=np.intp)
        return np.unique(triples, axis=0)

    @property
    def order(self):
        return self.group.order

    @property
    def edge_count(self):
        return len(self.edges)

    @cached_property
    def degrees(self):
        return np.bincount(self.edges.ravel(), minlength=self.order)

    @cached_property
    def degenerate_pairs(self):
        '''Pairs {x, 2x} with 2x != x, as an (p, 2) array.'''
        x = np.arange(self.order)
        doubled = self.group.doubling
        keep = doubled != x
        return np.stack([x[keep], doubled[keep]], axis=1)

    def flags(self, elements):
        '''Return an element set as a boolean membership array.'''
        flags = np.zeros(self.order, dtype=bool)
        flags[self.group.indices(elements)] = True
        return flags


def graph_from_name(name):
    '''Build a named graph: ``C<n>``, ``K<n>``, ``P<n>`` or ``K<a>,<b>``.'''
    match = _NAMED_GRAPH.match(name.strip())
    if match is None:
        raise InputError(f'unknown graph name {name!r}; use C<n>, K<n>, P<n> or '
                         f'K<a>,<b>')
    kind, size, a, b = match.groups()
    if kind is None:
        return DenseGraph.from_networkx(nx.complete_bipartite_graph(int(a), int(b)))
    size = int(size)
    if kind.upper() == 'C':
        if size < 3:
            raise InputError('cycles need at least 3 vertices')
        return DenseGraph.from_networkx(nx.cycle_graph(size))
    if kind.upper() == 'K':
        return DenseGraph.from_networkx(nx.complete_graph(size))
    return DenseGraph.from_networkx(nx.path_graph(size))


def is_sum_free(G, A):
    '''Return True iff (A + A) and A are disjoint, x = y allowed.'''
    members = np.array(G.indices(A), dtype=np.intp)
    if len(members) == 0:
        return True
    sums = G.addition_table[np.ix_(members, members)]
    return not np.isin(sums, members).any()


def is_independent(H, A):
    '''Return True iff no edge of H lies inside A.

    Sum-free sets are independent; the converse fails because degenerate triples
    are not edges, unless H was built with ``include_degenerate=True``.
    '''
    flags = H.flags(A)
    if flags[H.edges].all(axis=1).any():
        return False
    if H.include_degenerate:
        if flags[0]:
            return False
        if flags[H.degenerate_pairs].all(axis=1).any():
            return False
    return True


def schur_triple_count(H, A):
    '''Return e(H[A]), the number of edges inside A.'''
    flags = H.flags(A)
    return int(flags[H.edges].all(axis=1).sum())


def delta2(H):
    '''Return the maximum co-degree over all vertex pairs.'''
    edges = H.edges
    if len(edges) == 0:
        return 0
    n = H.order
    # Each edge {a, b, c} contributes to the pairs ab, ac and bc
    pair_keys = np.concatenate([edges[:, 0] * n + edges[:, 1],
                                edges[:, 0] * n + edges[:, 2],
                                edges[:, 1] * n + edges[:, 2]])
    _, counts = np.unique(pair_keys, return_counts=True)
    return int(counts.max())


def hypergraph_stats(H):
    return HypergraphStats(edge_count=H.edge_count, delta2=delta2(H),
                           degrees=tuple(int(d) for d in H.degrees))


def link_matrix(H, T):
    '''Return the adjacency matrix of G_T on the full vertex set.

    u ~ v iff {u, v, w} is an edge of H for some w in T.
    '''
    n = H.order
    in_T = H.flags(T)
    out = np.zeros((n, n), dtype=bool)
    edges = H.edges
    for k in range(3):
        w = edges[:, k]
        u = edges[:, (k + 1) % 3]
        v = edges[:, (k + 2) % 3]
        hit = in_T[w]
        out[u[hit], v[hit]] = True
        out[v[hit], u[hit]] = True
    return out


def link_graph(H, T, A):
    '''Return G_T[A] as a DenseGraph on the elements of A in index order.

    For a singleton T = {z} this is G_z[A].
    '''
    members = H.group.indices(A)
    sub = link_matrix(H, T)[np.ix_(members, members)]
    return DenseGraph.from_matrix(members, sub)


def cayley_graph_star(G, S, vertex_mode='full'):
    '''Return the Cayley graph with x ~ y iff x - y lies in S or -S.

    Parameters
    ----------
    G : GroupSpec
    S : iterable
        Generators; the zero element is rejected.
    vertex_mode : {'full', 'exclude_S'}
        ``full`` keeps every element and gives a |S u -S|-regular graph.
        ``exclude_S`` keeps G minus S, the induced subgraph G*_S.

    Returns
    -------
    DenseGraph
    '''
    generators = G.indices(S)
    if 0 in generators:
        raise InputError('the zero element cannot be a Cayley generator')
    symmetric = sorted(set(generators) | {int(G.negation[s]) for s in generators})
    matrix = np.isin(G.subtraction_table, symmetric)
    if vertex_mode == 'full':
        return DenseGraph.from_matrix(range(G.order), matrix,
                                      regular_degree=len(symmetric))
    if vertex_mode == 'exclude_S':
        removed = set(generators)
        keep = [x for x in range(G.order) if x not in removed]
        return DenseGraph.from_matrix(keep, matrix[np.ix_(keep, keep)])
    raise InputError(f'vertex_mode must be "full" or "exclude_S", got {vertex_mode!r}')
