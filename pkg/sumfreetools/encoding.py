'''
Deterministic encoding of independent sets into short certificates.

Both algorithms keep a partition of the vertex set into Selected, eXcluded and
Available vertices. The encoder asks "is v in I?"; the decoder replays the very
same steps asking "is v in S?" instead, which yields the same answers, so the
certificate S alone determines the available set A.

Vertex order is the position order of the DenseGraph (Basic) or the linear index
order of the group (Main). Ties in the max-degree order are broken by that order.
'''

# Standard library imports
import math
import warnings
from fractions import Fraction
from dataclasses import dataclass, replace, fields

# Third party imports
import numpy as np

# Project specific imports
from sumfreetools._errors import (InputError, DecodeError, ClaimViolation,
                                  FindingWarning)
import sumfreetools._bits as bt
from sumfreetools.hypergraph import is_independent, link_matrix

__all__ = ['EncodingParams', 'EncodingResult', 'StepRecord', 'ClaimReport',
           'Certificate', 'max_degree_order', 'basic_encode', 'basic_decode',
           'main_encode', 'main_decode', 'verify_claims', 'format_certificate',
           'parse_certificate', 'write_certificate', 'read_certificate']


DEFAULT_STOP_FRACTION = 0.5
DEFAULT_ALPHA = 0.5
DEFAULT_BETA = 0.05
DEFAULT_GAMMA = 0.01
DEFAULT_CAPITAL_C = 1.0

# Vertex states
AVAILABLE, SELECTED, EXCLUDED = 0, 1, 2

# Step tags
CASE1, CASE2A, CASE2B, CASE2_FALLBACK, BASIC = \
    'case1', 'case2a', 'case2b', 'case2_fallback', 'basic'


@dataclass(frozen=True)
class EncodingParams:
    '''Parameters of the Basic and Main algorithms.

    Parameters
    ----------
    stop_fraction : float
        The Basic algorithm stops once |A| <= stop_fraction * n.
    alpha, beta, gamma : float
        The Main algorithm stops once |A| <= (alpha - beta) n or |A minus B| <= gamma n;
        beta also sets the Case 1 test (average degree >= beta^4 d) and the useful
        threshold e(G_z[A]) >= beta^2 n.
    capital_C : float
        Sets d = round(C n / m).
    d : int, optional
        Filled in by ``resolve``; a decoder reads it from the certificate.

    '''
    stop_fraction: float = DEFAULT_STOP_FRACTION
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    gamma: float = DEFAULT_GAMMA
    capital_C: float = DEFAULT_CAPITAL_C
    d: int = None

    def __post_init__(self):
        if not 0 < self.stop_fraction < 1:
            raise InputError(f'stop_fraction must lie in (0, 1), '
                             f'got {self.stop_fraction}')
        if not 0 < self.beta <= self.alpha:
            raise InputError(f'need 0 < beta <= alpha, got beta={self.beta}, '
                             f'alpha={self.alpha}')
        if self.gamma <= 0:
            raise InputError(f'gamma must be positive, got {self.gamma}')
        if self.capital_C < 1:
            raise InputError(f'capital_C must be at least 1, got {self.capital_C}')
        if self.d is not None and self.d < 1:
            raise InputError(f'd must be at least 1, got {self.d}')

    def resolve(self, n, m):
        '''Return a copy with d = round(C n / m), rounding halves up.'''
        if m < 1:
            raise InputError('the Main algorithm needs a nonempty independent set')
        d = math.floor(_exact(self.capital_C) * n / m + Fraction(1, 2))
        if not 1 <= d <= m:
            raise InputError(f'd = round(C n / m) = {d} must satisfy 1 <= d <= m = {m}')
        return replace(self, d=d)

    def stop_size(self, n):
        '''Basic algorithm threshold floor(stop_fraction * n).'''
        return math.floor(_exact(self.stop_fraction) * n)

    def size_threshold(self, n):
        return math.ceil((_exact(self.alpha) - _exact(self.beta)) * n)

    def near_threshold(self, n):
        return math.ceil(_exact(self.gamma) * n)

    def to_pairs(self):
        '''Return the parameters as ``key=value`` text, skipping an unset d.'''
        return ' '.join(f'{f.name}={getattr(self, f.name)!r}' for f in fields(self)
                        if getattr(self, f.name) is not None)

    @classmethod
    def from_pairs(cls, pairs):
        '''Build parameters from a ``{key: text}`` mapping, ignoring unknown keys.'''
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, text in pairs.items():
            if key in known:
                try:
                    kwargs[key] = int(text) if key == 'd' else float(text)
                except ValueError:
                    raise DecodeError(f'parameter {key}={text!r} is not a number') \
                        from None
        return cls(**kwargs)


@dataclass(frozen=True)
class StepRecord:
    '''One pass of the step loop.

    ``selected`` and ``excluded`` hold the vertices moved in this step, in the order
    they were moved. ``new_T`` is set when the step replaced T.
    '''
    case: str
    available_before: int
    selected: tuple
    excluded: tuple
    new_T: tuple = None

    @property
    def removed(self):
        return len(self.selected) + len(self.excluded)


@dataclass(frozen=True)
class EncodingResult:
    '''Output of an encoder: certificate S, available set A, excluded set X.'''
    mode: str
    selected: tuple
    available: tuple
    excluded: tuple
    trace: tuple
    termination_reason: str
    near_member: int = None
    params: EncodingParams = None
    stop_size: int = None

    def case_count(self, *cases):
        return sum(1 for step in self.trace if step.case in cases)


@dataclass(frozen=True)
class ClaimReport:
    '''Step-count and certificate-size claims of the Main algorithm, actual vs bound.

    The size claim is only in force when C >= 3 / beta^7; otherwise
    ``selected_ok`` is vacuously True and ``hypothesis_met`` is False.
    '''
    case1_count: int
    case1_bound: Fraction
    case2_count: int
    case2_bound: Fraction
    selected_size: int
    selected_bound: Fraction
    hypothesis_met: bool
    progress_ok: bool

    @property
    def case1_ok(self):
        return self.case1_count <= self.case1_bound

    @property
    def case2_ok(self):
        return self.case2_count <= self.case2_bound

    @property
    def selected_ok(self):
        return not self.hypothesis_met or self.selected_size <= self.selected_bound

    @property
    def all_hold(self):
        return self.case1_ok and self.case2_ok and self.selected_ok and self.progress_ok


@dataclass(frozen=True)
class Certificate:
    '''A parsed certificate file.'''
    mode: str
    pairs: dict
    selected: tuple


def max_degree_order(graph, A=None):
    '''Return the max-degree order of G[A] as a list of labels.

    v_i is a vertex of maximum degree in G[A minus {v_1, ..., v_{i-1}}]; ties go to
    the vertex that comes first in the graph's vertex order.
    '''
    A = graph.vertices if A is None else A
    available = np.zeros(len(graph), dtype=bool)
    available[[graph.position(v) for v in A]] = True
    return [graph.vertices[i] for i in _iter_max_degree_order(graph.matrix, available)]


def basic_encode(graph, I, stop_size):
    '''Encode an independent set with the Basic algorithm.

    While |A| > stop_size: take the max-degree order of G[A], let v_i be its first
    vertex in I, move v_1, ..., v_{i-1} to X, v_i to S and the remaining
    neighbours of v_i to X. Stops early with ``I_exhausted`` once A misses I.

    Parameters
    ----------
    graph : DenseGraph
    I : iterable
        Vertex labels of an independent set.
    stop_size : int

    Returns
    -------
    EncodingResult
    '''
    members = list(I)
    if not graph.is_independent(members):
        raise InputError('I is not independent in the graph')
    member = np.zeros(len(graph), dtype=bool)
    member[[graph.position(v) for v in members]] = True
    try:
        status, selected, trace, reason = _run_basic(graph.matrix, member, stop_size)
    except _PartitionBroken as e:
        raise ClaimViolation(f'partition invariant broken: {e}') from None
    return _result(BASIC, graph.vertices, status, selected, trace, reason,
                   stop_size=stop_size)


def basic_decode(graph, S, stop_size):
    '''Replay the Basic algorithm from its certificate and return A.

    Raises ``DecodeError`` when S cannot have come from ``basic_encode``.
    '''
    selected = _certificate_positions(S, len(graph), graph.position)
    member = np.zeros(len(graph), dtype=bool)
    member[selected] = True
    try:
        status, replayed, _, _ = _run_basic(graph.matrix, member, stop_size)
    except _PartitionBroken as e:
        raise DecodeError(f'inconsistent certificate: {e}') from None
    if replayed != selected:
        raise DecodeError('certificate is not the selection sequence of a run')
    return tuple(graph.vertices[i] for i in np.flatnonzero(status == AVAILABLE))


def main_encode(H, family, I, params):
    '''Encode an independent set of a Schur hypergraph with the Main algorithm.

    Starts from T = S = the first d elements of I. Each pass then does one of:

    * Case 1, average degree of G_T[A] at least beta^4 d: a Basic step on G_T[A].
    * Case 2, otherwise: with Z the useful elements z (e(G_z[A]) >= beta^2 n),
      2(a) if fewer than d of them lie in I, move Z n I to S and the rest of Z to
      X; 2(b) otherwise, move the first d of Z n I to S and make them the new T.

    It stops once |A| <= (alpha - beta) n, once |A minus B| <= gamma n for some
    family member B (the earliest one is recorded), or when a Case 1 selection
    finds no vertex of I left in A.

    Parameters
    ----------
    H : SchurHypergraph
    family : MaxSumFreeFamily or iterable of bit-vectors
    I : iterable
        An independent set of H with at least d elements.
    params : EncodingParams
        Resolved against n and m = |I| if d is unset.

    Returns
    -------
    EncodingResult
    '''
    members = H.group.indices(I)
    if not is_independent(H, members):
        raise InputError('I is not independent in the hypergraph')
    n = H.order
    if params.d is None:
        params = params.resolve(n, len(members))
    if len(members) < params.d:
        raise InputError(f'|I| = {len(members)} is smaller than d = {params.d}')
    member = np.zeros(n, dtype=bool)
    member[members] = True
    try:
        run = _run_main(H, _family_flags(family, n), member, members[:params.d], params)
    except _PartitionBroken as e:
        raise ClaimViolation(f'partition invariant broken: {e}') from None
    status, selected, trace, reason, near = run
    return _result('main', range(n), status, selected, trace, reason, near, params)


def main_decode(H, family, S, params):
    '''Replay the Main algorithm from its certificate and return A.'''
    n = H.order
    if params.d is None:
        raise DecodeError('the decoder needs d from the certificate')
    selected = _certificate_positions(S, n, H.group.index)
    if len(selected) < params.d:
        raise DecodeError(f'certificate has {len(selected)} elements, fewer than d')
    initial = selected[:params.d]
    if initial != sorted(initial):
        raise DecodeError('the first d certificate elements must be increasing')
    member = np.zeros(n, dtype=bool)
    member[selected] = True
    try:
        status, replayed, *_ = _run_main(H, _family_flags(family, n), member, initial,
                                         params)
    except _PartitionBroken as e:
        raise DecodeError(f'inconsistent certificate: {e}') from None
    if replayed != selected:
        raise DecodeError('certificate is not the selection sequence of a run')
    return tuple(int(i) for i in np.flatnonzero(status == AVAILABLE))


def verify_claims(result, params, n, m):
    '''Compare a Main run with the step-count and size claims.

    Checks Case 1 passes <= 2n / (beta^4 d), Case 2 passes <= 1 / beta^5, and
    |S| <= beta^2 m when C >= 3 / beta^7. Also checks on the trace that a Case 1
    step followed by another Case 1 step removed at least beta^4 d vertices.

    Returns
    -------
    ClaimReport
    '''
    params = params if params.d is not None else params.resolve(n, m)
    beta = _exact(params.beta)
    d = params.d
    hypothesis_met = _exact(params.capital_C) >= 3 / beta**7
    if not hypothesis_met:
        warnings.warn(f'C = {params.capital_C} is below 3 / beta^7 = '
                      f'{float(3 / beta**7):.6g}; the certificate size claim is not '
                      f'in force', FindingWarning)
    progress = all(first.removed >= beta**4 * d
                   for first, second in zip(result.trace, result.trace[1:])
                   if first.case == CASE1 and second.case == CASE1)
    return ClaimReport(
        case1_count=result.case_count(CASE1),
        case1_bound=2 * n / (beta**4 * d),
        case2_count=result.case_count(CASE2A, CASE2B, CASE2_FALLBACK),
        case2_bound=1 / beta**5,
        selected_size=len(result.selected),
        selected_bound=beta**2 * m,
        hypothesis_met=hypothesis_met,
        progress_ok=progress)


def format_certificate(result, **extra):
    '''Return the three-line certificate text of an encoding result.

    Line 1 is ``basic`` or ``main``, line 2 the parameters as ``key=value``
    pairs (plus any ``extra`` pairs), line 3 the certificate in selection order.
    '''
    if result.mode == BASIC:
        pairs = f'stop_size={result.stop_size}'
    else:
        pairs = result.params.to_pairs()
    pairs = ' '.join([pairs] + [f'{k}={v}' for k, v in extra.items()])
    selected = ' '.join(str(v) for v in result.selected)
    return f'{result.mode}\n{pairs}\n{selected}\n'


def parse_certificate(text):
    '''Parse certificate text into a Certificate.'''
    lines = text.split('\n')
    if lines and lines[-1] == '':
        lines = lines[:-1]
    if len(lines) != 3:
        raise DecodeError(f'a certificate has 3 lines, got {len(lines)}')
    mode = lines[0].strip()
    if mode not in (BASIC, 'main'):
        raise DecodeError(f'line 1 must be "basic" or "main", got {mode!r}')
    pairs = {}
    for token in lines[1].split():
        key, sep, value = token.partition('=')
        if not sep or not key:
            raise DecodeError(f'line 2 token {token!r} is not key=value')
        pairs[key] = value
    try:
        selected = tuple(int(v) for v in lines[2].split())
    except ValueError:
        raise DecodeError(f'line 3 must hold integers, got {lines[2]!r}') from None
    return Certificate(mode, pairs, selected)


def write_certificate(path, result, **extra):
    with open(path, 'w') as f:
        f.write(format_certificate(result, **extra))


def read_certificate(path):
    with open(path) as f:
        return parse_certificate(f.read())


def _iter_max_degree_order(matrix, available):
    # Degrees are kept up to date as vertices leave; argmax returns the first
    # maximum, which is the earliest vertex
    remaining = available.copy()
    degrees = (matrix & remaining).sum(axis=1)
    while remaining.any():
        candidates = np.flatnonzero(remaining)
        v = int(candidates[np.argmax(degrees[candidates])])
        yield v
        remaining[v] = False
        degrees -= matrix[:, v]


def _select_step(matrix, status, member):
    '''Run one Basic step on the graph ``matrix`` restricted to A.

    Returns (chosen, passed, neighbours), or None when A holds no member.
    '''
    available = status == AVAILABLE
    passed = []
    for v in _iter_max_degree_order(matrix, available):
        if member[v]:
            status[passed] = EXCLUDED
            status[v] = SELECTED
            neighbours = np.flatnonzero(matrix[v] & (status == AVAILABLE)).tolist()
            status[neighbours] = EXCLUDED
            return v, passed, neighbours
        passed.append(v)
    return None


def _run_basic(matrix, member, stop_size):
    status = np.full(len(member), AVAILABLE, dtype=np.int8)
    selected, trace = [], []
    reason = 'size_threshold'
    while np.count_nonzero(status == AVAILABLE) > stop_size:
        before = int(np.count_nonzero(status == AVAILABLE))
        step = _select_step(matrix, status, member)
        if step is None:
            reason = 'I_exhausted'
            break
        chosen, passed, neighbours = step
        selected.append(chosen)
        trace.append(StepRecord(BASIC, before, (chosen,), tuple(passed + neighbours)))
        _check_partition(status, member)
    return status, selected, trace, reason


def _run_main(H, family, member, initial, params):
    n = H.order
    beta = _exact(params.beta)
    d = params.d
    size_threshold = params.size_threshold(n)
    near_threshold = params.near_threshold(n)
    useful_threshold = beta**2 * n

    status = np.full(n, AVAILABLE, dtype=np.int8)
    status[initial] = SELECTED
    selected = list(initial)
    _check_partition(status, member)
    T = list(initial)
    link = link_matrix(H, T)
    trace = []

    while True:
        # Stopping rules: A small, or A almost inside a family member
        available = status == AVAILABLE
        size = int(available.sum())
        if size <= size_threshold:
            return status, selected, trace, 'size_threshold', None
        for j, b in enumerate(family):
            if np.count_nonzero(available & ~b) <= near_threshold:
                return status, selected, trace, 'near_B', j

        # Case 1 when G_T[A] has average degree at least beta^4 d
        sub = link[np.ix_(available, available)]
        doubled_edges = int(sub.sum())
        if doubled_edges >= beta**4 * d * size:
            case = CASE1
        else:
            inside = available[H.edges].all(axis=1)
            # e(G_z[A]) equals the degree of z in H[A]
            link_edges = np.bincount(H.edges[inside].ravel(), minlength=n)
            useful = np.flatnonzero(available & (link_edges >= useful_threshold))
            # No useful z: a Case 1 selection stands in for the Case 2 pass
            case = CASE2_FALLBACK if len(useful) == 0 else None

        if case in (CASE1, CASE2_FALLBACK):
            step = _select_step(link, status, member)
            if step is None:
                return status, selected, trace, 'I_exhausted', None
            chosen, passed, neighbours = step
            selected.append(chosen)
            trace.append(StepRecord(case, size, (chosen,), tuple(passed + neighbours)))
        else:
            hits = [int(z) for z in useful if member[z]]
            if len(hits) < d:
                # 2(a): every useful z leaves A, members into S
                rest = [int(z) for z in useful if not member[z]]
                status[hits] = SELECTED
                status[rest] = EXCLUDED
                selected.extend(hits)
                trace.append(StepRecord(CASE2A, size, tuple(hits), tuple(rest)))
            else:
                # 2(b): the first d useful members become S-elements and the new T
                T = hits[:d]
                status[T] = SELECTED
                selected.extend(T)
                link = link_matrix(H, T)
                trace.append(StepRecord(CASE2B, size, tuple(T), (), tuple(T)))
        _check_partition(status, member)


def _check_partition(status, member):
    # S within I and I \ S within A; S, X, A partition V by construction
    if (status[member] == EXCLUDED).any():
        raise _PartitionBroken('a member was excluded')
    if not member[status == SELECTED].all():
        raise _PartitionBroken('a non-member was selected')


class _PartitionBroken(Exception):
    pass


def _result(mode, labels, status, selected, trace, reason, near=None, params=None,
            stop_size=None):
    labels = list(labels)

    def relabel(positions):
        return tuple(labels[int(i)] for i in positions)

    trace = tuple(StepRecord(s.case, s.available_before, relabel(s.selected),
                             relabel(s.excluded),
                             None if s.new_T is None else relabel(s.new_T))
                  for s in trace)
    return EncodingResult(mode=mode, selected=relabel(selected),
                          available=relabel(np.flatnonzero(status == AVAILABLE)),
                          excluded=relabel(np.flatnonzero(status == EXCLUDED)),
                          trace=trace, termination_reason=reason, near_member=near,
                          params=params, stop_size=stop_size)


def _family_flags(family, n):
    return [bt.to_bool_array(b, n) for b in family]


def _certificate_positions(S, n, position):
    try:
        selected = [int(position(v)) for v in S]
    except InputError as e:
        raise DecodeError(f'certificate names an unknown vertex: {e}') from None
    if len(set(selected)) != len(selected):
        raise DecodeError('certificate repeats a vertex')
    return selected


def _exact(value):
    if isinstance(value, Fraction):
        return value
    return Fraction(repr(value)) if isinstance(value, float) else Fraction(value)
