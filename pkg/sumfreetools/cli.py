'''
Command line interface for sumfreetools.

Usage:
    sumfreetools group-info Z4xZ2
    sumfreetools sf0 Z5
    sumfreetools count Z10 --m 2..5
    sumfreetools encode --group Z10 --set 1,3,5,7,9 --cert cert.txt --verify
    sumfreetools decode cert.txt
    sumfreetools spectra Z12 --set 1,11
    sumfreetools janson --graph C5 --m 2
    sumfreetools blowup --t 2 --part 4 --d 4 --seed 7
    sumfreetools stability Z5 --sweep 0.05,0.1
    sumfreetools report --scale full

Exit codes: 0 ok, 2 a checked law failed, 3 node budget exhausted, 4 bad input.
Errors are printed to stderr as a JSON object.
'''

# Standard library imports
import re
import sys
import json
import argparse
from dataclasses import dataclass

# Project specific imports
from sumfreetools._errors import (SumFreeToolsError, InputError, DecodeError,
                                  exit_code_for)
import sumfreetools._report as rp
import sumfreetools.group as gr
import sumfreetools.hypergraph as hg
import sumfreetools.extremal as ex
import sumfreetools.encoding as en
import sumfreetools.spectral as sp
import sumfreetools.counting as ct
import sumfreetools.experiments as xp


DEFAULT_DELTA = 0.1
DEFAULT_EPS = 0.1

COUNT_HEADER = ('n', 'm', 'exact', 'leading', 'lower_bonf', 'upper_bonf', 'ratio')
SPECTRUM_HEADER = ('index', 'eigenvalue')
STABILITY_HEADER = ('size', 'schur_count', 'min_distance')

_ELEMENT = re.compile(r'\([^)]*\)|[^\s,()]+')


@dataclass(frozen=True)
class RunConfig:
    '''Options shared by every command, plus the run parameters of this one.

    ``m_range`` and the algorithm parameters are recorded as given on the
    command line; commands that do not take a parameter leave it at ``None``.
    '''
    command: str
    seed: int = None
    workers: int = 1
    out: str = None
    format: str = 'json'
    budget_nodes: int = ct.DEFAULT_BUDGET_NODES
    verbose: bool = False
    plot: str = None
    m_range: tuple = None
    mode: str = None
    alpha: float = None
    beta: float = None
    gamma: float = None
    capital_C: float = None
    stop_size: int = None
    stop_fraction: float = None
    delta: float = None
    eps: float = None

    @classmethod
    def from_args(cls, args, default_format='json'):
        if args.workers < 1:
            raise InputError(f'--workers must be at least 1, got {args.workers}')
        if args.budget_nodes < 1:
            raise InputError('--budget-nodes must be positive')
        m = getattr(args, 'm', None)
        if isinstance(m, str):
            m = tuple(parse_m_range(m))
        elif m is not None:
            m = (m,)
        params = {name: getattr(args, name, None)
                  for name in ('mode', 'alpha', 'beta', 'gamma', 'stop_size',
                               'stop_fraction', 'delta', 'eps')}
        return cls(command=args.command, seed=args.seed, workers=args.workers,
                   out=args.out, format=args.format or default_format,
                   budget_nodes=args.budget_nodes, verbose=args.verbose,
                   plot=args.plot, m_range=m,
                   capital_C=getattr(args, 'capital_c', None), **params)

    def require_seed(self):
        if self.seed is None:
            raise InputError(f'{self.command} is randomized and needs --seed')
        return self.seed

    def progress(self, text):
        if self.verbose:
            print(text, file=sys.stderr)


def cmd_group_info(args, cfg):
    '''Order, Type I prime, mu(G) and the order-q and index-2 counts.'''
    G = gr.parse_group(args.group)
    q = gr.smallest_typeI_prime(G)
    order_two = gr.count_elements_of_order(G, 2)
    index_two = len(gr.index_two_subgroups(G))
    if order_two != index_two:
        raise AssertionError(f'{G}: {order_two} elements of order 2 but {index_two} '
                             f'subgroups of index 2')
    record = {'group': str(G), 'order': G.order, 'factors': list(G.factors),
              'exponent': G.exponent, 'type_I': q is not None, 'q': q,
              'order_2_count': order_two, 'index_2_subgroups': index_two}
    if q is None:
        record['message'] = 'not Type I'
    else:
        record.update(mu=ex.mu(G), order_q_count=gr.count_elements_of_order(G, q))
    return record


def cmd_sf0(args, cfg):
    '''List SF0(G) and run its cardinality, intersection and cover checks.'''
    G = gr.parse_group(args.group)
    family = ex.enumerate_SF0(G)
    cardinality = ex.sf0_cardinality_check(G, family)
    intersection = ex.pairwise_intersection_check(family)
    ex.sumset_cover_check(G, family)
    if cfg.format == 'csv':
        return rp.format_csv(('set', 'elements'),
                             [(i, line) for i, line in enumerate(family.to_lines())])
    return {'group': str(G), 'q': family.q, 'mu': ex.mu(G),
            'set_size': family.set_size, 'sets': family.as_indices(),
            'cardinality': cardinality, 'intersection': intersection,
            'sumset_cover': True}


def cmd_count(args, cfg):
    '''Exact counts of sum-free m-sets next to the SF0 predictions.'''
    G = gr.parse_group(args.group)
    family = ex.enumerate_SF0(G)
    rows = []
    for m in parse_m_range(args.m):
        cfg.progress(f'counting {G}, m = {m}')
        row = ct.count_row(G, m, args.mode, cfg.budget_nodes, cfg.workers, family)
        if row['budget_exhausted']:
            cfg.progress(f'  node budget exhausted at m = {m}')
        rows.append(row)
    if cfg.plot:
        import sumfreetools._plot as pl
        pl.plot_count_ratios(rows, cfg.plot, title=f'{G}')
    if cfg.format == 'csv':
        return rp.format_csv(COUNT_HEADER, rows)
    return {'group': str(G), 'mode': args.mode, 'rows': rows}


def cmd_encode(args, cfg):
    '''Encode an independent set and write its certificate.'''
    extra = {}
    if args.group:
        G = gr.parse_group(args.group)
        H = hg.SchurHypergraph(G)
        family = ex.enumerate_SF0(G)
        I = parse_elements(G, args.set)
        alpha = args.alpha if args.alpha is not None else float(ex.mu(G))
        params = en.EncodingParams(stop_fraction=args.stop_fraction, alpha=alpha,
                                   beta=args.beta, gamma=args.gamma,
                                   capital_C=args.capital_c)
        result = en.main_encode(H, family, I, params)
        extra['group'] = str(G)
        n, m = G.order, len(I)
    else:
        graph = _graph(args)
        I = [int(v) for v in _split(args.set)]
        stop_size = (args.stop_size if args.stop_size is not None
                     else en.EncodingParams(args.stop_fraction).stop_size(len(graph)))
        result = en.basic_encode(graph, I, stop_size)
        if args.graph:
            extra['graph'] = args.graph
    certificate = en.format_certificate(result, **extra)
    if args.cert:
        en.write_certificate(args.cert, result, **extra)
    record = {'mode': result.mode, 'selected': result.selected,
              'available': result.available, 'excluded': result.excluded,
              'steps': len(result.trace), 'termination_reason':
              result.termination_reason, 'certificate': certificate}
    if result.mode == 'main':
        record['near_member'] = result.near_member
        record['cases'] = {case: result.case_count(case)
                           for case in (en.CASE1, en.CASE2A, en.CASE2B,
                                        en.CASE2_FALLBACK)}
        if args.verify:
            report = en.verify_claims(result, result.params, n, m)
            record['claims'] = report
            record['claims_hold'] = report.all_hold
            if not report.all_hold:
                rp.emit(rp.format_json(record), cfg.out)
                raise AssertionError(f'Main algorithm claims fail: {report}')
    return record


def cmd_decode(args, cfg):
    '''Replay a certificate and report the available set A.'''
    cert = en.read_certificate(args.cert)
    if cert.mode == en.BASIC:
        if 'stop_size' not in cert.pairs:
            raise DecodeError('basic certificate lacks stop_size')
        try:
            stop_size = int(cert.pairs['stop_size'])
        except ValueError:
            raise DecodeError(f'stop_size={cert.pairs["stop_size"]!r} is not an '
                              f'integer') from None
        if not (args.graph or args.edges) and 'graph' in cert.pairs:
            args.graph = cert.pairs['graph']
        available = en.basic_decode(_graph(args), cert.selected, stop_size)
    else:
        group = args.group or cert.pairs.get('group')
        if group is None:
            raise DecodeError('main certificate lacks group; pass --group')
        G = gr.parse_group(group)
        params = en.EncodingParams.from_pairs(cert.pairs)
        available = en.main_decode(hg.SchurHypergraph(G), ex.enumerate_SF0(G),
                                   cert.selected, params)
    return {'mode': cert.mode, 'selected': cert.selected, 'available': available}


def cmd_spectra(args, cfg):
    '''Cayley spectra from characters, or dense spectra of a named graph.'''
    extra = {}
    if args.group:
        G = gr.parse_group(args.group)
        S = parse_elements(G, args.set)
        if args.dense:
            spectrum = sp.dense_symmetric_spectrum(hg.cayley_graph_star(G, S))
        else:
            spectrum = sp.cayley_spectrum_analytic(G, S, not args.directed)
        extra.update(group=str(G), S=S, lambda_S=sp.lambda_S(G, S))
        if G.order <= sp.MAX_DENSE_VERTICES:
            extra['star_modes'] = sp.star_mode_deviation(G, S)
        if args.delta is not None:
            extra['lemma'] = sp.lemma_SuS_check(G, S, args.delta)
            extra['class'] = sp.classify_SF(G, S, args.delta)
        if args.sample_trials:
            extra['sample'] = sp.sample_S_for_lambda(
                G, S, args.eps, args.delta if args.delta is not None else
                DEFAULT_DELTA, args.sample_trials, cfg.require_seed(), cfg.workers)
    else:
        spectrum = sp.dense_symmetric_spectrum(_graph(args))
    if cfg.plot:
        import sumfreetools._plot as pl
        pl.plot_spectrum(spectrum, cfg.plot)
    if cfg.format == 'csv':
        return rp.format_csv(SPECTRUM_HEADER, enumerate(spectrum.eigenvalues))
    return {'eigenvalues': spectrum.eigenvalues, 'source': spectrum.source,
            'second_eigenvalue': spectrum.second_eigenvalue, **extra}


def cmd_janson(args, cfg):
    '''Janson bounds for the edge family of a graph, against the exact value.'''
    graph = _graph(args)
    n = len(graph)
    edges = [(graph.position(u), graph.position(v)) for u, v in graph.edges()]
    stats = ct.janson_stats(edges, args.m, n, exact=True)
    bounds = ct.janson_bounds(stats, args.pittel, args.constant)
    record = {'n': n, 'm': args.m, 'edges': len(edges), 'stats': stats,
              'bounds': bounds,
              'hypergeometric_product': bounds.hypergeometric_product,
              'hypergeometric_max_form': bounds.hypergeometric_max_form}
    if ct.binom_exact(n, args.m) <= ct.ENUMERATION_BUDGET:
        exact = ct.exact_no_Ui_probability(edges, args.m, n)
        record.update(exact=exact, exact_float=float(exact),
                      within_product=float(exact) <= bounds.hypergeometric_product)
    return record


def cmd_blowup(args, cfg):
    '''Random d-regular blow-up of K_{t+1} with its spectrum.'''
    graph = sp.blowup_graph(args.t, args.part, args.d, cfg.require_seed())
    spectrum = sp.dense_symmetric_spectrum(graph)
    target = -args.d / args.t
    certified = args.t == 1 or spectrum.smallest >= target - 1e-8
    if args.edges_out:
        graph.write_edge_list(args.edges_out)
    if cfg.plot:
        import sumfreetools._plot as pl
        pl.plot_spectrum(spectrum, cfg.plot)
    if cfg.format == 'csv':
        return rp.format_csv(SPECTRUM_HEADER, enumerate(spectrum.eigenvalues))
    record = {'t': args.t, 'part_size': args.part, 'd': args.d, 'n': len(graph),
              'regular_degree': graph.is_regular(), 'eigenvalues': spectrum.eigenvalues,
              'contains_minus_d_over_t': spectrum.contains(target),
              'hoffman_certified': certified, 'edges': list(graph.edges())}
    if len(graph) <= ct.MAX_SEARCH_VERTICES:
        record['independence_number'] = ct.independence_number(graph)
    return record


def cmd_stability(args, cfg):
    '''Stability profile of the Schur hypergraph and witness constants.'''
    G = gr.parse_group(args.group)
    seed = cfg.require_seed() if args.mode == 'sample' else cfg.seed
    profile = ex.stability_profile(G, min_size_fraction=args.min_size_fraction,
                                   mode=args.mode, count=args.count, seed=seed,
                                   workers=cfg.workers)
    alpha = args.alpha if args.alpha is not None else ex.mu(G)
    if cfg.plot:
        import sumfreetools._plot as pl
        pl.plot_frontier(profile, cfg.plot, title=f'{G}')
    if cfg.format == 'csv':
        return rp.format_csv(STABILITY_HEADER, profile.rows)
    record = {'group': str(G), 'rows': len(profile), 'edge_count': profile.edge_count,
              'frontier': profile.frontier, 'alpha': alpha, 'beta': args.beta,
              'gamma': ex.find_stability_witness(profile, alpha, args.beta)}
    if args.sweep:
        betas = [float(b) for b in _split(args.sweep)]
        record['sweep'] = ex.sweep_stability_witnesses(profile, alpha, betas)
    return record


def cmd_report(args, cfg):
    '''Run the acceptance battery.'''
    only = [int(c) for c in _split(args.only)] if args.only else None
    seed = cfg.seed if cfg.seed is not None else 0
    records = xp.run_battery(args.scale, seed, only, cfg.progress)
    return {'scale': args.scale, 'seed': seed, 'checks': records}


COMMANDS = {
    'group-info': (cmd_group_info, 'json'),
    'sf0': (cmd_sf0, 'json'),
    'count': (cmd_count, 'csv'),
    'encode': (cmd_encode, 'json'),
    'decode': (cmd_decode, 'json'),
    'spectra': (cmd_spectra, 'csv'),
    'janson': (cmd_janson, 'json'),
    'blowup': (cmd_blowup, 'json'),
    'stability': (cmd_stability, 'json'),
    'report': (cmd_report, 'json'),
}


def parse_m_range(text):
    '''Parse ``2..5``, ``3`` or ``2,4,6``; an empty text gives no values.'''
    text = (text or '').strip()
    if not text:
        return []
    values = []
    for token in _split(text):
        low, sep, high = token.partition('..')
        try:
            if sep:
                values.extend(range(int(low), int(high) + 1))
            else:
                values.append(int(token))
        except ValueError:
            raise InputError(f'cannot parse m-range token {token!r}') from None
    if any(m < 0 for m in values):
        raise InputError('m must be nonnegative')
    return values


def parse_elements(G, text):
    '''Parse ``1,3,5`` or ``(1,0) (0,1)`` into sorted linear indices.'''
    return G.indices(G.parse_element(token) for token in _ELEMENT.findall(text or ''))


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument('--seed', type=int, default=None,
                        help='seed of every randomized step')
    common.add_argument('--workers', type=int, default=1,
                        help='worker processes; results do not depend on it')
    common.add_argument('--out', default=None, help='output file (default stdout)')
    common.add_argument('--format', choices=('csv', 'json'), default=None)
    common.add_argument('--budget-nodes', type=int, default=ct.DEFAULT_BUDGET_NODES)
    common.add_argument('--plot', default=None, help='write a figure to this file')
    common.add_argument('-v', '--verbose', action='store_true')

    parser = _Parser(
        prog='sumfreetools', description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('group-info', parents=[common])
    p.add_argument('group')

    p = sub.add_parser('sf0', parents=[common])
    p.add_argument('group')

    p = sub.add_parser('count', parents=[common])
    p.add_argument('group')
    p.add_argument('--m', default='', help='m values, e.g. 2..5 or 2,4')
    p.add_argument('--mode', choices=('group_sense', 'hypergraph_sense'),
                   default='group_sense')

    p = sub.add_parser('encode', parents=[common])
    _add_graph_source(p)
    p.add_argument('--group', help='encode in the Schur hypergraph of this group')
    p.add_argument('--set', required=True, help='the independent set I')
    p.add_argument('--stop-size', type=int, default=None)
    p.add_argument('--stop-fraction', type=float, default=en.DEFAULT_STOP_FRACTION)
    _add_params(p)
    p.add_argument('--cert', default=None, help='write the certificate here')
    p.add_argument('--verify', action='store_true',
                   help='check the Main algorithm claims')

    p = sub.add_parser('decode', parents=[common])
    p.add_argument('cert')
    _add_graph_source(p)
    p.add_argument('--group', default=None)

    p = sub.add_parser('spectra', parents=[common])
    p.add_argument('group', nargs='?', default=None)
    _add_graph_source(p)
    p.add_argument('--set', default='', help='Cayley generators S')
    p.add_argument('--dense', action='store_true', help='use the Jacobi solver')
    p.add_argument('--directed', action='store_true',
                   help='real parts of the A(S) spectrum instead of S u -S')
    p.add_argument('--delta', type=float, default=None,
                   help='run the S u -S lemma and the index-2 classification')
    p.add_argument('--eps', type=float, default=DEFAULT_EPS)
    p.add_argument('--sample-trials', type=int, default=0)

    p = sub.add_parser('janson', parents=[common])
    _add_graph_source(p)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--pittel', choices=('sqrt_m', 'abstract_C'), default='sqrt_m')
    p.add_argument('--constant', type=float, default=None)

    p = sub.add_parser('blowup', parents=[common])
    p.add_argument('--t', type=int, required=True)
    p.add_argument('--part', type=int, required=True)
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--edges-out', default=None)

    p = sub.add_parser('stability', parents=[common])
    p.add_argument('group')
    p.add_argument('--mode', choices=('exhaustive', 'sample'), default='exhaustive')
    p.add_argument('--count', type=int, default=1000)
    p.add_argument('--min-size-fraction', type=float, default=0.0)
    p.add_argument('--alpha', type=float, default=None)
    p.add_argument('--beta', type=float, default=en.DEFAULT_BETA)
    p.add_argument('--sweep', default=None, help='comma separated betas')

    p = sub.add_parser('report', parents=[common])
    p.add_argument('--scale', choices=sorted(xp.SCALES), default='full')
    p.add_argument('--only', default=None, help='criterion numbers, e.g. 1,2,10')

    return parser


def main(argv=None):
    '''Entry point; returns the process exit code.'''
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        func, default_format = COMMANDS[args.command]
        cfg = RunConfig.from_args(args, default_format)
        result = func(args, cfg)
        text = result if isinstance(result, str) else rp.format_json(result)
        rp.emit(text, cfg.out)
    except (SumFreeToolsError, AssertionError, OSError) as e:
        code = exit_code_for(e)
        error = {'schema': rp.SCHEMA_VERSION, 'error': type(e).__name__,
                 'message': str(e), 'exit_code': code}
        print(json.dumps(error, sort_keys=True), file=sys.stderr)
        return code
    return 0


class _Parser(argparse.ArgumentParser):
    # Usage errors are input errors (exit 4), not argparse's exit 2
    def error(self, message):
        raise InputError(f'{self.prog}: {message}')


def _add_graph_source(p):
    p.add_argument('--graph', default=None, help='named graph: C5, K4, P6, K3,3')
    p.add_argument('--edges', default=None, help='edge list file, one "u v" per line')


def _add_params(p):
    p.add_argument('--alpha', type=float, default=None,
                   help='defaults to mu(G) for the Main algorithm')
    p.add_argument('--beta', type=float, default=en.DEFAULT_BETA)
    p.add_argument('--gamma', type=float, default=en.DEFAULT_GAMMA)
    p.add_argument('--capital-c', type=float, default=en.DEFAULT_CAPITAL_C)


def _graph(args):
    if args.graph:
        return hg.graph_from_name(args.graph)
    if args.edges:
        return hg.DenseGraph.from_edge_list(args.edges)
    raise InputError('give a graph with --graph or --edges')


def _split(text):
    return [t for t in re.split(r'[,\s]+', text.strip()) if t]


if __name__ == '__main__':
    sys.exit(main())
