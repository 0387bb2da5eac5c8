'''Figures for spectra, stability frontiers and count ratios.

Figures are written to files; nothing is shown interactively.
'''

# Third party imports
import matplotlib as mpl
mpl.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402


def plot_spectrum(spectrum, path, title='', **kwargs):
    '''Stem plot of the eigenvalues in descending order.

    Parameters
    ----------
    spectrum : Spectrum
    path : str
        Output image file.
    title : str, optional
    **kwargs : dict
        Forwarded to ``ax.stem``; they take priority over the defaults.
    '''
    fig, ax = plt.subplots()

    default_kwargs = {'basefmt': 'k-'}
    ax.stem(range(len(spectrum)), spectrum.eigenvalues, **{**default_kwargs, **kwargs})
    ax.set_xlabel('index')
    ax.set_ylabel('eigenvalue')
    ax.set_title(title or f'Spectrum ({spectrum.source})')

    fig.savefig(path)
    plt.close(fig)


def plot_frontier(profile, path, title='', **kwargs):
    '''Plot the normalized Pareto frontier of a stability profile.'''
    fig, ax = plt.subplots()

    points = profile.normalized_frontier
    default_kwargs = {'color': 'tomato', 'marker': 'o', 'where': 'post'}
    if points:
        xs, ys = zip(*points)
        ax.step(xs, ys, **{**default_kwargs, **kwargs})
    ax.set_xlabel('$e(H[A]) / n^2$')
    ax.set_ylabel(r'$\min_B |A \setminus B| / n$')
    ax.set_title(title or 'Stability frontier')

    fig.savefig(path)
    plt.close(fig)


def plot_count_ratios(rows, path, title='', **kwargs):
    '''Plot exact / leading against m for counting-table rows.

    Rows with no ratio (budget exhausted or vanishing leading term) are skipped.
    '''
    fig, ax = plt.subplots()

    points = [(row['m'], row['ratio']) for row in rows if row.get('ratio') is not None]
    default_kwargs = {'color': 'tomato', 'marker': 'o'}
    if points:
        ax.plot(*zip(*points), **{**default_kwargs, **kwargs})
    ax.axhline(1.0, color='k', linewidth=0.8)
    ax.set_xlabel('$m$')
    ax.set_ylabel('exact / leading')
    ax.set_title(title or 'Count ratios')

    fig.savefig(path)
    plt.close(fig)
