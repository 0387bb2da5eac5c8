'''
Worker pools for the exact searches and Monte Carlo batches.

Results are always returned in job order, so a merged result never depends on
how many workers computed it.
'''

# Standard library imports
import os
from multiprocessing import Pool


def worker_count(workload, requested=None):
    '''Return the number of worker processes to use.

    Parameters
    ----------
    workload : int or sized
        Number of jobs.
    requested : int, optional
        Upper limit asked for by the caller. ``None`` or 0 means as many as the
        machine allows, keeping one core free.

    Returns
    -------
    int
        At least 1 and never more than the number of jobs.
    '''
    size = len(workload) if hasattr(workload, '__len__') else int(workload)
    if size == 0:
        return 1
    available = max(1, (os.cpu_count() or 1) - 1)
    if requested:
        available = min(available, int(requested))
    return max(1, min(size, available))


def ordered_map(func, jobs, workers=1):
    '''Apply ``func`` to every job and return the results in job order.

    ``func`` must be a module-level function so that it can be pickled.
    '''
    jobs = list(jobs)
    if workers <= 1 or len(jobs) <= 1:
        return [func(job) for job in jobs]
    with Pool(workers) as pool:
        return pool.map(func, jobs)
