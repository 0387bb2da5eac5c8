'''
Cyclic Jacobi eigenvalue solver for real symmetric matrices.

Every sweep rotates each off-diagonal pair (p, q) to zero in row order. The kernel
is compiled with numba when it is installed and runs as plain numpy otherwise.
'''

# Third party imports
import numpy as np

# Optional numba for the sweep kernel
try:
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False


JACOBI_TOL = 1e-12
MAX_SWEEPS = 100


def _off_norm(A):
    return np.sqrt(np.sum((A - np.diag(np.diag(A))) ** 2))


def _sweeps(A, tol, max_sweeps):
    n = A.shape[0]
    # Entries below this size cannot keep the off-diagonal norm above tol
    skip = tol / max(n, 1)
    for sweep in range(max_sweeps):
        if _off_norm(A) < tol:
            return sweep, True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J, columns first then rows
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = 0.0
                A[q, p] = 0.0
    return max_sweeps, _off_norm(A) < tol


if NUMBA_AVAILABLE:
    _off_norm = njit(cache=True)(_off_norm)
    _sweeps = njit(cache=True)(_sweeps)


def jacobi_eigenvalues(matrix, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    '''Return the eigenvalues of a symmetric matrix, sorted descending.

    Parameters
    ----------
    matrix : array_like
        Real symmetric square matrix. Not modified.
    tol : float, optional
        Convergence threshold on the off-diagonal Frobenius norm, relative to
        max(1, ||A||_F).
    max_sweeps : int, optional

    Returns
    -------
    eigenvalues : numpy.ndarray
    sweeps : int
        Number of sweeps performed.
    converged : bool
    '''
    A = np.array(matrix, dtype=np.float64)
    scale = max(1.0, float(np.linalg.norm(A)))
    sweeps, converged = _sweeps(A, tol * scale, max_sweeps)
    return np.sort(np.diag(A))[::-1].copy(), int(sweeps), bool(converged)
