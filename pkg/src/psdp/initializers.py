"""Starting points for the iterative solvers.

Four initializations of increasing sophistication:

* zero matrix;
* PSD projection of the unconstrained least-squares solution B X^+;
* best PSD diagonal, solvable row by row in closed form;
* recursive splitting for diagonal X: partition the (sorted) diagonal
  into blocks of condition number at most kappa_max, warm-start each
  block with the diagonal rule plus a short fast-gradient run, and
  assemble the results block-diagonally.  Cheap because each block is
  well conditioned, and it strictly improves on the diagonal rule.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionError, InapplicableError, ParameterError
from .matcore import as_matrix, psd_project
from .solvers import SolverConfig, fgm_solve

# condition-number ceiling for the recursive blocks and the length of
# the warm-up fast-gradient run on each block
KAPPA_MAX = 100.0
BLOCK_ITERS = 100


def init_zero(n):
    """The zero matrix of order n."""
    if n < 1:
        raise ParameterError("n must be positive, got %r" % (n,))
    return np.zeros((n, n))


def init_unconstrained(X, B):
    """PSD projection of the unconstrained minimizer B X^+."""
    X = as_matrix(X, "X")
    B = as_matrix(B, "B")
    return psd_project(B @ np.linalg.pinv(X))


def init_diagonal(X, B):
    """Best nonnegative diagonal matrix, minimizing |D X - B|_F.

    Row i decouples: d_i = max(0, <B_i, X_i> / |X_i|^2), and rows of X
    that vanish get d_i = 0.
    """
    X = as_matrix(X, "X")
    B = as_matrix(B, "B")
    if X.shape != B.shape:
        raise DimensionError(
            "X and B must have equal shapes, got %s and %s" % ((X.shape,), (B.shape,))
        )
    row_sq = np.sum(X * X, axis=1)
    cross = np.sum(B * X, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        d = np.where(row_sq > 0.0, cross / np.where(row_sq > 0.0, row_sq, 1.0), 0.0)
    return np.diag(np.maximum(d, 0.0))


@dataclass(frozen=True)
class Partition:
    """Contiguous blocks (start, stop) over an ascending diagonal.

    kappas holds the condition number d[stop-1] / d[start] of each
    block; all are at most the ceiling used during the split.
    """

    blocks: tuple
    kappas: tuple


def split_diagonal(d, kappa_max=KAPPA_MAX):
    """Split an ascending positive diagonal into well-conditioned blocks.

    A block whose condition number exceeds ``kappa_max`` is cut at the
    index k minimizing max(d[k] / d[first], d[last] / d[k+1]), ties
    going to the smallest k, and the halves are split recursively.
    Terminates because every cut strictly shrinks both condition
    numbers below the parent's.
    """
    d = np.asarray(d, dtype=float)
    if d.ndim != 1 or d.size == 0:
        raise ParameterError("d must be a non-empty 1-D array")
    if not (d > 0).all():
        raise ParameterError("diagonal entries must be positive")
    if (np.diff(d) < 0).any():
        raise ParameterError("diagonal entries must be ascending")
    if kappa_max < 1.0:
        raise ParameterError("kappa_max must be at least 1, got %r" % (kappa_max,))

    blocks = []

    def visit(lo, hi):
        if d[hi - 1] / d[lo] <= kappa_max or hi - lo == 1:
            blocks.append((lo, hi))
            return
        ks = np.arange(lo, hi - 1)
        worst = np.maximum(d[ks] / d[lo], d[hi - 1] / d[ks + 1])
        k = int(ks[np.argmin(worst)])
        visit(lo, k + 1)
        visit(k + 1, hi)

    visit(0, d.size)
    kappas = tuple(float(d[hi - 1] / d[lo]) for lo, hi in blocks)
    return Partition(tuple(blocks), kappas)


def init_recursive(sigma1, B11, cfg=None, kappa_max=KAPPA_MAX, block_iters=BLOCK_ITERS):
    """Recursive block initialization for a diagonal data matrix.

    ``sigma1`` may be a 1-D vector of positive diagonal entries, in any
    order, or a diagonal matrix; anything non-diagonal raises
    InapplicableError.  Entries are sorted ascending, split with
    ``split_diagonal``, and each block subproblem gets its diagonal
    initialization refined by ``block_iters`` fast-gradient iterations
    using the block's own curvature constants; the best block iterate
    is kept, so the result never trails the plain diagonal rule.
    """
    sig = np.asarray(sigma1, dtype=float)
    if sig.ndim == 2:
        if sig.shape[0] != sig.shape[1] or np.count_nonzero(sig - np.diag(np.diag(sig))):
            raise InapplicableError("recursive initialization requires a diagonal matrix")
        sig = np.diag(sig)
    if sig.ndim != 1 or sig.size == 0:
        raise ParameterError("sigma1 must be a non-empty vector or diagonal matrix")
    if not (sig > 0).all():
        raise ParameterError("diagonal entries must be positive")
    B11 = as_matrix(B11, "B11")
    r = sig.size
    if B11.shape != (r, r):
        raise DimensionError("B11 must be %d-by-%d, got %s" % (r, r, (B11.shape,)))
    cfg = cfg or SolverConfig()
    bcfg = replace(
        cfg,
        max_iter=block_iters,
        record_trace=False,
        objective_tol=None,
        wall_clock_budget=None,
    )
    order = np.argsort(sig, kind="stable")
    part = split_diagonal(sig[order], kappa_max)
    A0 = np.zeros((r, r))
    for lo, hi in part.blocks:
        idx = order[lo:hi]
        Xb = np.diag(sig[idx])
        Bb = B11[np.ix_(idx, idx)]
        sol = fgm_solve(Xb, Bb, init_diagonal(Xb, Bb), bcfg)
        A0[np.ix_(idx, idx)] = sol.best_A
    return A0
