"""Projected first-order solvers for inf |A X - B|_F^2 over PSD A.

Three methods share the same oracle: the gradient of the halved
objective at Y is G(Y) = Y X X.T - B X.T, with Lipschitz constant
L = sigma_max(X)^2 and strong convexity modulus sigma_min(X)^2 (zero
when X is rank deficient).

* ``gradient_solve``: projected gradient, A <- proj(A - G(A) / L).
* ``fgm_solve``: the fast gradient method, its momentum schedule driven
  by the inverse condition number q; converges linearly at rate
  (1 - 1/kappa) on strongly convex instances, against (1 - 1/kappa^2)
  for plain projected gradient.  The objective is not monotone, so the
  best iterate seen is tracked alongside the last one.
* ``partan_solve``: gradient with a line-search acceleration along the
  previous displacement; falls back to the plain step whenever the
  accelerated candidate would increase the objective, hence monotone.
"""

import time
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError
from .matcore import as_matrix, psd_project
from .solution import IterateTrace, PsdpSolution


@dataclass
class SolverConfig:
    """Iteration budget and tolerances shared by the iterative solvers.

    alpha1 is the initial momentum parameter of the fast gradient
    method, in (0, 1).  objective_tol, when set, stops a run once the
    best objective has improved by less than objective_tol relative
    over the last 10 iterations.  wall_clock_budget, when set, stops
    the iteration loop after that many seconds.  rank_tol overrides the
    numerical-rank threshold used by reductions downstream.
    """

    max_iter: int = 1000
    alpha1: float = 0.1
    rank_tol: float = None
    objective_tol: float = None
    record_trace: bool = True
    wall_clock_budget: float = None

    def __post_init__(self):
        if not isinstance(self.max_iter, int) or self.max_iter < 1:
            raise ParameterError("max_iter must be a positive integer, got %r" % (self.max_iter,))
        if not (0.0 < self.alpha1 < 1.0):
            raise ParameterError("alpha1 must lie in (0, 1), got %r" % (self.alpha1,))
        if self.objective_tol is not None and self.objective_tol < 0:
            raise ParameterError("objective_tol must be nonnegative")
        if self.wall_clock_budget is not None and self.wall_clock_budget <= 0:
            raise ParameterError("wall_clock_budget must be positive")


def precompute(X, B):
    """Constant matrices and curvature bounds used by every iteration.

    Returns (XXt, BXt, L, q) with XXt = X X.T, BXt = B X.T,
    L = sigma_max(X)^2 and q = sigma_min(X)^2 / L, where sigma_min is
    the n-th singular value (zero when m < n or X is rank deficient).
    """
    X = as_matrix(X, "X")
    B = as_matrix(B, "B")
    if X.shape != B.shape:
        raise DimensionError(
            "X and B must have equal shapes, got %s and %s" % ((X.shape,), (B.shape,))
        )
    XXt = X @ X.T
    BXt = B @ X.T
    s = np.linalg.svd(X, compute_uv=False)
    L = float(s[0]) ** 2
    n = X.shape[0]
    q = (float(s[n - 1]) / float(s[0])) ** 2 if (L > 0 and s.size >= n) else 0.0
    return XXt, BXt, L, q


def gradient(Y, XXt, BXt):
    """Gradient of |Y X - B|_F^2 / 2 at an unconstrained Y."""
    return Y @ XXt - BXt


def _check_init(A0, n):
    A0 = as_matrix(A0, "A0")
    if A0.shape != (n, n):
        raise DimensionError("A0 must be %d-by-%d, got %s" % (n, n, (A0.shape,)))
    return A0


def _objective_norm(A, X, B):
    return float(np.linalg.norm(A @ X - B, "fro"))


class _RunState:
    """Trace, best-iterate and stopping bookkeeping for one solver run."""

    def __init__(self, cfg, t0):
        self.cfg = cfg
        self.t0 = t0
        self.trace = IterateTrace() if cfg.record_trace else None
        self.best_norm = np.inf
        self.best_A = None
        self.best_hist = []

    def record(self, A, norm_val):
        if self.trace is not None:
            self.trace.objectives.append(norm_val)
            self.trace.timestamps.append(time.perf_counter() - self.t0)
        if norm_val < self.best_norm:
            self.best_norm = norm_val
            self.best_A = A.copy()
        self.best_hist.append(self.best_norm)

    def should_stop(self):
        cfg = self.cfg
        if cfg.wall_clock_budget is not None:
            if time.perf_counter() - self.t0 >= cfg.wall_clock_budget:
                return True
        if cfg.objective_tol is not None and len(self.best_hist) > 10:
            prev = self.best_hist[-11]
            cur = self.best_hist[-1]
            if prev - cur <= cfg.objective_tol * max(1.0, cur):
                return True
        return False

    def finish(self, A, norm_val):
        return PsdpSolution(
            A=A,
            objective=norm_val**2,
            trace=self.trace,
            best_A=self.best_A if self.best_A is not None else A,
            best_objective=self.best_norm**2 if np.isfinite(self.best_norm) else norm_val**2,
        )


def gradient_solve(X, B, A0, cfg=None):
    """Projected gradient descent from the PSD initialization A0.

    Monotone in the objective.  When neither a trace nor a stopping
    tolerance is requested the per-iteration objective evaluation is
    skipped, which makes long oracle runs noticeably cheaper.
    """
    cfg = cfg or SolverConfig()
    XXt, BXt, L, _ = precompute(X, B)
    X = np.asarray(X, dtype=float)
    B = np.asarray(B, dtype=float)
    A = _check_init(A0, X.shape[0])
    t0 = time.perf_counter()
    state = _RunState(cfg, t0)
    if L == 0.0:
        val = _objective_norm(A, X, B)
        state.record(A, val)
        return state.finish(A, val)
    need_obj = cfg.record_trace or cfg.objective_tol is not None
    if need_obj:
        state.record(A, _objective_norm(A, X, B))
    for _ in range(cfg.max_iter):
        A = psd_project(A - (A @ XXt - BXt) / L)
        if need_obj:
            state.record(A, _objective_norm(A, X, B))
        if state.should_stop():
            break
    val = _objective_norm(A, X, B)
    if not need_obj:
        state.record(A, val)
    return state.finish(A, val)


def fgm_solve(X, B, A0, cfg=None):
    """Fast gradient method from the PSD initialization A0.

    One iteration: project the gradient step taken at the extrapolated
    point Y, update the momentum parameter by
    alpha' = (q - alpha^2 + sqrt((q - alpha^2)^2 + 4 alpha^2)) / 2,
    set beta = alpha (1 - alpha) / (alpha^2 + alpha'), and extrapolate
    Y = A + beta (A - A_prev).  With q = 0 this is the standard
    sublinear momentum schedule; with q > 0 the rate is linear.
    """
    cfg = cfg or SolverConfig()
    XXt, BXt, L, q = precompute(X, B)
    X = np.asarray(X, dtype=float)
    B = np.asarray(B, dtype=float)
    A = _check_init(A0, X.shape[0])
    t0 = time.perf_counter()
    state = _RunState(cfg, t0)
    val = _objective_norm(A, X, B)
    state.record(A, val)
    if L == 0.0:
        return state.finish(A, val)
    Y = A
    alpha = cfg.alpha1
    for _ in range(cfg.max_iter):
        A_prev = A
        A = psd_project(Y - (Y @ XXt - BXt) / L)
        alpha_next = 0.5 * (q - alpha**2 + np.sqrt((q - alpha**2) ** 2 + 4.0 * alpha**2))
        beta = alpha * (1.0 - alpha) / (alpha**2 + alpha_next)
        Y = A + beta * (A - A_prev)
        alpha = alpha_next
        state.record(A, _objective_norm(A, X, B))
        if state.should_stop():
            break
    return state.finish(A, _objective_norm(A, X, B))


def partan_solve(X, B, A0, cfg=None):
    """Projected gradient accelerated along the previous displacement.

    Each iteration first moves from A along D = A - A_prev by the
    scalar beta minimizing |(A + beta D) X - B|_F, then takes the
    projected gradient step from there.  If that candidate increases
    the objective the step is redone with beta = 0, so the method is
    monotone.  The first iteration has D = 0 and reduces to the plain
    projected gradient step.
    """
    cfg = cfg or SolverConfig()
    XXt, BXt, L, _ = precompute(X, B)
    X = np.asarray(X, dtype=float)
    B = np.asarray(B, dtype=float)
    A = _check_init(A0, X.shape[0])
    t0 = time.perf_counter()
    state = _RunState(cfg, t0)
    val = _objective_norm(A, X, B)
    state.record(A, val)
    if L == 0.0:
        return state.finish(A, val)
    A_prev = A
    for _ in range(cfg.max_iter):
        D = A - A_prev
        DXXt = D @ XXt
        denom = float(np.sum(D * DXXt))
        if denom > 0.0:
            beta = float(np.sum(D * (BXt - A @ XXt))) / denom
        else:
            beta = 0.0
        Y = A + beta * D if beta != 0.0 else A
        cand = psd_project(Y - (Y @ XXt - BXt) / L)
        cand_val = _objective_norm(cand, X, B)
        if cand_val > val and beta != 0.0:
            # accelerated step overshot; redo as a plain gradient step
            cand = psd_project(A - (A @ XXt - BXt) / L)
            cand_val = _objective_norm(cand, X, B)
        A_prev = A
        A = cand
        val = cand_val
        state.record(A, val)
        if state.should_stop():
            break
    return state.finish(A, val)
