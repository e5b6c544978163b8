"""End-to-end solve: reduction, closed forms, and the reduced solver.

``an_fgm_solve`` is the semi-analytical route: reduce the instance to
its strongly convex r-by-r subproblem, short-circuit to a closed form
when one applies (rank-one X, or the negative semidefinite condition),
otherwise run the fast gradient method from the recursive
initialization and assemble the result back in original coordinates,
exactly when the infimum is attained and to any admissible eps when it
is not.  Iterating on the reduced problem costs O(r^3) per iteration
instead of O(n^3) and always enjoys a positive strong-convexity
modulus, so the method is both cheaper per step and linearly
convergent.

``solve`` is the user-facing dispatcher over the four methods and four
initializations.
"""

import numpy as np

from .errors import ConfigurationError, DegenerateProblemError
from .initializers import init_diagonal, init_recursive, init_unconstrained, init_zero
from .matcore import as_matrix, fro_norm
from .reduction import (
    assemble_epsilon,
    assemble_optimal,
    default_epsilon,
    infimum_value,
    kernel_contained,
    make_subproblem_solution,
    negative_case_solution,
    rank1_solve,
    reduce_problem,
)
from .solution import IterateTrace, PsdpSolution
from .solvers import SolverConfig, fgm_solve, gradient_solve, partan_solve

METHODS = ("gradient", "fgm", "partan", "an-fgm")
INITS = ("zero", "unconstrained", "diagonal", "recursive")


def _degenerate_solution(B):
    value = fro_norm(B) ** 2
    A = np.zeros((B.shape[0], B.shape[0]))
    trace = IterateTrace(objectives=[value**0.5], timestamps=[0.0])
    return PsdpSolution(A=A, objective=value, infimum=value, attained=True, trace=trace)


def _sub_init(name, red, cfg):
    Xsub = np.diag(red.sigma1)
    if name == "recursive":
        return init_recursive(red.sigma1, red.B11, cfg)
    if name == "zero":
        return init_zero(red.r)
    if name == "diagonal":
        return init_diagonal(Xsub, red.B11)
    if name == "unconstrained":
        return init_unconstrained(Xsub, red.B11)
    raise ConfigurationError("unknown initialization %r" % (name,))


def an_fgm_solve(X, B, cfg=None, eps=None, use_closed_forms=True, sub_init="recursive"):
    """Semi-analytical solve of inf |A X - B|_F^2 over PSD A.

    Parameters
    ----------
    X, B : array_like, shape (n, m)
    cfg : SolverConfig, optional
        Budget for the reduced fast-gradient run.
    eps : float, optional
        Accuracy target when the infimum turns out to be unattained;
        defaults to a small value inside the admissible interval.
    use_closed_forms : bool
        When True (default), rank-one instances and instances passing
        the negative semidefinite test bypass the iterative stage.
    sub_init : str
        Initialization for the reduced subproblem, "recursive" by
        default.

    Returns
    -------
    PsdpSolution
        With infimum and attained always filled, and the trace mapped
        back to original coordinates (objective entries are
        sqrt(subproblem residual^2 + offset)).
    """
    cfg = cfg or SolverConfig()
    X = as_matrix(X, "X")
    B = as_matrix(B, "B")
    try:
        red = reduce_problem(X, B, cfg.rank_tol)
    except DegenerateProblemError:
        return _degenerate_solution(B)

    if use_closed_forms:
        if red.r == 1:
            return rank1_solve(X, B, eps=eps, rank_tol=cfg.rank_tol)
        if red.r < red.n:
            neg = negative_case_solution(red, X, B, eps=eps)
            if neg is not None:
                return neg

    A0 = _sub_init(sub_init, red, cfg)
    sub_run = fgm_solve(np.diag(red.sigma1), red.B11, A0, cfg)
    sub = make_subproblem_solution(sub_run.best_A, red)

    if kernel_contained(sub, red):
        out = assemble_optimal(red, sub)
    else:
        if eps is None:
            eps = default_epsilon(infimum_value(red, sub), sub.residual)
        out = assemble_epsilon(red, sub, eps)

    if sub_run.trace is not None:
        objs = np.asarray(sub_run.trace.objectives)
        out.trace = IterateTrace(
            objectives=list(np.sqrt(objs**2 + red.offset)),
            timestamps=list(sub_run.trace.timestamps),
        )
    return out


def solve(X, B, method="an-fgm", init=None, cfg=None, eps=None):
    """Solve the PSD Procrustes instance with a named method.

    method is one of "gradient", "fgm", "partan" (full-space iterations
    from a chosen initialization) or "an-fgm" (reduction first; the
    initialization then applies to the reduced subproblem).  init
    defaults to "diagonal" for the full-space methods and "recursive"
    for "an-fgm"; "recursive" is only available with "an-fgm" since it
    requires the diagonal data matrix produced by the reduction.
    """
    if method not in METHODS:
        raise ConfigurationError(
            "unknown method %r; choose one of %s" % (method, ", ".join(METHODS))
        )
    if init is not None and init not in INITS:
        raise ConfigurationError(
            "unknown initialization %r; choose one of %s" % (init, ", ".join(INITS))
        )
    cfg = cfg or SolverConfig()

    if method == "an-fgm":
        return an_fgm_solve(X, B, cfg=cfg, eps=eps, sub_init=init or "recursive")

    if init == "recursive":
        raise ConfigurationError(
            "the recursive initialization requires method 'an-fgm'"
        )
    X = as_matrix(X, "X")
    B = as_matrix(B, "B")
    init = init or "diagonal"
    if init == "zero":
        A0 = init_zero(X.shape[0])
    elif init == "diagonal":
        A0 = init_diagonal(X, B)
    else:
        A0 = init_unconstrained(X, B)
    runner = {"gradient": gradient_solve, "fgm": fgm_solve, "partan": partan_solve}[method]
    return runner(X, B, A0, cfg)
