"""Fitting the semantic progress curve from a distance graph.

The curve S minimizes (AS - b)' W (AS - b) + lambda S'S, where row k of
A holds +1 at i_k and -1 at j_k of pair k, b holds the pair distances and
W the diagonal locality weights. The normal matrix A'WA + lambda*I is
symmetric positive definite and banded with bandwidth equal to the pair
window, so the solve uses a banded Cholesky factorization plus iterative
refinement; no dense T x T matrix is ever formed.

Because every row of A sums to zero, taking the inner product of the
normal equations with the all-ones vector gives lambda * sum(S) = 0: the
exact solution is zero-sum (the gauge property checked by SpfCurve).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded

from .errors import ConvergenceError, DegenerateCurveError, DomainError
from .types import DistanceGraph, FitConfig, GraphSummary, SpfCurve

FLAT_TOLERANCE = 1e-9


def _assemble_banded(graph: DistanceGraph, lam: float):
    """Build A'WA + lambda*I in scipy lower-banded form, plus A'Wb."""
    t = graph.frame_count
    i_idx, j_idx, w = graph.i_indices, graph.j_indices, graph.weights
    bandwidth = int(np.max(i_idx - j_idx))
    ab = np.zeros((bandwidth + 1, t))
    np.add.at(ab[0], i_idx, w)
    np.add.at(ab[0], j_idx, w)
    np.subtract.at(ab, (i_idx - j_idx, j_idx), w)
    ab[0] += lam
    rhs = np.zeros(t)
    wd = w * graph.distances
    np.add.at(rhs, i_idx, wd)
    np.subtract.at(rhs, j_idx, wd)
    return ab, rhs


def _normal_matvec(graph: DistanceGraph, lam: float, s: np.ndarray) -> np.ndarray:
    """(A'WA + lambda*I) s computed straight from the pair arrays."""
    i_idx, j_idx, w = graph.i_indices, graph.j_indices, graph.weights
    flow = w * (s[i_idx] - s[j_idx])
    out = lam * s
    np.add.at(out, i_idx, flow)
    np.subtract.at(out, j_idx, flow)
    return out


def fit_spf(graph: DistanceGraph, cfg: FitConfig) -> np.ndarray:
    """Solve the regularized weighted least-squares system for the raw curve.

    Returns the unique minimizer as a length-T float64 vector. Raises
    ConvergenceError (carrying the achieved relative residual) if banded
    Cholesky plus iterative refinement cannot reach cfg.solver_tolerance
    within cfg.max_solver_iterations refinement steps.
    """
    ab, rhs = _assemble_banded(graph, cfg.lambda_)
    rhs_norm = float(np.linalg.norm(rhs))
    if rhs_norm == 0.0:
        return np.zeros(graph.frame_count)
    factor = cholesky_banded(ab, lower=True)
    s = cho_solve_banded((factor, True), rhs)
    residual = rhs - _normal_matvec(graph, cfg.lambda_, s)
    rel = float(np.linalg.norm(residual)) / rhs_norm
    for _ in range(cfg.max_solver_iterations):
        if rel <= cfg.solver_tolerance:
            return s
        s = s + cho_solve_banded((factor, True), residual)
        residual = rhs - _normal_matvec(graph, cfg.lambda_, s)
        rel = float(np.linalg.norm(residual)) / rhs_norm
    if rel > cfg.solver_tolerance:
        raise ConvergenceError(
            f"solver stalled at relative residual {rel:.3e} "
            f"(tolerance {cfg.solver_tolerance:.3e})",
            residual=rel,
        )
    return s


def monotone_project(s) -> np.ndarray:
    """Project onto nondecreasing sequences (pool adjacent violators).

    Returns the l2-nearest nondecreasing vector. Already-monotone inputs
    come back exactly unchanged; the projection is idempotent.
    """
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 1 or s.shape[0] < 2:
        raise DomainError("monotone_project needs a 1-d vector of length >= 2")
    sums: list[float] = []
    counts: list[int] = []
    means: list[float] = []
    for x in s:
        cur_sum, cur_count, cur_mean = float(x), 1, float(x)
        while means and cur_mean < means[-1]:
            cur_sum += sums.pop()
            cur_count += counts.pop()
            means.pop()
            cur_mean = cur_sum / cur_count
        sums.append(cur_sum)
        counts.append(cur_count)
        means.append(cur_mean)
    out = np.empty_like(s)
    pos = 0
    for mean, count in zip(means, counts):
        out[pos : pos + count] = mean
        pos += count
    return out


def normalize_spf(s, flat_tolerance: float = FLAT_TOLERANCE) -> np.ndarray:
    """Min-max scale a nondecreasing curve onto [0, 1].

    Endpoints land exactly on 0 and 1. A curve whose total rise is below
    ``flat_tolerance`` has no measurable semantic change and cannot be
    meaningfully retimed, so it is rejected rather than rescaled.
    """
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 1 or s.shape[0] < 2:
        raise DomainError("normalize_spf needs a 1-d vector of length >= 2")
    if np.any(np.diff(s) < 0):
        raise DomainError("normalize_spf input must be nondecreasing")
    rise = float(s[-1] - s[0])
    if rise < flat_tolerance:
        raise DegenerateCurveError(
            f"curve is flat (total rise {rise:.3e}): no measurable semantic change"
        )
    return (s - s[0]) / rise


def _check_normalized_curve(s_hat: np.ndarray) -> np.ndarray:
    s_hat = np.asarray(s_hat, dtype=np.float64)
    if s_hat.ndim != 1 or s_hat.shape[0] < 2:
        raise DomainError("normalized curve must be a 1-d vector of length >= 2")
    if s_hat[0] != 0.0 or s_hat[-1] != 1.0:
        raise DomainError("normalized curve must start at 0 and end at 1")
    if np.any(np.diff(s_hat) < 0):
        raise DomainError("normalized curve must be nondecreasing")
    return s_hat


def invert_spf(s_hat, u):
    """Invert the piecewise-linear extension of a normalized curve.

    Returns the smallest time t in [0, T-1] whose interpolated progress
    equals u; inside a flat plateau that is the plateau's left edge. At a
    strictly increasing knot k, invert_spf(S, S[k]) returns exactly k.
    Accepts a scalar or an array of progress values.
    """
    s_hat = _check_normalized_curve(s_hat)
    u_arr = np.atleast_1d(np.asarray(u, dtype=np.float64))
    if np.any(u_arr < 0.0) or np.any(u_arr > 1.0):
        raise DomainError("progress values must lie in [0, 1]")
    k = np.searchsorted(s_hat, u_arr, side="left")
    out = k.astype(np.float64)
    miss = s_hat[k] != u_arr
    if np.any(miss):
        km = k[miss]
        lo = s_hat[km - 1]
        out[miss] = (km - 1) + (u_arr[miss] - lo) / (s_hat[km] - lo)
    return out if np.ndim(u) else float(out[0])


def linearity_score(s_hat) -> float:
    """How close a normalized curve is to the identity line, in [0, 1].

    1 - 2 * mean |S[k] - k/(T-1)|, floored at 0. Exactly linear curves
    score 1; a step function (the worst monotone endpoint-pinned curve)
    scores about 0.
    """
    s_hat = _check_normalized_curve(s_hat)
    t = s_hat.shape[0]
    ramp = np.arange(t, dtype=np.float64) / (t - 1)
    return max(0.0, 1.0 - 2.0 * float(np.mean(np.abs(s_hat - ramp))))


def fit_curve(graph: DistanceGraph, cfg: FitConfig | None = None, source_tag: str = "") -> SpfCurve:
    """Full pipeline: solve, project to monotone, normalize, score.

    The projection runs before normalization so the endpoints of the
    normalized curve are pinned exactly.
    """
    if cfg is None:
        cfg = FitConfig()
    raw = fit_spf(graph, cfg)
    s_hat = normalize_spf(monotone_project(raw))
    return SpfCurve(
        raw=raw,
        normalized=s_hat,
        fit_config=cfg,
        graph_summary=GraphSummary(
            window=graph.window,
            sigma=graph.sigma,
            power=graph.power,
            source_tag=source_tag,
        ),
        linearity_score=linearity_score(s_hat),
    )
