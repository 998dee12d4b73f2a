"""Windowed angular distance constraints between frame embeddings.

Builds the supervision set for curve fitting: every frame pair within a
temporal window contributes its angular embedding distance (raised to a
contrast power p) together with a Gaussian locality weight on the gap.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .types import DistanceGraph, EmbeddingSequence

DEFAULT_WINDOW = 30
DEFAULT_SIGMA = 10.0
DEFAULT_POWER = 1.0


def normalize_embeddings(seq: EmbeddingSequence) -> EmbeddingSequence:
    """Scale every row to unit l2-norm.

    Idempotent up to one rounding step; rejects zero rows naming the
    offending frame.
    """
    norms = np.linalg.norm(seq.vectors, axis=1)
    zero_rows = np.flatnonzero(norms == 0.0)
    if zero_rows.size:
        raise DomainError(f"cannot normalize zero embedding vector at frame {int(zero_rows[0])}")
    return EmbeddingSequence(
        vectors=seq.vectors / norms[:, None],
        fps=seq.fps,
        source_tag=seq.source_tag,
        normalized=True,
    )


def angular_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Angle in radians between two unit vectors: arccos(u . v) in [0, pi].

    The dot product is accumulated in float64 and clamped to [-1, 1]
    before arccos, so rounding overshoot near parallel vectors yields 0
    rather than NaN.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    for name, vec in (("u", u), ("v", v)):
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > 1e-6:
            raise DomainError(f"{name} is not unit-norm (l2 = {norm!r})")
    dot = float(np.dot(u, v))
    return float(math.acos(min(1.0, max(-1.0, dot))))


def build_pair_graph(
    seq: EmbeddingSequence,
    window: int = DEFAULT_WINDOW,
    sigma: float = DEFAULT_SIGMA,
    power: float = DEFAULT_POWER,
) -> DistanceGraph:
    """Compute the full windowed constraint set for a normalized sequence.

    Pairs are every (i, j) with 0 <= j < i < T and i - j <= window,
    emitted in (i, j) order. Each pair carries distance d_ij^power and
    weight exp(-(i-j)^2 / (2 sigma^2)). The weight depends only on the
    temporal gap, never on the distance.
    """
    if not seq.normalized:
        raise DomainError("build_pair_graph requires a normalized sequence")
    if window < 1:
        raise DomainError(f"window must be at least 1, got {window}")
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    if not power > 0:
        raise DomainError(f"power must be positive, got {power!r}")
    t = seq.frame_count
    vectors = seq.vectors
    effective = min(window, t - 1)

    i_parts, j_parts, d_parts, w_parts = [], [], [], []
    for gap in range(1, effective + 1):
        dots = np.einsum("ij,ij->i", vectors[gap:], vectors[:-gap])
        np.clip(dots, -1.0, 1.0, out=dots)
        dist = np.arccos(dots)
        if power != 1.0:
            dist = dist**power
        count = t - gap
        i_parts.append(np.arange(gap, t, dtype=np.int64))
        j_parts.append(np.arange(0, count, dtype=np.int64))
        d_parts.append(dist)
        w_parts.append(np.full(count, math.exp(-(gap * gap) / (2.0 * sigma * sigma))))

    i_idx = np.concatenate(i_parts)
    j_idx = np.concatenate(j_parts)
    order = np.lexsort((j_idx, i_idx))
    return DistanceGraph(
        frame_count=t,
        i_indices=i_idx[order],
        j_indices=j_idx[order],
        distances=np.concatenate(d_parts)[order],
        weights=np.concatenate(w_parts)[order],
        window=window,
        sigma=sigma,
        power=power,
    )
