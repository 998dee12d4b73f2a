"""Timeline segmentation and regeneration planning.

Partitions a progress curve into contiguous, approximately linear
segments with segmented least squares (exact dynamic programming over
tight partitions: consecutive segments share their boundary frame), then
allocates output keyframe times or clip lengths proportional to the
semantic change each segment covers.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, PlanningError
from .fit import _check_normalized_curve
from .types import Clip, Keyframe, RegenPlan, Segment, SegmentationResult

MIN_CLIP_LENGTH = 2


class _LineFitSums:
    """O(1) least-squares line fits over index ranges via prefix sums."""

    def __init__(self, values: np.ndarray):
        t = values.shape[0]
        k = np.arange(t, dtype=np.float64)
        self.cx = np.concatenate(([0.0], np.cumsum(k)))
        self.cxx = np.concatenate(([0.0], np.cumsum(k * k)))
        self.cy = np.concatenate(([0.0], np.cumsum(values)))
        self.cyy = np.concatenate(([0.0], np.cumsum(values * values)))
        self.cxy = np.concatenate(([0.0], np.cumsum(k * values)))

    def fit(self, a, b):
        """Slope, intercept, SSE of the best line over [a, b] inclusive.

        ``a`` may be an array (vectorized over range starts for the DP).
        """
        n = b - a + 1.0
        sx = self.cx[b + 1] - self.cx[a]
        sy = self.cy[b + 1] - self.cy[a]
        sxx = self.cxx[b + 1] - self.cxx[a]
        syy = self.cyy[b + 1] - self.cyy[a]
        sxy = self.cxy[b + 1] - self.cxy[a]
        denom = n * sxx - sx * sx
        slope = (n * sxy - sx * sy) / denom
        intercept = (sy - slope * sx) / n
        sse = syy - slope * sxy - intercept * sy
        return slope, intercept, np.maximum(sse, 0.0)


def segmented_least_squares(values, penalty: float) -> SegmentationResult:
    """Optimal tight partition minimizing total SSE + penalty * K.

    Exact DP over all partitions whose consecutive segments share their
    boundary index. Ties break toward fewer segments, then toward the
    earliest breakpoints, so the result is deterministic.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.shape[0] < 2:
        raise DomainError("segmentation needs a 1-d vector of length >= 2")
    if not np.all(np.isfinite(values)):
        raise DomainError("segmentation input must be finite")
    if not (penalty >= 0 and np.isfinite(penalty)):
        raise DomainError(f"penalty must be nonnegative, got {penalty!r}")
    t = values.shape[0]
    sums = _LineFitSums(values)

    best_cost = np.empty(t)
    best_count = np.empty(t, dtype=np.int64)
    prev = np.empty(t, dtype=np.int64)
    best_cost[0] = 0.0
    best_count[0] = 0
    prev[0] = -1
    for j in range(1, t):
        starts = np.arange(j)
        _, _, sse = sums.fit(starts, j)
        costs = best_cost[:j] + sse + penalty
        low = costs.min()
        ties = np.flatnonzero(costs == low)
        counts = best_count[ties]
        ties = ties[counts == counts.min()]
        pick = int(ties[0])
        best_cost[j] = costs[pick]
        best_count[j] = best_count[pick] + 1
        prev[j] = pick

    bounds = [t - 1]
    while bounds[-1] > 0:
        bounds.append(int(prev[bounds[-1]]))
    bounds.reverse()
    segments = []
    for a, b in zip(bounds, bounds[1:]):
        slope, intercept, sse = sums.fit(a, b)
        segments.append(
            Segment(start=a, end=b, slope=float(slope), intercept=float(intercept), sse=float(sse))
        )
    return SegmentationResult(
        segment_count=len(segments),
        segments=tuple(segments),
        penalty=float(penalty),
    )


def auto_penalty(values) -> float:
    """Scale-aware default penalty: twice the variance of first differences."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.shape[0] < 2:
        raise DomainError("auto_penalty needs a 1-d vector of length >= 2")
    return 2.0 * float(np.var(np.diff(values)))


def plan_keyframes(s_hat, seg: SegmentationResult, output_frames: int) -> tuple[Keyframe, ...]:
    """One keyframe per segment boundary, placed at floor(T_out * S-hat).

    Flooring collisions are repaired by pushing later targets forward one
    frame at a time (keyframes must occupy distinct output frames); the
    final target is capped at T_out - 1 and earlier targets are pulled
    back if the cap squeezes them.
    """
    s_hat = _check_normalized_curve(s_hat)
    _check_match(s_hat, seg)
    bounds = seg.breakpoints
    if output_frames < len(bounds):
        raise PlanningError(
            f"{len(bounds)} keyframes cannot occupy distinct frames in {output_frames} outputs"
        )
    targets = [min(int(output_frames * float(s_hat[b])), output_frames - 1) for b in bounds]
    for idx in range(1, len(targets)):
        targets[idx] = max(targets[idx], targets[idx - 1] + 1)
    targets[-1] = min(targets[-1], output_frames - 1)
    for idx in range(len(targets) - 2, -1, -1):
        targets[idx] = min(targets[idx], targets[idx + 1] - 1)
    if targets[0] < 0:
        raise PlanningError("keyframe targets cannot be repaired into range")
    return tuple(Keyframe(source_frame=b, target_time=t) for b, t in zip(bounds, targets))


def plan_clips(s_hat, seg: SegmentationResult, output_frames: int) -> tuple[Clip, ...]:
    """One clip per segment with length proportional to its progress share.

    Lengths are round(T_out * delta-S) repaired by the largest-remainder
    rule so they sum to T_out exactly. A clip shorter than 2 frames
    cannot carry first/last-frame conditioning and raises PlanningError.
    """
    s_hat = _check_normalized_curve(s_hat)
    _check_match(s_hat, seg)
    if output_frames < 1:
        raise DomainError("output_frames must be positive")
    quotas = np.array(
        [output_frames * float(s_hat[s.end] - s_hat[s.start]) for s in seg.segments]
    )
    lengths = np.floor(quotas + 0.5).astype(np.int64)
    deficit = output_frames - int(lengths.sum())
    if deficit != 0:
        remainders = quotas - lengths
        # most under-allocated first for additions, most over-allocated for removals
        order = np.lexsort((np.arange(len(quotas)), -np.sign(deficit) * remainders))
        for idx in order[: abs(deficit)]:
            lengths[idx] += 1 if deficit > 0 else -1
    short = np.flatnonzero(lengths < MIN_CLIP_LENGTH)
    if short.size:
        raise PlanningError(
            f"segment {int(short[0])} gets only {int(lengths[short[0]])} output frames; "
            "increase the segmentation penalty to merge short segments"
        )
    return tuple(
        Clip(start_frame=s.start, end_frame=s.end, length=int(n))
        for s, n in zip(seg.segments, lengths)
    )


def build_plan(s_hat, seg: SegmentationResult, output_frames: int, mode: str) -> RegenPlan:
    """Assemble a RegenPlan in keyframe mode or clip mode."""
    if mode == "keyframes":
        return RegenPlan(
            keyframes=plan_keyframes(s_hat, seg, output_frames),
            clips=(),
            total_length=output_frames,
        )
    if mode == "clips":
        return RegenPlan(
            keyframes=(),
            clips=plan_clips(s_hat, seg, output_frames),
            total_length=output_frames,
        )
    raise DomainError(f"unknown plan mode {mode!r}")


def _check_match(s_hat: np.ndarray, seg: SegmentationResult) -> None:
    if seg.frame_count != s_hat.shape[0]:
        raise DomainError(
            f"segmentation covers {seg.frame_count} frames but the curve has {s_hat.shape[0]}"
        )
