"""Domain types shared by every spfkit module.

All types are immutable values: arrays are coerced to read-only float64
and every documented invariant is checked at construction time, so an
invalid value cannot exist once built. Instances are safe to share
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError

__all__ = [
    "EmbeddingSequence",
    "PairConstraint",
    "DistanceGraph",
    "FitConfig",
    "GraphSummary",
    "SpfCurve",
    "PacingTarget",
    "BandSchedule",
    "StepPositions",
    "WarpSchedule",
    "Segment",
    "SegmentationResult",
    "Keyframe",
    "Clip",
    "RegenPlan",
    "SyntheticTruth",
]

UNIT_NORM_TOL = 1e-6
GAUGE_TOL = 1e-8


def _frozen_f64(values, name: str, ndim: int) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(values, dtype=np.float64))
    if arr.ndim != ndim:
        raise DomainError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


def _frozen_i64(values, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(values, dtype=np.int64))
    if arr.ndim != 1:
        raise DomainError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _set(obj, **fields) -> None:
    for key, value in fields.items():
        object.__setattr__(obj, key, value)


@dataclass(frozen=True, eq=False)
class EmbeddingSequence:
    """Per-frame semantic embeddings, one unit-length row per frame.

    ``vectors`` is a (T, d) float64 array. Rows must be nonzero; when
    ``normalized`` is set every row must have unit l2-norm to within
    1e-6. ``source_tag`` identifies the embedder that produced the rows.
    """

    vectors: np.ndarray
    fps: Optional[float] = None
    source_tag: str = ""
    normalized: bool = False

    def __post_init__(self):
        vectors = _frozen_f64(self.vectors, "vectors", ndim=2)
        _set(self, vectors=vectors)
        if self.frame_count < 2:
            raise DomainError(f"need at least 2 frames, got {self.frame_count}")
        if self.dim < 1:
            raise DomainError("embedding dimension must be at least 1")
        norms = np.linalg.norm(vectors, axis=1)
        zero_rows = np.flatnonzero(norms == 0.0)
        if zero_rows.size:
            raise DomainError(f"zero embedding vector at frame {int(zero_rows[0])}")
        if self.normalized and np.any(np.abs(norms - 1.0) > UNIT_NORM_TOL):
            worst = int(np.argmax(np.abs(norms - 1.0)))
            raise DomainError(
                f"normalized flag set but row {worst} has l2-norm {norms[worst]!r}"
            )
        if self.fps is not None and not (self.fps > 0 and math.isfinite(self.fps)):
            raise DomainError(f"fps must be positive and finite, got {self.fps!r}")

    @property
    def frame_count(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbeddingSequence):
            return NotImplemented
        return (
            np.array_equal(self.vectors, other.vectors)
            and self.fps == other.fps
            and self.source_tag == other.source_tag
            and self.normalized == other.normalized
        )


@dataclass(frozen=True)
class PairConstraint:
    """One distance constraint between frames j < i.

    ``distance`` is the angular distance already raised to the graph's
    power p; ``weight`` is the Gaussian locality weight for the gap i-j.
    """

    i: int
    j: int
    distance: float
    weight: float

    def __post_init__(self):
        if not 0 <= self.j < self.i:
            raise DomainError(f"pair indices must satisfy 0 <= j < i, got ({self.i}, {self.j})")
        if not (self.distance >= 0 and math.isfinite(self.distance)):
            raise DomainError(f"pair distance must be finite and nonnegative, got {self.distance!r}")
        if not 0 < self.weight <= 1:
            raise DomainError(f"pair weight must lie in (0, 1], got {self.weight!r}")


@dataclass(frozen=True, eq=False)
class DistanceGraph:
    """Windowed pairwise-distance constraints for one sequence.

    Stored as parallel arrays (i_indices, j_indices, distances, weights)
    ordered by (i, j). Invariants: 0 <= j < i < T, gaps bounded by the
    window, unique pairs, distances within [0, pi^power], and weights
    equal to exp(-(i-j)^2 / (2 sigma^2)).
    """

    frame_count: int
    i_indices: np.ndarray
    j_indices: np.ndarray
    distances: np.ndarray
    weights: np.ndarray
    window: int
    sigma: float
    power: float

    def __post_init__(self):
        if self.frame_count < 2:
            raise DomainError(f"graph needs at least 2 frames, got {self.frame_count}")
        if self.window < 1:
            raise DomainError(f"window must be at least 1, got {self.window}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")
        if not (self.power > 0 and math.isfinite(self.power)):
            raise DomainError(f"power must be positive, got {self.power!r}")
        i_idx = _frozen_i64(self.i_indices, "i_indices")
        j_idx = _frozen_i64(self.j_indices, "j_indices")
        dist = _frozen_f64(self.distances, "distances", ndim=1)
        wts = _frozen_f64(self.weights, "weights", ndim=1)
        _set(self, i_indices=i_idx, j_indices=j_idx, distances=dist, weights=wts)
        m = i_idx.shape[0]
        if not (j_idx.shape[0] == dist.shape[0] == wts.shape[0] == m):
            raise DomainError("pair arrays must have equal lengths")
        if m == 0:
            raise DomainError("graph has no pairs")
        if m > self.frame_count * self.window:
            raise DomainError(f"pair count {m} exceeds T*W = {self.frame_count * self.window}")
        if np.any(j_idx < 0) or np.any(i_idx <= j_idx) or np.any(i_idx >= self.frame_count):
            raise DomainError("pair indices must satisfy 0 <= j < i < T")
        gaps = i_idx - j_idx
        if np.any(gaps > self.window):
            raise DomainError("pair gap exceeds the window")
        keys = i_idx * self.frame_count + j_idx
        if np.unique(keys).size != m:
            raise DomainError("duplicate (i, j) pair in graph")
        cap = math.pi ** self.power
        if np.any(dist < 0) or np.any(dist > cap):
            raise DomainError(f"pair distances must lie in [0, pi^p] = [0, {cap!r}]")
        expected = np.exp(-(gaps.astype(np.float64) ** 2) / (2.0 * self.sigma**2))
        if np.max(np.abs(wts - expected)) > 1e-12:
            raise DomainError("weights do not match exp(-(i-j)^2 / (2 sigma^2))")

    @property
    def pair_count(self) -> int:
        return self.i_indices.shape[0]

    @property
    def pairs(self) -> Tuple[PairConstraint, ...]:
        return tuple(self.iter_pairs())

    def iter_pairs(self) -> Iterator[PairConstraint]:
        for i, j, d, w in zip(self.i_indices, self.j_indices, self.distances, self.weights):
            yield PairConstraint(int(i), int(j), float(d), float(w))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistanceGraph):
            return NotImplemented
        return (
            self.frame_count == other.frame_count
            and self.window == other.window
            and self.sigma == other.sigma
            and self.power == other.power
            and np.array_equal(self.i_indices, other.i_indices)
            and np.array_equal(self.j_indices, other.j_indices)
            and np.array_equal(self.distances, other.distances)
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True)
class FitConfig:
    """Solver settings for the regularized weighted least-squares fit."""

    lambda_: float = 1e-2
    solver_tolerance: float = 1e-10
    max_solver_iterations: int = 50

    def __post_init__(self):
        if not (self.lambda_ > 0 and math.isfinite(self.lambda_)):
            raise DomainError(f"lambda must be positive, got {self.lambda_!r}")
        if not 0 < self.solver_tolerance <= 1e-6:
            raise DomainError(
                f"solver_tolerance must lie in (0, 1e-6], got {self.solver_tolerance!r}"
            )
        if self.max_solver_iterations < 1:
            raise DomainError("max_solver_iterations must be positive")


@dataclass(frozen=True)
class GraphSummary:
    """Provenance of the constraint graph a curve was fitted from."""

    window: int
    sigma: float
    power: float
    source_tag: str = ""


def _identity_deviation(normalized: np.ndarray) -> float:
    t = normalized.shape[0]
    ramp = np.arange(t, dtype=np.float64) / (t - 1)
    return float(np.mean(np.abs(normalized - ramp)))


@dataclass(frozen=True, eq=False)
class SpfCurve:
    """A fitted semantic-progress curve.

    ``raw`` is the solver output (zero-sum up to tolerance); ``normalized``
    is its monotone projection mapped onto [0, 1] with pinned endpoints.
    """

    raw: np.ndarray
    normalized: np.ndarray
    fit_config: FitConfig
    graph_summary: GraphSummary
    linearity_score: float

    def __post_init__(self):
        raw = _frozen_f64(self.raw, "raw", ndim=1)
        norm = _frozen_f64(self.normalized, "normalized", ndim=1)
        _set(self, raw=raw, normalized=norm)
        if raw.shape[0] < 2 or norm.shape[0] != raw.shape[0]:
            raise DomainError("raw and normalized must have the same length T >= 2")
        gauge = abs(float(np.sum(raw)))
        if gauge > GAUGE_TOL * max(1.0, float(np.sum(np.abs(raw)))):
            raise DomainError(f"raw curve breaks the zero-sum gauge: sum = {gauge!r}")
        if norm[0] != 0.0 or norm[-1] != 1.0:
            raise DomainError("normalized curve must start at 0 and end at 1 exactly")
        if np.any(np.diff(norm) < 0):
            raise DomainError("normalized curve must be nondecreasing")
        expected = max(0.0, 1.0 - 2.0 * _identity_deviation(norm))
        if not math.isclose(self.linearity_score, expected, rel_tol=0, abs_tol=1e-12):
            raise DomainError(
                f"linearity_score {self.linearity_score!r} does not match the curve "
                f"(expected {expected!r})"
            )

    @property
    def frame_count(self) -> int:
        return self.raw.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpfCurve):
            return NotImplemented
        return (
            np.array_equal(self.raw, other.raw)
            and np.array_equal(self.normalized, other.normalized)
            and self.fit_config == other.fit_config
            and self.graph_summary == other.graph_summary
            and self.linearity_score == other.linearity_score
        )


@dataclass(frozen=True)
class PacingTarget:
    """Monotone endpoint-pinned map g: [0,1] -> [0,1] describing desired pacing.

    Kinds: ``linear``; ``exp_rise``/``exp_fall`` with a positive rate;
    ``table`` with sorted, deduplicated (u, v) knots pinned at (0,0) and (1,1).
    """

    kind: str
    rate: Optional[float] = None
    knots: Optional[Tuple[Tuple[float, float], ...]] = None

    def __post_init__(self):
        if self.kind == "linear":
            if self.rate is not None or self.knots is not None:
                raise DomainError("linear target takes no rate or knots")
        elif self.kind in ("exp_rise", "exp_fall"):
            if self.knots is not None:
                raise DomainError(f"{self.kind} target takes no knots")
            if self.rate is None or not (self.rate > 0 and math.isfinite(self.rate)):
                raise DomainError(f"{self.kind} target needs a positive rate, got {self.rate!r}")
        elif self.kind == "table":
            if self.rate is not None:
                raise DomainError("table target takes no rate")
            if not self.knots:
                raise DomainError("table target needs knots")
            cleaned = sorted({(float(u), float(v)) for u, v in self.knots})
            us = [u for u, _ in cleaned]
            vs = [v for _, v in cleaned]
            if len(set(us)) != len(us):
                raise DomainError("table knots carry conflicting values for the same u")
            if cleaned[0] != (0.0, 0.0) or cleaned[-1] != (1.0, 1.0):
                raise DomainError("table knots must be pinned at (0, 0) and (1, 1)")
            if any(b < a for a, b in zip(vs, vs[1:])):
                raise DomainError("table knot values must be nondecreasing")
            if not all(math.isfinite(u) and math.isfinite(v) for u, v in cleaned):
                raise DomainError("table knots must be finite")
            _set(self, knots=tuple(cleaned))
        else:
            raise DomainError(f"unknown pacing target kind {self.kind!r}")

    @classmethod
    def linear(cls) -> "PacingTarget":
        return cls("linear")

    @classmethod
    def exp_rise(cls, rate: float) -> "PacingTarget":
        return cls("exp_rise", rate=float(rate))

    @classmethod
    def exp_fall(cls, rate: float) -> "PacingTarget":
        return cls("exp_fall", rate=float(rate))

    @classmethod
    def table(cls, knots: Sequence[Tuple[float, float]]) -> "PacingTarget":
        return cls("table", knots=tuple((float(u), float(v)) for u, v in knots))

    def __call__(self, u: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        u_arr = np.asarray(u, dtype=np.float64)
        if np.any(u_arr < 0) or np.any(u_arr > 1):
            raise DomainError("pacing target argument must lie in [0, 1]")
        if self.kind == "linear":
            out = u_arr.copy()
        elif self.kind == "exp_rise":
            out = np.expm1(self.rate * u_arr) / np.expm1(self.rate)
        elif self.kind == "exp_fall":
            out = np.expm1(-self.rate * u_arr) / np.expm1(-self.rate)
        else:
            us = np.array([k[0] for k in self.knots])
            vs = np.array([k[1] for k in self.knots])
            out = np.interp(u_arr, us, vs)
        return out if isinstance(u, np.ndarray) else float(out)


@dataclass(frozen=True)
class BandSchedule:
    """Per-band warp strengths decaying from low to high frequency bands.

    strengths[b] = alpha_high + (alpha_low - alpha_high) * exp(-kappa*b/(B-1));
    a single band uses alpha_low.
    """

    band_count: int
    alpha_low: float
    alpha_high: float
    kappa: float
    strengths: Tuple[float, ...]

    def __post_init__(self):
        if self.band_count < 1:
            raise DomainError(f"band_count must be at least 1, got {self.band_count}")
        for name in ("alpha_low", "alpha_high"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
        if not (self.kappa >= 0 and math.isfinite(self.kappa)):
            raise DomainError(f"kappa must be nonnegative, got {self.kappa!r}")
        if len(self.strengths) != self.band_count:
            raise DomainError("strengths length must equal band_count")
        if self.band_count == 1:
            expected = (self.alpha_low,)
        else:
            span = self.alpha_low - self.alpha_high
            expected = tuple(
                self.alpha_high + span * math.exp(-self.kappa * b / (self.band_count - 1))
                for b in range(self.band_count)
            )
        if any(abs(a - e) > 1e-12 for a, e in zip(self.strengths, expected)):
            raise DomainError("strengths do not match the exponential band schedule")
        lo = min(self.alpha_low, self.alpha_high)
        hi = max(self.alpha_low, self.alpha_high)
        if any(not lo - 1e-12 <= a <= hi + 1e-12 for a in self.strengths):
            raise DomainError("band strengths fall outside [min(alphas), max(alphas)]")


def _decay(t_norm: float) -> float:
    # gamma(t) = (e^{3t} - 1) / (e^3 - 1); duplicated from warp to keep types leaf-level
    return float(np.expm1(3.0 * t_norm) / np.expm1(3.0))


@dataclass(frozen=True, eq=False)
class StepPositions:
    """Per-band position vectors for one normalized diffusion timestep."""

    t_norm: float
    positions: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if not 0 <= self.t_norm <= 1:
            raise DomainError(f"t_norm must lie in [0, 1], got {self.t_norm!r}")
        frozen = tuple(_frozen_f64(p, "positions", ndim=1) for p in self.positions)
        if not frozen:
            raise DomainError("a step needs at least one band vector")
        _set(self, positions=frozen)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepPositions):
            return NotImplemented
        return (
            self.t_norm == other.t_norm
            and len(self.positions) == len(other.positions)
            and all(np.array_equal(a, b) for a, b in zip(self.positions, other.positions))
        )


# Slack for float rounding in blend/monotonicity checks on constructed schedules.
_POSITION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class WarpSchedule:
    """Warped temporal positions plus their per-band, per-timestep expansion.

    ``tau`` holds the warped frame positions (endpoints pinned at 0 and
    T-1, nondecreasing). Every band vector in ``steps`` must equal the
    blend (1 - a_b*gamma(t)) * t + a_b*gamma(t) * tau_t and therefore lies
    between t and tau_t. ``latent_steps`` mirrors ``steps`` resampled to
    latent resolution when a compression factor is set.
    """

    tau: np.ndarray
    band_schedule: BandSchedule
    steps: Tuple[StepPositions, ...]
    target: PacingTarget
    latent_steps: Optional[Tuple[StepPositions, ...]] = None
    compression: Optional[int] = None

    def __post_init__(self):
        tau = _frozen_f64(self.tau, "tau", ndim=1)
        _set(self, tau=tau, steps=tuple(self.steps))
        t = tau.shape[0]
        if t < 2:
            raise DomainError("tau needs at least 2 frames")
        if tau[0] != 0.0 or tau[-1] != float(t - 1):
            raise DomainError("tau endpoints must be exactly 0 and T-1")
        if np.any(np.diff(tau) < 0):
            raise DomainError("tau must be nondecreasing")
        if not self.steps:
            raise DomainError("schedule needs at least one diffusion step")
        ramp = np.arange(t, dtype=np.float64)
        alphas = self.band_schedule.strengths
        for step in self.steps:
            if len(step.positions) != self.band_schedule.band_count:
                raise DomainError("each step needs one position vector per band")
            gamma = _decay(step.t_norm)
            for alpha, vec in zip(alphas, step.positions):
                if vec.shape[0] != t:
                    raise DomainError("position vectors must have length T")
                blend = ramp + (alpha * gamma) * (tau - ramp)
                if np.max(np.abs(vec - blend)) > _POSITION_TOL:
                    raise DomainError("position vector does not match the band blend formula")
                if np.any(np.diff(vec) < -_POSITION_TOL):
                    raise DomainError("position vector must be nondecreasing")
                if vec[0] != 0.0 or vec[-1] != float(t - 1):
                    raise DomainError("position vector endpoints must be exactly 0 and T-1")
        if (self.compression is None) != (self.latent_steps is None):
            raise DomainError("latent_steps and compression must be given together")
        if self.compression is not None:
            if self.compression < 1:
                raise DomainError("compression must be a positive integer")
            if (t - 1) % self.compression != 0:
                raise DomainError(
                    f"frame count {t} is not 1 mod compression {self.compression}"
                )
            latent_len = (t - 1) // self.compression + 1
            latent = tuple(self.latent_steps)
            _set(self, latent_steps=latent)
            if len(latent) != len(self.steps):
                raise DomainError("latent_steps must mirror steps one-to-one")
            for step, latent_step in zip(self.steps, latent):
                if latent_step.t_norm != step.t_norm:
                    raise DomainError("latent step timesteps must mirror frame-level steps")
                if len(latent_step.positions) != self.band_schedule.band_count:
                    raise DomainError("each latent step needs one vector per band")
                for vec in latent_step.positions:
                    if vec.shape[0] != latent_len:
                        raise DomainError(
                            f"latent vectors must have length {latent_len}, got {vec.shape[0]}"
                        )
                    if np.any(np.diff(vec) < -_POSITION_TOL):
                        raise DomainError("latent position vector must be nondecreasing")

    @property
    def frame_count(self) -> int:
        return self.tau.shape[0]

    @property
    def diffusion_steps(self) -> Tuple[float, ...]:
        return tuple(step.t_norm for step in self.steps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WarpSchedule):
            return NotImplemented
        return (
            np.array_equal(self.tau, other.tau)
            and self.band_schedule == other.band_schedule
            and self.steps == other.steps
            and self.target == other.target
            and self.latent_steps == other.latent_steps
            and self.compression == other.compression
        )


@dataclass(frozen=True)
class Segment:
    """A line fit over the inclusive index range [start, end]."""

    start: int
    end: int
    slope: float
    intercept: float
    sse: float

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise DomainError(f"segment must span at least two frames, got [{self.start}, {self.end}]")
        for name in ("slope", "intercept", "sse"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"segment {name} must be finite")
        if self.sse < 0:
            raise DomainError("segment sse must be nonnegative")


@dataclass(frozen=True)
class SegmentationResult:
    """A tight partition into approximately linear segments.

    Consecutive segments share their boundary index: the end of segment k
    is the start of segment k+1, the first starts at 0 and the last ends
    at T-1.
    """

    segment_count: int
    segments: Tuple[Segment, ...]
    penalty: float

    def __post_init__(self):
        _set(self, segments=tuple(self.segments))
        if self.segment_count != len(self.segments) or self.segment_count < 1:
            raise DomainError("segment_count must match the number of segments")
        if not (self.penalty >= 0 and math.isfinite(self.penalty)):
            raise DomainError(f"penalty must be nonnegative, got {self.penalty!r}")
        if self.segments[0].start != 0:
            raise DomainError("first segment must start at frame 0")
        for prev, cur in zip(self.segments, self.segments[1:]):
            if cur.start != prev.end:
                raise DomainError("segments must chain tightly (next start = previous end)")

    @property
    def frame_count(self) -> int:
        return self.segments[-1].end + 1

    @property
    def breakpoints(self) -> Tuple[int, ...]:
        return (0,) + tuple(seg.end for seg in self.segments)


@dataclass(frozen=True)
class Keyframe:
    """A source frame index and the output time it should land on."""

    source_frame: int
    target_time: int

    def __post_init__(self):
        if self.source_frame < 0 or self.target_time < 0:
            raise DomainError("keyframe indices must be nonnegative")


@dataclass(frozen=True)
class Clip:
    """A source segment span and the output length allocated to it."""

    start_frame: int
    end_frame: int
    length: int

    def __post_init__(self):
        if not 0 <= self.start_frame < self.end_frame:
            raise DomainError("clip must span at least two source frames")
        if self.length < 1:
            raise DomainError("clip length must be positive")


@dataclass(frozen=True)
class RegenPlan:
    """Regeneration instructions for keyframe- or clip-conditioned generators."""

    keyframes: Tuple[Keyframe, ...]
    clips: Tuple[Clip, ...]
    total_length: int

    def __post_init__(self):
        _set(self, keyframes=tuple(self.keyframes), clips=tuple(self.clips))
        if self.total_length < 1:
            raise DomainError("total_length must be positive")
        if not self.keyframes and not self.clips:
            raise DomainError("a plan needs keyframes or clips")
        if self.keyframes:
            if self.keyframes[0].target_time != 0:
                raise DomainError("first keyframe target time must be 0")
            for prev, cur in zip(self.keyframes, self.keyframes[1:]):
                if cur.source_frame <= prev.source_frame:
                    raise DomainError("keyframe source frames must strictly increase")
                if cur.target_time < prev.target_time:
                    raise DomainError("keyframe target times must be nondecreasing")
            if any(k.target_time >= self.total_length for k in self.keyframes):
                raise DomainError("keyframe target times must lie inside [0, total_length)")
        if self.clips:
            for prev, cur in zip(self.clips, self.clips[1:]):
                if cur.start_frame != prev.end_frame:
                    raise DomainError("clips must chain (next start = previous end)")
            if sum(c.length for c in self.clips) != self.total_length:
                raise DomainError("clip lengths must sum to total_length")


@dataclass(frozen=True, eq=False)
class SyntheticTruth:
    """Ground-truth angular positions for a synthetic rotation sequence."""

    theta: np.ndarray
    profile: str
    rate: Optional[float] = None

    def __post_init__(self):
        theta = _frozen_f64(self.theta, "theta", ndim=1)
        _set(self, theta=theta)
        if theta.shape[0] < 2:
            raise DomainError("theta needs at least 2 frames")
        if np.any(np.diff(theta) < 0):
            raise DomainError("theta must be nondecreasing")
        if theta[-1] - theta[0] > math.pi + 1e-12:
            raise DomainError("theta span must not exceed pi (distances become ambiguous)")
        if self.profile not in ("constant", "exp_rise", "exp_fall"):
            raise DomainError(f"unknown velocity profile {self.profile!r}")

    @property
    def frame_count(self) -> int:
        return self.theta.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SyntheticTruth):
            return NotImplemented
        return (
            np.array_equal(self.theta, other.theta)
            and self.profile == other.profile
            and self.rate == other.rate
        )
