"""spfkit: semantic pacing analysis and retiming schedules.

Fits a semantic progress curve from per-frame embeddings, diagnoses
uneven pacing, and emits retiming artifacts (warped position schedules,
segmentation-based regeneration plans, pacing scores) for external
video-generation pipelines.
"""

from .artifacts import parse_artifact, read_artifact, serialize_artifact, write_artifact
from .errors import (
    ConvergenceError,
    DegenerateCurveError,
    DomainError,
    FormatError,
    PlanningError,
    SpfkitError,
    TruncatedFileError,
)
from .fit import (
    fit_curve,
    fit_spf,
    invert_spf,
    linearity_score,
    monotone_project,
    normalize_spf,
)
from .graph import angular_distance, build_pair_graph, normalize_embeddings
from .segment import auto_penalty, build_plan, plan_clips, plan_keyframes, segmented_least_squares
from .spf1 import read_embedding_file, write_embedding_file
from .svgplot import plot_schedule, plot_spf
from .synth import evaluate_recovery, generate_rotation, run_refinement_loop, simulate_generator
from .types import (
    BandSchedule,
    Clip,
    DistanceGraph,
    EmbeddingSequence,
    FitConfig,
    GraphSummary,
    Keyframe,
    PacingTarget,
    PairConstraint,
    RegenPlan,
    Segment,
    SegmentationResult,
    SpfCurve,
    StepPositions,
    SyntheticTruth,
    WarpSchedule,
)
from .warp import (
    band_strengths,
    blend_positions,
    build_schedule,
    compute_tau,
    latent_sample_locations,
    map_to_latent,
    refine_positions,
    timestep_decay,
)

__version__ = "0.1.0"
