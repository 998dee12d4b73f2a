import math

import numpy as np
import pytest

from spfkit import (
    BandSchedule,
    Clip,
    DistanceGraph,
    DomainError,
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
    SyntheticTruth,
)


def unit_rows(t, d, seed=0):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((t, d))
    return v / np.linalg.norm(v, axis=1)[:, None]


class TestEmbeddingSequence:
    def test_valid(self):
        seq = EmbeddingSequence(vectors=unit_rows(4, 3), normalized=True, source_tag="x")
        assert seq.frame_count == 4 and seq.dim == 3

    def test_too_few_frames(self):
        with pytest.raises(DomainError):
            EmbeddingSequence(vectors=unit_rows(4, 3)[:1])

    def test_zero_row_names_index(self):
        v = unit_rows(3, 2).copy()
        v[1] = 0.0
        with pytest.raises(DomainError, match="frame 1"):
            EmbeddingSequence(vectors=v)

    def test_normalized_flag_checked(self):
        with pytest.raises(DomainError):
            EmbeddingSequence(vectors=2.0 * unit_rows(3, 2), normalized=True)

    def test_non_finite_rejected(self):
        v = unit_rows(3, 2).copy()
        v[0, 0] = np.nan
        with pytest.raises(DomainError):
            EmbeddingSequence(vectors=v)

    def test_bad_fps(self):
        with pytest.raises(DomainError):
            EmbeddingSequence(vectors=unit_rows(3, 2), fps=-1.0)

    def test_vectors_read_only(self):
        seq = EmbeddingSequence(vectors=unit_rows(3, 2))
        with pytest.raises(ValueError):
            seq.vectors[0, 0] = 5.0


class TestPairConstraintAndGraph:
    def test_pair_ordering_enforced(self):
        with pytest.raises(DomainError):
            PairConstraint(i=1, j=1, distance=0.1, weight=0.5)
        with pytest.raises(DomainError):
            PairConstraint(i=0, j=1, distance=0.1, weight=0.5)

    def test_weight_range(self):
        with pytest.raises(DomainError):
            PairConstraint(i=2, j=0, distance=0.1, weight=0.0)
        with pytest.raises(DomainError):
            PairConstraint(i=2, j=0, distance=0.1, weight=1.5)

    def graph(self, **overrides):
        kwargs = dict(
            frame_count=3,
            i_indices=[1, 2, 2],
            j_indices=[0, 0, 1],
            distances=[0.1, 0.2, 0.1],
            weights=[
                math.exp(-1 / 200),
                math.exp(-4 / 200),
                math.exp(-1 / 200),
            ],
            window=2,
            sigma=10.0,
            power=1.0,
        )
        kwargs.update(overrides)
        return DistanceGraph(**kwargs)

    def test_valid_graph(self):
        g = self.graph()
        assert g.pair_count == 3
        assert g.pairs[0] == PairConstraint(1, 0, 0.1, math.exp(-1 / 200))

    def test_gap_beyond_window(self):
        with pytest.raises(DomainError, match="window"):
            self.graph(window=1)

    def test_duplicate_pair(self):
        with pytest.raises(DomainError, match="duplicate"):
            self.graph(
                i_indices=[1, 1, 2],
                j_indices=[0, 0, 1],
                weights=[math.exp(-1 / 200)] * 2 + [math.exp(-1 / 200)],
            )

    def test_distance_cap(self):
        with pytest.raises(DomainError, match="pi"):
            self.graph(distances=[4.0, 0.2, 0.1])

    def test_wrong_weight_formula(self):
        with pytest.raises(DomainError, match="weights"):
            self.graph(weights=[0.9, 0.9, 0.9])


class TestFitConfig:
    def test_lambda_positive(self):
        with pytest.raises(DomainError, match="lambda"):
            FitConfig(lambda_=0.0)

    def test_tolerance_window(self):
        with pytest.raises(DomainError):
            FitConfig(solver_tolerance=1e-5)
        with pytest.raises(DomainError):
            FitConfig(solver_tolerance=0.0)
        assert FitConfig(solver_tolerance=1e-300).solver_tolerance == 1e-300


class TestSpfCurve:
    def make(self, raw, normalized, score):
        return SpfCurve(
            raw=raw,
            normalized=normalized,
            fit_config=FitConfig(),
            graph_summary=GraphSummary(30, 10.0, 1.0, "t"),
            linearity_score=score,
        )

    def test_valid(self):
        curve = self.make([-0.5, 0.0, 0.5], [0.0, 0.5, 1.0], 1.0)
        assert curve.frame_count == 3

    def test_gauge_violation(self):
        with pytest.raises(DomainError, match="gauge"):
            self.make([1.0, 1.0, 1.0], [0.0, 0.5, 1.0], 1.0)

    def test_endpoints_pinned(self):
        with pytest.raises(DomainError):
            self.make([-0.5, 0.0, 0.5], [0.0, 0.5, 0.9], 1.0)

    def test_monotone_required(self):
        with pytest.raises(DomainError):
            self.make([-0.5, 0.0, 0.5], [0.0, -0.1, 1.0], 1.0)

    def test_score_must_match_curve(self):
        with pytest.raises(DomainError, match="linearity"):
            self.make([-0.5, 0.0, 0.5], [0.0, 0.5, 1.0], 0.5)


class TestPacingTarget:
    def test_linear_identity(self):
        g = PacingTarget.linear()
        assert g(0.0) == 0.0 and g(1.0) == 1.0 and g(0.25) == 0.25

    def test_exp_endpoints_exact(self):
        for g in (PacingTarget.exp_rise(3.0), PacingTarget.exp_fall(3.0)):
            assert g(0.0) == 0.0 and g(1.0) == 1.0

    def test_exp_rise_midpoint(self):
        # (e^1.5 - 1) / (e^3 - 1), evaluated directly
        assert PacingTarget.exp_rise(3.0)(0.5) == pytest.approx(0.18242552380635635, abs=1e-12)

    def test_rate_required(self):
        with pytest.raises(DomainError):
            PacingTarget("exp_rise")

    def test_table_sorted_deduped(self):
        g = PacingTarget.table([(1.0, 1.0), (0.5, 0.25), (0.0, 0.0), (0.5, 0.25)])
        assert g.knots == ((0.0, 0.0), (0.5, 0.25), (1.0, 1.0))
        assert g(0.25) == pytest.approx(0.125)

    def test_table_needs_pinned_endpoints(self):
        with pytest.raises(DomainError):
            PacingTarget.table([(0.1, 0.0), (1.0, 1.0)])

    def test_table_conflicting_knots(self):
        with pytest.raises(DomainError, match="conflicting"):
            PacingTarget.table([(0.0, 0.0), (0.5, 0.2), (0.5, 0.3), (1.0, 1.0)])

    def test_table_monotone(self):
        with pytest.raises(DomainError):
            PacingTarget.table([(0.0, 0.0), (0.4, 0.8), (0.6, 0.5), (1.0, 1.0)])

    def test_domain_checked(self):
        with pytest.raises(DomainError):
            PacingTarget.linear()(1.5)


class TestBandSchedule:
    def test_formula_enforced(self):
        with pytest.raises(DomainError, match="schedule"):
            BandSchedule(2, 0.77, 0.20, 4.0, (0.77, 0.5))

    def test_single_band(self):
        sched = BandSchedule(1, 0.77, 0.20, 4.0, (0.77,))
        assert sched.strengths == (0.77,)

    def test_alpha_range(self):
        with pytest.raises(DomainError):
            BandSchedule(1, 1.2, 0.2, 4.0, (1.2,))


class TestSegmentation:
    def test_tight_chain_enforced(self):
        with pytest.raises(DomainError, match="chain"):
            SegmentationResult(
                segment_count=2,
                segments=(
                    Segment(0, 4, 0.1, 0.0, 0.0),
                    Segment(5, 9, 0.1, 0.0, 0.0),
                ),
                penalty=1.0,
            )

    def test_breakpoints(self):
        seg = SegmentationResult(
            segment_count=2,
            segments=(Segment(0, 4, 0.1, 0.0, 0.0), Segment(4, 9, 0.1, 0.0, 0.0)),
            penalty=1.0,
        )
        assert seg.breakpoints == (0, 4, 9)
        assert seg.frame_count == 10

    def test_first_must_start_at_zero(self):
        with pytest.raises(DomainError):
            SegmentationResult(
                segment_count=1, segments=(Segment(1, 5, 0.0, 0.0, 0.0),), penalty=0.0
            )


class TestRegenPlan:
    def test_keyframe_rules(self):
        plan = RegenPlan(
            keyframes=(Keyframe(0, 0), Keyframe(5, 42), Keyframe(9, 43)),
            clips=(),
            total_length=100,
        )
        assert plan.total_length == 100
        with pytest.raises(DomainError):
            RegenPlan(keyframes=(Keyframe(0, 1),), clips=(), total_length=10)

    def test_clip_conservation(self):
        with pytest.raises(DomainError, match="sum"):
            RegenPlan(
                keyframes=(),
                clips=(Clip(0, 4, 30), Clip(4, 9, 69)),
                total_length=100,
            )

    def test_clip_chaining(self):
        with pytest.raises(DomainError, match="chain"):
            RegenPlan(
                keyframes=(),
                clips=(Clip(0, 4, 30), Clip(5, 9, 70)),
                total_length=100,
            )

    def test_needs_content(self):
        with pytest.raises(DomainError):
            RegenPlan(keyframes=(), clips=(), total_length=10)


class TestSyntheticTruth:
    def test_span_capped_at_pi(self):
        with pytest.raises(DomainError, match="pi"):
            SyntheticTruth(theta=np.array([0.0, 2.0, 4.0]), profile="constant")

    def test_monotone_required(self):
        with pytest.raises(DomainError):
            SyntheticTruth(theta=np.array([0.0, 0.5, 0.3]), profile="constant")
