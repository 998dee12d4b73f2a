import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest

import spfkit
from spfkit import (
    Clip,
    FitConfig,
    FormatError,
    GraphSummary,
    Keyframe,
    PacingTarget,
    RegenPlan,
    Segment,
    SegmentationResult,
    SpfCurve,
    parse_artifact,
    serialize_artifact,
)

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def sample_curve():
    return SpfCurve(
        raw=[-0.4, -0.1, 0.5],
        normalized=[0.0, 1.0 / 3.0, 1.0],
        fit_config=FitConfig(),
        graph_summary=GraphSummary(30, 10.0, 1.0, "siglip"),
        linearity_score=spfkit.linearity_score(np.array([0.0, 1.0 / 3.0, 1.0])),
    )


def sample_schedule():
    s_hat = np.linspace(0.0, 1.0, 9)
    return spfkit.build_schedule(
        s_hat,
        PacingTarget.exp_rise(3.0),
        band_count=3,
        timesteps=(1.0, 0.5),
        compression=4,
    )


def sample_segmentation():
    return spfkit.segmented_least_squares(np.array([0.0, 0.1, 0.2, 0.8, 0.9, 1.0]), 0.01)


def sample_plans():
    s_hat = np.linspace(0.0, 1.0, 6)
    seg = sample_segmentation()
    return (
        RegenPlan(
            keyframes=tuple(Keyframe(b, t) for b, t in [(0, 0), (3, 50), (5, 99)]),
            clips=(),
            total_length=100,
        ),
        RegenPlan(
            keyframes=(),
            clips=(Clip(0, 2, 40), Clip(2, 5, 60)),
            total_length=100,
        ),
    )


def all_samples():
    return [sample_curve(), sample_schedule(), sample_segmentation(), *sample_plans()]


@pytest.mark.parametrize("idx", range(5))
def test_round_trip_equality(idx):
    artifact = all_samples()[idx]
    assert parse_artifact(serialize_artifact(artifact)) == artifact


@pytest.mark.parametrize("idx", range(5))
def test_serialization_deterministic(idx):
    artifact = all_samples()[idx]
    text1 = serialize_artifact(artifact)
    text2 = serialize_artifact(parse_artifact(text1))
    assert text1.encode() == text2.encode()


def test_trivial_curve_rendering():
    curve = SpfCurve(
        raw=[-0.5, 0.5],
        normalized=[0.0, 1.0],
        fit_config=FitConfig(),
        graph_summary=GraphSummary(30, 10.0, 1.0, ""),
        linearity_score=1.0,
    )
    assert '"normalized":[0.0,1.0]' in serialize_artifact(curve)


def test_unknown_schema_rejected():
    with pytest.raises(FormatError, match="unknown"):
        parse_artifact(json.dumps({"schema": "spfkit/mystery/v1"}))


def test_not_json_rejected():
    with pytest.raises(FormatError):
        parse_artifact("not json at all")


def test_malformed_artifact_rejected():
    with pytest.raises(FormatError, match="malformed"):
        parse_artifact(json.dumps({"schema": "spfkit/spf-curve/v1", "raw": [1, 2]}))


SCHEMA_FILES = {
    "spfkit/spf-curve/v1": "spf_curve.schema.json",
    "spfkit/warp-schedule/v1": "warp_schedule.schema.json",
    "spfkit/segmentation/v1": "segmentation.schema.json",
    "spfkit/regen-plan/v1": "regen_plan.schema.json",
}


@pytest.mark.parametrize("idx", range(5))
def test_artifacts_validate_against_published_schemas(idx):
    artifact = all_samples()[idx]
    obj = json.loads(serialize_artifact(artifact))
    schema_path = SCHEMA_DIR / SCHEMA_FILES[obj["schema"]]
    schema = json.loads(schema_path.read_text())
    jsonschema.validate(obj, schema)


def test_file_round_trip(tmp_path):
    for artifact in all_samples():
        path = tmp_path / "artifact.json"
        spfkit.write_artifact(artifact, path)
        assert spfkit.read_artifact(path) == artifact
        first = path.read_bytes()
        spfkit.write_artifact(spfkit.read_artifact(path), path)
        assert path.read_bytes() == first
