"""JSON serialization for pipeline artifacts.

Each artifact kind carries a ``schema`` version tag. Serialization is
deterministic: fixed key order, compact separators, floats rendered as
the shortest decimal that round-trips (Python's float repr), so equal
values always produce byte-identical text.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np

from .errors import FormatError
from .types import (
    BandSchedule,
    Clip,
    FitConfig,
    GraphSummary,
    Keyframe,
    PacingTarget,
    RegenPlan,
    Segment,
    SegmentationResult,
    SpfCurve,
    StepPositions,
    WarpSchedule,
)

SPF_CURVE_SCHEMA = "spfkit/spf-curve/v1"
WARP_SCHEDULE_SCHEMA = "spfkit/warp-schedule/v1"
SEGMENTATION_SCHEMA = "spfkit/segmentation/v1"
REGEN_PLAN_SCHEMA = "spfkit/regen-plan/v1"

Artifact = Union[SpfCurve, WarpSchedule, SegmentationResult, RegenPlan]
PathLike = Union[str, Path]


def _floats(values) -> list:
    return [float(v) for v in values]


def _target_dict(target: PacingTarget) -> dict:
    return {
        "kind": target.kind,
        "rate": target.rate,
        "knots": [list(k) for k in target.knots] if target.knots is not None else None,
    }


def _target_from(obj: dict) -> PacingTarget:
    knots = obj.get("knots")
    return PacingTarget(
        kind=obj["kind"],
        rate=obj.get("rate"),
        knots=tuple((float(u), float(v)) for u, v in knots) if knots is not None else None,
    )


def _step_dicts(steps) -> list:
    return [
        {"t_norm": float(s.t_norm), "positions": [_floats(p) for p in s.positions]}
        for s in steps
    ]


def _steps_from(items) -> tuple:
    return tuple(
        StepPositions(
            t_norm=float(s["t_norm"]),
            positions=tuple(np.asarray(p, dtype=np.float64) for p in s["positions"]),
        )
        for s in items
    )


def _to_dict(artifact: Artifact) -> dict:
    if isinstance(artifact, SpfCurve):
        return {
            "schema": SPF_CURVE_SCHEMA,
            "frames": artifact.frame_count,
            "raw": _floats(artifact.raw),
            "normalized": _floats(artifact.normalized),
            "fit_config": {
                "lambda": artifact.fit_config.lambda_,
                "solver_tolerance": artifact.fit_config.solver_tolerance,
                "max_solver_iterations": artifact.fit_config.max_solver_iterations,
            },
            "graph_summary": {
                "window": artifact.graph_summary.window,
                "sigma": artifact.graph_summary.sigma,
                "power": artifact.graph_summary.power,
                "source_tag": artifact.graph_summary.source_tag,
            },
            "linearity_score": artifact.linearity_score,
        }
    if isinstance(artifact, WarpSchedule):
        return {
            "schema": WARP_SCHEDULE_SCHEMA,
            "tau": _floats(artifact.tau),
            "bands": [
                {"band": b, "alpha": float(a)}
                for b, a in enumerate(artifact.band_schedule.strengths)
            ],
            "steps": _step_dicts(artifact.steps),
            "latent": _step_dicts(artifact.latent_steps) if artifact.latent_steps else None,
            "target": _target_dict(artifact.target),
            "config": {
                "frames": artifact.frame_count,
                "band_count": artifact.band_schedule.band_count,
                "alpha_low": artifact.band_schedule.alpha_low,
                "alpha_high": artifact.band_schedule.alpha_high,
                "kappa": artifact.band_schedule.kappa,
                "compression": artifact.compression,
            },
        }
    if isinstance(artifact, SegmentationResult):
        return {
            "schema": SEGMENTATION_SCHEMA,
            "frames": artifact.frame_count,
            "segment_count": artifact.segment_count,
            "segments": [
                {
                    "start": s.start,
                    "end": s.end,
                    "slope": s.slope,
                    "intercept": s.intercept,
                    "sse": s.sse,
                }
                for s in artifact.segments
            ],
            "penalty": artifact.penalty,
        }
    if isinstance(artifact, RegenPlan):
        return {
            "schema": REGEN_PLAN_SCHEMA,
            "keyframes": [
                {"source_frame": k.source_frame, "target_time": k.target_time}
                for k in artifact.keyframes
            ],
            "clips": [
                {"start_frame": c.start_frame, "end_frame": c.end_frame, "length": c.length}
                for c in artifact.clips
            ],
            "total_length": artifact.total_length,
        }
    raise TypeError(f"not a serializable artifact: {type(artifact).__name__}")


def serialize_artifact(artifact: Artifact) -> str:
    """Render an artifact as deterministic JSON text."""
    return json.dumps(_to_dict(artifact), ensure_ascii=False, separators=(",", ":"))


def parse_artifact(text: str) -> Artifact:
    """Parse JSON text produced by :func:`serialize_artifact`."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"artifact is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "schema" not in obj:
        raise FormatError("artifact JSON must be an object with a schema field")
    schema = obj["schema"]
    try:
        if schema == SPF_CURVE_SCHEMA:
            cfg = obj["fit_config"]
            summary = obj["graph_summary"]
            return SpfCurve(
                raw=np.asarray(obj["raw"], dtype=np.float64),
                normalized=np.asarray(obj["normalized"], dtype=np.float64),
                fit_config=FitConfig(
                    lambda_=float(cfg["lambda"]),
                    solver_tolerance=float(cfg["solver_tolerance"]),
                    max_solver_iterations=int(cfg["max_solver_iterations"]),
                ),
                graph_summary=GraphSummary(
                    window=int(summary["window"]),
                    sigma=float(summary["sigma"]),
                    power=float(summary["power"]),
                    source_tag=str(summary["source_tag"]),
                ),
                linearity_score=float(obj["linearity_score"]),
            )
        if schema == WARP_SCHEDULE_SCHEMA:
            cfg = obj["config"]
            band_count = int(cfg["band_count"])
            alphas = [None] * band_count
            for entry in obj["bands"]:
                alphas[int(entry["band"])] = float(entry["alpha"])
            return WarpSchedule(
                tau=np.asarray(obj["tau"], dtype=np.float64),
                band_schedule=BandSchedule(
                    band_count=band_count,
                    alpha_low=float(cfg["alpha_low"]),
                    alpha_high=float(cfg["alpha_high"]),
                    kappa=float(cfg["kappa"]),
                    strengths=tuple(alphas),
                ),
                steps=_steps_from(obj["steps"]),
                target=_target_from(obj["target"]),
                latent_steps=_steps_from(obj["latent"]) if obj.get("latent") else None,
                compression=int(cfg["compression"]) if cfg.get("compression") else None,
            )
        if schema == SEGMENTATION_SCHEMA:
            return SegmentationResult(
                segment_count=int(obj["segment_count"]),
                segments=tuple(
                    Segment(
                        start=int(s["start"]),
                        end=int(s["end"]),
                        slope=float(s["slope"]),
                        intercept=float(s["intercept"]),
                        sse=float(s["sse"]),
                    )
                    for s in obj["segments"]
                ),
                penalty=float(obj["penalty"]),
            )
        if schema == REGEN_PLAN_SCHEMA:
            return RegenPlan(
                keyframes=tuple(
                    Keyframe(source_frame=int(k["source_frame"]), target_time=int(k["target_time"]))
                    for k in obj["keyframes"]
                ),
                clips=tuple(
                    Clip(
                        start_frame=int(c["start_frame"]),
                        end_frame=int(c["end_frame"]),
                        length=int(c["length"]),
                    )
                    for c in obj["clips"]
                ),
                total_length=int(obj["total_length"]),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {schema!r} artifact: {exc}") from exc
    raise FormatError(f"unknown artifact schema {schema!r}")


def write_artifact(artifact: Artifact, path: PathLike) -> None:
    Path(path).write_text(serialize_artifact(artifact) + "\n", encoding="utf-8")


def read_artifact(path: PathLike) -> Artifact:
    return parse_artifact(Path(path).read_text(encoding="utf-8"))
