"""Command-line interface: the pipeline as composable file-to-file subcommands.

Exit codes: 0 success, 2 domain error (bad values or preconditions),
3 I/O or file-format error, 4 solver convergence failure. Diagnostics are
single lines on stderr. Every subcommand is a pure function of its flags
and input files.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import artifacts, segment, svgplot, synth, warp
from .errors import ConvergenceError, DomainError, FormatError
from .fit import FitConfig, fit_curve, linearity_score
from .graph import DEFAULT_POWER, DEFAULT_SIGMA, DEFAULT_WINDOW, build_pair_graph, normalize_embeddings
from .spf1 import read_embedding_file, write_embedding_file
from .types import PacingTarget, SegmentationResult, SpfCurve, SyntheticTruth, WarpSchedule

REFINE_TRACE_SCHEMA = "spfkit/refine-trace/v1"

_PROFILE_FLAGS = {"constant": "constant", "exp-rise": "exp_rise", "exp-fall": "exp_fall"}


def _parse_target(text: str) -> PacingTarget:
    if text == "linear":
        return PacingTarget.linear()
    for prefix, ctor in (("exp-rise:", PacingTarget.exp_rise), ("exp-fall:", PacingTarget.exp_fall)):
        if text.startswith(prefix):
            try:
                return ctor(float(text[len(prefix) :]))
            except ValueError as exc:
                raise DomainError(f"bad target rate in {text!r}: {exc}") from exc
    if text.startswith("table:"):
        path = text[len("table:") :]
        try:
            knots = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise FormatError(f"target table {path!r} is not valid JSON: {exc}") from exc
        return PacingTarget.table(tuple((float(u), float(v)) for u, v in knots))
    raise DomainError(
        f"unknown target {text!r}; use linear, exp-rise:R, exp-fall:R or table:PATH"
    )


def _parse_steps(text: str) -> tuple:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise DomainError(f"bad timestep list {text!r}: {exc}") from exc
    if not values:
        raise DomainError("at least one diffusion timestep is required")
    return values


def _load_curve(path: str) -> SpfCurve:
    loaded = artifacts.read_artifact(path)
    if not isinstance(loaded, SpfCurve):
        raise DomainError(f"{path} does not hold a progress-curve artifact")
    return loaded


def _write_truth_csv(truth: SyntheticTruth, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "theta"])
        for k, theta in enumerate(truth.theta):
            writer.writerow([k, repr(float(theta))])


def _read_truth_csv(path: str) -> SyntheticTruth:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["k", "theta"]:
            raise FormatError(f"{path} is not a truth CSV (expected header k,theta)")
        theta = [float(row[1]) for row in reader if row]
    # the CSV stores only theta; the profile label is carrier metadata here
    return SyntheticTruth(theta=np.asarray(theta), profile="constant")


def _cmd_fit(args) -> int:
    seq = normalize_embeddings(read_embedding_file(args.embeddings))
    graph = build_pair_graph(seq, window=args.window, sigma=args.sigma, power=args.power)
    cfg = FitConfig(
        lambda_=getattr(args, "lambda"),
        solver_tolerance=args.tolerance,
        max_solver_iterations=args.max_iterations,
    )
    curve = fit_curve(graph, cfg, source_tag=seq.source_tag)
    artifacts.write_artifact(curve, args.out)
    print(f"linearity_score={curve.linearity_score!r}")
    return 0


def _cmd_warp(args) -> int:
    curve = _load_curve(args.spf)
    schedule = warp.build_schedule(
        curve.normalized,
        target=_parse_target(args.target),
        band_count=args.bands,
        alpha_low=args.alpha_low,
        alpha_high=args.alpha_high,
        kappa=args.kappa,
        timesteps=_parse_steps(args.steps),
        compression=args.compression,
    )
    artifacts.write_artifact(schedule, args.out)
    return 0


def _cmd_segment(args) -> int:
    curve = _load_curve(args.spf)
    if args.penalty == "auto":
        penalty = segment.auto_penalty(curve.normalized)
    else:
        try:
            penalty = float(args.penalty)
        except ValueError as exc:
            raise DomainError(f"penalty must be a number or 'auto', got {args.penalty!r}") from exc
    result = segment.segmented_least_squares(curve.normalized, penalty)
    artifacts.write_artifact(result, args.out)
    print(f"segments={result.segment_count}")
    return 0


def _cmd_plan(args) -> int:
    seg_artifact = artifacts.read_artifact(args.segments)
    if not isinstance(seg_artifact, SegmentationResult):
        raise DomainError(f"{args.segments} does not hold a segmentation artifact")
    curve = _load_curve(args.spf)
    plan = segment.build_plan(curve.normalized, seg_artifact, args.frames, args.mode)
    artifacts.write_artifact(plan, args.out)
    return 0


def _cmd_synth(args) -> int:
    seq, truth = synth.generate_rotation(
        frame_count=args.frames,
        dim=args.dim,
        profile=_PROFILE_FLAGS[args.profile],
        total_angle=args.total_angle,
        rate=args.rate,
        noise=args.noise,
        seed=args.seed,
    )
    write_embedding_file(seq, args.out)
    if args.truth_out:
        _write_truth_csv(truth, args.truth_out)
    return 0


def _cmd_refine_sim(args) -> int:
    _, truth = synth.generate_rotation(
        frame_count=args.frames,
        dim=args.dim,
        profile=_PROFILE_FLAGS[args.profile],
        total_angle=args.total_angle,
        rate=args.rate,
    )
    trace = synth.run_refinement_loop(
        truth,
        iterations=args.iterations,
        gain=args.gain,
        alpha=args.alpha,
        window=args.window,
        sigma=args.sigma,
        power=args.power,
        fit_config=FitConfig(lambda_=getattr(args, "lambda")),
    )
    payload = {
        "schema": REFINE_TRACE_SCHEMA,
        "profile": trace.profile,
        "rate": trace.rate,
        "frames": trace.frame_count,
        "gain": trace.gain,
        "alpha": trace.alpha,
        "iterations": trace.iterations,
        "linearity_scores": list(trace.scores),
    }
    Path(args.out).write_text(
        json.dumps(payload, ensure_ascii=False, separators=(",", ":")) + "\n", encoding="utf-8"
    )
    print(f"final_linearity_score={trace.scores[-1]!r}")
    return 0


def _cmd_score(args) -> int:
    curve = _load_curve(args.spf)
    print(f"linearity_score={linearity_score(curve.normalized)!r}")
    if args.truth:
        truth = _read_truth_csv(args.truth)
        rmse, pearson = synth.evaluate_recovery(curve.normalized, truth)
        print(f"rmse={rmse!r}")
        print(f"pearson_r={pearson!r}")
    return 0


def _cmd_plot(args) -> int:
    if args.schedule:
        if args.spf or args.truth or args.segments:
            raise DomainError("--schedule cannot be combined with curve inputs")
        loaded = artifacts.read_artifact(args.schedule)
        if not isinstance(loaded, WarpSchedule):
            raise DomainError(f"{args.schedule} does not hold a warp-schedule artifact")
        svgplot.plot_schedule(loaded, args.out)
        return 0
    if not args.spf:
        raise DomainError("plot needs --spf (one or more) or --schedule")
    curves = [(Path(path).stem, _load_curve(path)) for path in args.spf]
    truth = _read_truth_csv(args.truth) if args.truth else None
    segmentation = None
    if args.segments:
        loaded = artifacts.read_artifact(args.segments)
        if not isinstance(loaded, SegmentationResult):
            raise DomainError(f"{args.segments} does not hold a segmentation artifact")
        segmentation = loaded
    svgplot.plot_spf(curves, args.out, truth=truth, segmentation=segmentation)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spfkit",
        description="Semantic pacing analysis and retiming schedules",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("fit", help="fit a progress curve from an SPF1 embedding file",
                       formatter_class=fmt)
    p.add_argument("--embeddings", required=True, help="input SPF1 file")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="pair window W")
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA, help="locality weight scale")
    p.add_argument("--lambda", type=float, default=1e-2, help="regularization strength")
    p.add_argument("--power", type=float, default=DEFAULT_POWER, help="distance contrast power p")
    p.add_argument("--tolerance", type=float, default=1e-10, help="solver relative residual bound")
    p.add_argument("--max-iterations", type=int, default=50, help="solver refinement iteration cap")
    p.add_argument("--out", required=True, help="output curve JSON")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("warp", help="expand a curve into a retiming schedule", formatter_class=fmt)
    p.add_argument("--spf", required=True, help="input curve JSON")
    p.add_argument("--target", required=True,
                   help="pacing target: linear | exp-rise:R | exp-fall:R | table:PATH")
    p.add_argument("--bands", type=int, required=True, help="number of frequency bands B")
    p.add_argument("--alpha-low", type=float, default=warp.DEFAULT_ALPHA_LOW,
                   help="warp strength of the lowest band")
    p.add_argument("--alpha-high", type=float, default=warp.DEFAULT_ALPHA_HIGH,
                   help="warp strength floor of the highest band")
    p.add_argument("--kappa", type=float, default=warp.DEFAULT_KAPPA, help="band decay rate")
    p.add_argument("--steps", required=True,
                   help="comma-separated normalized diffusion timesteps, 1 = max noise")
    p.add_argument("--compression", type=int, default=warp.DEFAULT_COMPRESSION,
                   help="temporal latent compression factor")
    p.add_argument("--out", required=True, help="output schedule JSON")
    p.set_defaults(func=_cmd_warp)

    p = sub.add_parser("segment", help="partition a curve into linear segments",
                       formatter_class=fmt)
    p.add_argument("--spf", required=True, help="input curve JSON")
    p.add_argument("--penalty", default="auto",
                   help="per-segment complexity penalty, or 'auto' for variance-scaled")
    p.add_argument("--out", required=True, help="output segmentation JSON")
    p.set_defaults(func=_cmd_segment)

    p = sub.add_parser("plan", help="derive a regeneration plan from a segmentation",
                       formatter_class=fmt)
    p.add_argument("--segments", required=True, help="input segmentation JSON")
    p.add_argument("--spf", required=True, help="input curve JSON")
    p.add_argument("--mode", required=True, choices=("keyframes", "clips"),
                   help="keyframe-conditioned or first/last-frame clip output")
    p.add_argument("--frames", type=int, required=True, help="output frame count")
    p.add_argument("--out", required=True, help="output plan JSON")
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("synth", help="generate a synthetic rotation SPF1 file",
                       formatter_class=fmt)
    p.add_argument("--frames", type=int, default=100, help="frame count T")
    p.add_argument("--dim", type=int, default=8, help="embedding dimension d")
    p.add_argument("--profile", choices=sorted(_PROFILE_FLAGS), default="constant",
                   help="angular velocity profile")
    p.add_argument("--rate", type=float, default=synth.DEFAULT_RATE, help="exponential profile rate")
    p.add_argument("--total-angle", type=float, default=synth.DEFAULT_TOTAL_ANGLE,
                   help="total rotation in radians, at most pi")
    p.add_argument("--noise", type=float, default=0.0, help="isotropic noise level")
    p.add_argument("--seed", type=int, default=None, help="noise seed")
    p.add_argument("--out", required=True, help="output SPF1 file")
    p.add_argument("--truth-out", default=None, help="optional ground-truth CSV (k,theta)")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("refine-sim", help="run the simulated refinement loop",
                       formatter_class=fmt)
    p.add_argument("--profile", choices=sorted(_PROFILE_FLAGS), default="exp-rise",
                   help="angular velocity profile")
    p.add_argument("--rate", type=float, default=synth.DEFAULT_RATE, help="exponential profile rate")
    p.add_argument("--frames", type=int, default=100, help="frame count T")
    p.add_argument("--dim", type=int, default=8, help="embedding dimension d")
    p.add_argument("--total-angle", type=float, default=synth.DEFAULT_TOTAL_ANGLE,
                   help="total rotation in radians, at most pi")
    p.add_argument("--iterations", type=int, default=3, help="refinement iterations")
    p.add_argument("--gain", type=float, default=1.0, help="generator compliance in (0, 1]")
    p.add_argument("--alpha", type=float, default=1.0, help="correction step size")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="pair window W")
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA, help="locality weight scale")
    p.add_argument("--lambda", type=float, default=1e-2, help="regularization strength")
    p.add_argument("--power", type=float, default=DEFAULT_POWER, help="distance contrast power p")
    p.add_argument("--out", required=True, help="output trace JSON")
    p.set_defaults(func=_cmd_refine_sim)

    p = sub.add_parser("score", help="print scores for a fitted curve", formatter_class=fmt)
    p.add_argument("--spf", required=True, help="input curve JSON")
    p.add_argument("--truth", default=None, help="optional ground-truth CSV for recovery metrics")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("plot", help="render curves or a schedule as SVG", formatter_class=fmt)
    p.add_argument("--spf", action="append", default=None, help="curve JSON (repeatable)")
    p.add_argument("--truth", default=None, help="ground-truth CSV overlay")
    p.add_argument("--segments", default=None, help="segmentation JSON overlay")
    p.add_argument("--schedule", default=None, help="warp-schedule JSON (exclusive)")
    p.add_argument("--out", required=True, help="output SVG file")
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
