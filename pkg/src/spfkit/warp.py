"""Warped temporal position schedules for retiming a generator.

Turns a normalized progress curve into warped frame positions for a
target pacing, expands them into per-frequency-band schedules whose
strength decays across bands and across diffusion timesteps, supports
iterative refinement against a re-measured curve, and resamples frame
positions to the latent timeline of temporally compressed models.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .fit import _check_normalized_curve, invert_spf
from .types import BandSchedule, PacingTarget, StepPositions, WarpSchedule

DEFAULT_ALPHA_LOW = 0.77
DEFAULT_ALPHA_HIGH = 0.20
DEFAULT_KAPPA = 4.0
DEFAULT_COMPRESSION = 4
DEFAULT_REFINE_ITERATIONS = 3


def compute_tau(s_hat, target: PacingTarget) -> np.ndarray:
    """Warped frame positions: where to sample the input timeline.

    tau_k inverts the curve at the target progress g(k/(T-1)), so output
    frame k exhibits exactly the requested cumulative progress. Endpoints
    are pinned to 0 and T-1; the left-edge plateau rule would otherwise
    return the plateau start when the curve saturates at 1 early.
    """
    s_hat = _check_normalized_curve(s_hat)
    t = s_hat.shape[0]
    progress = target(np.arange(t, dtype=np.float64) / (t - 1))
    tau = invert_spf(s_hat, progress)
    tau[-1] = float(t - 1)
    return tau


def band_strengths(
    band_count: int,
    alpha_low: float = DEFAULT_ALPHA_LOW,
    alpha_high: float = DEFAULT_ALPHA_HIGH,
    kappa: float = DEFAULT_KAPPA,
) -> BandSchedule:
    """Per-band warp strengths decaying exponentially across bands.

    Band 0 is the lowest frequency and gets alpha_low exactly; higher
    bands decay toward alpha_high at rate kappa. One band uses alpha_low.
    """
    if band_count < 1:
        raise DomainError(f"band_count must be at least 1, got {band_count}")
    if band_count == 1:
        strengths: Tuple[float, ...] = (alpha_low,)
    else:
        span = alpha_low - alpha_high
        strengths = tuple(
            alpha_high + span * math.exp(-kappa * b / (band_count - 1))
            for b in range(band_count)
        )
    return BandSchedule(
        band_count=band_count,
        alpha_low=alpha_low,
        alpha_high=alpha_high,
        kappa=kappa,
        strengths=strengths,
    )


def timestep_decay(t_norm: float) -> float:
    """Warp-strength multiplier for a normalized diffusion timestep.

    (e^{3t} - 1) / (e^3 - 1): zero at no noise, one at maximum noise,
    strictly increasing, so correction concentrates early in denoising.
    """
    if not 0.0 <= t_norm <= 1.0:
        raise DomainError(f"normalized timestep must lie in [0, 1], got {t_norm!r}")
    return float(np.expm1(3.0 * t_norm) / np.expm1(3.0))


def blend_positions(tau: np.ndarray, schedule: BandSchedule, t_norm: float) -> StepPositions:
    """Blend identity time with tau per band at one diffusion timestep.

    p_t = (1 - a_b * gamma) * t + a_b * gamma * tau_t, computed as
    t + a_b*gamma*(tau_t - t) so the pinned endpoints stay exact.
    """
    tau = np.asarray(tau, dtype=np.float64)
    gamma = timestep_decay(t_norm)
    ramp = np.arange(tau.shape[0], dtype=np.float64)
    positions = tuple(ramp + (alpha * gamma) * (tau - ramp) for alpha in schedule.strengths)
    return StepPositions(t_norm=float(t_norm), positions=positions)


def refine_positions(
    tau_bands: Sequence[np.ndarray],
    s_hat,
    schedule: BandSchedule,
) -> Tuple[np.ndarray, ...]:
    """One refinement step against the curve measured from a regeneration.

    delta_k inverts the measured curve at linear progress and subtracts
    the identity; each band moves by its own strength: tau_b + a_b*delta.
    An exactly linear measured curve is a fixed point.
    """
    if len(tau_bands) != schedule.band_count:
        raise DomainError("refine_positions needs one tau vector per band")
    s_hat = _check_normalized_curve(s_hat)
    t = s_hat.shape[0]
    for tau in tau_bands:
        tau = np.asarray(tau, dtype=np.float64)
        if tau.shape != (t,):
            raise DomainError("band tau length must match the measured curve")
        if np.any(np.diff(tau) < 0):
            raise DomainError("band tau must be nondecreasing")
    ramp = np.arange(t, dtype=np.float64)
    delta = invert_spf(s_hat, ramp / (t - 1)) - ramp
    return tuple(
        np.asarray(tau, dtype=np.float64) + alpha * delta
        for tau, alpha in zip(tau_bands, schedule.strengths)
    )


def latent_sample_locations(frame_count: int, compression: int = DEFAULT_COMPRESSION) -> np.ndarray:
    """0-based frame coordinates sampled by each latent step.

    Latent 0 reads frame 0 (the first frame is encoded alone); latent
    i >= 1 reads the center of its compression-sized frame group, which
    for the default 4x compression is coordinate 4i - 2.5.
    """
    if compression < 1:
        raise DomainError(f"compression must be a positive integer, got {compression}")
    if frame_count < 2 or (frame_count - 1) % compression != 0:
        raise DomainError(
            f"frame count {frame_count} must be 1 mod compression {compression}"
        )
    latent_count = (frame_count - 1) // compression + 1
    locations = np.empty(latent_count)
    locations[0] = 0.0
    idx = np.arange(1, latent_count, dtype=np.float64)
    locations[1:] = compression * idx - (compression + 1) / 2.0
    return np.clip(locations, 0.0, float(frame_count - 1))


def map_to_latent(positions, compression: int = DEFAULT_COMPRESSION) -> np.ndarray:
    """Resample frame-level positions to the latent timeline.

    Piecewise-linear interpolation of the positions at the latent sample
    locations; requires T = 1 (mod compression), e.g. 81 frames -> 21
    latents at 4x.
    """
    positions = np.asarray(positions, dtype=np.float64)
    if positions.ndim != 1:
        raise DomainError("positions must be a 1-d vector")
    if np.any(np.diff(positions) < 0):
        raise DomainError("positions must be nondecreasing")
    t = positions.shape[0]
    locations = latent_sample_locations(t, compression)
    return np.interp(locations, np.arange(t, dtype=np.float64), positions)


def build_schedule(
    s_hat,
    target: PacingTarget,
    band_count: int,
    alpha_low: float = DEFAULT_ALPHA_LOW,
    alpha_high: float = DEFAULT_ALPHA_HIGH,
    kappa: float = DEFAULT_KAPPA,
    timesteps: Sequence[float] = (1.0,),
    compression: Optional[int] = DEFAULT_COMPRESSION,
) -> WarpSchedule:
    """Assemble the full retiming schedule artifact.

    Computes tau for the target pacing, expands it per (timestep, band),
    and, when a compression factor is given, resamples every band vector
    to latent resolution. Deterministic for fixed inputs; timesteps are
    emitted in the order given (the host pipeline owns its noise
    schedule).
    """
    s_hat = _check_normalized_curve(s_hat)
    if not timesteps:
        raise DomainError("at least one diffusion timestep is required")
    tau = compute_tau(s_hat, target)
    schedule = band_strengths(band_count, alpha_low, alpha_high, kappa)
    steps = tuple(blend_positions(tau, schedule, t_norm) for t_norm in timesteps)
    latent_steps = None
    if compression is not None:
        latent_steps = tuple(
            StepPositions(
                t_norm=step.t_norm,
                positions=tuple(map_to_latent(p, compression) for p in step.positions),
            )
            for step in steps
        )
    return WarpSchedule(
        tau=tau,
        band_schedule=schedule,
        steps=steps,
        target=target,
        latent_steps=latent_steps,
        compression=compression,
    )
