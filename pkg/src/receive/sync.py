"""
Preamble Sync Module - locate frame starts and recover symbol timing.

With known timing every rising edge is a candidate frame start; the
candidate is kept when the next symbols slice to the preamble and the lit
windows clear the noise floor. Without timing (on/off schemes only) the
alternating preamble is found as seven consistent runs in the smoothed,
thresholded trace, and the symbol durations are read off those runs.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.ndimage import uniform_filter1d

from src.channel.simulator import SensorTrace
from src.receive.slicer import SensorSlicer, Slicer, reference_duration, slice_symbols
from src.receive.threshold import ThresholdEstimate, estimate_threshold, midpoint_threshold, noise_sigma
from src.transmit.framing import PREAMBLE
from src.transmit.modulation import SymbolTiming
from src.utils.errors import ConfigError, NoSignal, PreambleNotFound

logger = logging.getLogger(__name__)

RUN_TOLERANCE = 0.3
PREAMBLE_RUNS = 7
MIN_RESYNC_SAMPLES = 8


@dataclass(frozen=True)
class SyncResult:
    """Where a frame starts, where its payload starts, and the timing used (us)."""

    frame_start_us: float
    payload_start_us: float
    timing: SymbolTiming
    threshold: ThresholdEstimate


def smoothing_length(sample_rate: float, symbol_us: float) -> int:
    """Moving-average length covering a quarter of a symbol."""
    return max(1, int(0.25 * symbol_us * sample_rate / 1e6))


def find_preamble(slicer: Slicer, timing: SymbolTiming, t_from: float = 0.0) -> Optional[SyncResult]:
    """First frame start at or after t_from, or None."""
    ref = reference_duration(slicer.scheme, timing)
    for t_edge in slicer.rising_edges(t_from):
        result = slice_symbols(slicer, timing, t_edge, len(PREAMBLE))
        if not result.complete:
            return None
        if result.bits != PREAMBLE:
            continue
        if not slicer.contrast_ok(result.windows, t_edge, ref):
            continue
        threshold = getattr(slicer, 'threshold', ThresholdEstimate(()))
        return SyncResult(t_edge, result.end_us, timing, threshold)
    return None


def _run_lengths(active: np.ndarray):
    """(values, starts, lengths) of consecutive equal entries."""
    if active.size == 0:
        return np.empty(0, bool), np.empty(0, int), np.empty(0, int)
    change = np.flatnonzero(active[1:] != active[:-1]) + 1
    starts = np.concatenate([[0], change])
    lengths = np.diff(np.concatenate([starts, [active.size]]))
    return active[starts], starts, lengths


def _crossings(smoothed: np.ndarray, starts: np.ndarray, level: float) -> np.ndarray:
    """Linear interpolation of where each run start crosses level."""
    edges = starts.astype(float)
    for k, i in enumerate(starts):
        if 0 < i < smoothed.size:
            a, b = smoothed[i - 1], smoothed[i]
            if b != a:
                edges[k] = i - 1 + float(np.clip((level - a) / (b - a), 0.0, 1.0))
    return edges


def _refine_runs(smoothed: np.ndarray, starts: np.ndarray, lengths: np.ndarray):
    """
    Re-cut the seven preamble runs at the preamble's own min/max midpoint.

    The trace-wide threshold sits off-centre when the payload is mostly ones
    or mostly zeros; together with the rise tail that skews on against off
    run lengths. Returns (starts, lengths, edges) of the re-cut runs, edges
    being the sub-sample rising-crossing positions, or None.
    """
    lo = max(0, int(starts[0] - lengths[1] // 2))
    hi = min(smoothed.size, int(starts[6] + lengths[6] + lengths[5]))
    segment = smoothed[lo:hi]
    low, high = np.percentile(smoothed[starts[0]:starts[6] + lengths[6]], [2.0, 98.0])
    if not high > low:
        return None
    level = 0.5 * (low + high)
    values, sub_starts, sub_lengths = _run_lengths(segment > level)
    # short spurious crossings ahead of the preamble are not its first run
    first = np.flatnonzero(values & (sub_lengths >= 0.5 * lengths[0]))
    if first.size == 0 or first[0] + PREAMBLE_RUNS >= values.size:
        return None
    k = first[0]
    run_starts = sub_starts[k:k + PREAMBLE_RUNS] + lo
    return run_starts, sub_lengths[k:k + PREAMBLE_RUNS], _crossings(smoothed, run_starts, level)


def _consistent(values: np.ndarray) -> bool:
    mean = values.mean()
    return bool(mean > 0 and np.all(np.abs(values - mean) <= RUN_TOLERANCE * mean))


def _timing_from_runs(scheme: str, starts: np.ndarray, lengths: np.ndarray, rate: float) -> Optional[SymbolTiming]:
    """Symbol timing from seven preamble runs (on, off, on, off, on, off, on)."""
    on, off = lengths[0::2].astype(float), lengths[1::2].astype(float)
    if scheme == 'ook':
        if not (_consistent(on) and _consistent(off)):
            return None
        period = (starts[6] - starts[0]) / 3.0 / rate
        on_mean, off_mean = on.mean(), off.mean()
        if abs(on_mean - off_mean) <= RUN_TOLERANCE * 0.5 * (on_mean + off_mean):
            t_on = t_off = period / 2
        else:
            t_on = period * on_mean / (on_mean + off_mean)
            t_off = period - t_on
        return SymbolTiming(t_on=t_on, t_off=t_off, t_d=t_on, t_all=t_on)

    # bfsk: pulses alternate one / zero, gaps are all t_d
    ones, zeros = on[[0, 2]], on[[1, 3]]
    if not (_consistent(ones) and _consistent(zeros) and _consistent(off)):
        return None
    if abs(ones.mean() - zeros.mean()) <= RUN_TOLERANCE * min(ones.mean(), zeros.mean()):
        return None
    span = (starts[4] - starts[0]) / rate
    scale = span / (ones.mean() + zeros.mean() + 2 * off.mean())
    return SymbolTiming(t_on=ones.mean() * scale, t_off=zeros.mean() * scale,
                        t_d=off.mean() * scale, t_all=ones.mean() * scale)


def calibrate_from_preamble(trace: SensorTrace, scheme: str, threshold: ThresholdEstimate,
                            min_symbol_us: float = 200.0, t_from: float = 0.0,
                            resync: bool = True) -> Optional[tuple]:
    """
    Blind search for the first preamble at or after t_from.

    Returns (SyncResult, SensorSlicer) built with the estimated timing and a
    threshold refined to the midpoint of the preamble's on and off levels.
    """
    if scheme not in ('ook', 'bfsk'):
        raise ConfigError(f"scheme '{scheme}' needs explicit symbol timing")
    rate = trace.sample_rate / 1e6
    samples = trace.samples
    m = smoothing_length(trace.sample_rate, min_symbol_us)
    smoothed = uniform_filter1d(samples, size=m, mode='nearest') if m > 1 else samples
    i_from = max(0, math.ceil(t_from * rate))
    values, starts, lengths = _run_lengths(smoothed[i_from:] > threshold.value)
    starts = starts + i_from
    min_len = 0.5 * min_symbol_us * rate
    sigma = noise_sigma(samples)

    for r in range(len(values) - PREAMBLE_RUNS + 1):
        if not values[r]:
            continue
        run_len = lengths[r:r + PREAMBLE_RUNS]
        if (run_len < min_len).any():
            continue
        run_start, timing = starts[r:r + PREAMBLE_RUNS], None
        refined = _refine_runs(smoothed, run_start, run_len)
        if refined is not None and not (refined[1] < min_len).any():
            timing = _timing_from_runs(scheme, refined[2], refined[1], rate)
            if timing is not None:
                run_start, run_len = refined[0], refined[1]
        if timing is None:
            timing = _timing_from_runs(scheme, run_start, run_len, rate)
        if timing is None:
            continue

        # Run interiors, away from the edges the smoothing blurs
        on_parts, off_parts = [], []
        for k in range(PREAMBLE_RUNS):
            lo, hi = run_start[k] + m, run_start[k] + run_len[k] - m
            if hi <= lo:
                lo, hi = run_start[k], run_start[k] + run_len[k]
            (on_parts if k % 2 == 0 else off_parts).append(samples[lo:hi])
        on_v, off_v = np.concatenate(on_parts), np.concatenate(off_parts)
        contrast = on_v.mean() - off_v.mean()
        if contrast <= 0 or contrast < 6.0 * sigma * math.sqrt(1 / on_v.size + 1 / off_v.size):
            continue

        local = ThresholdEstimate((midpoint_threshold(on_v, off_v),))
        ref = reference_duration(scheme, timing)
        slicer = SensorSlicer(trace, scheme, local, smoothing_length(trace.sample_rate, ref))
        t_start = run_start[0] / rate
        edge = next(slicer.rising_edges(max(0.0, t_start - 0.25 * ref)), None)
        if edge is not None and abs(edge - t_start) <= 0.25 * ref:
            t_start = edge
        result = slice_symbols(slicer, timing, t_start, len(PREAMBLE),
                               resync=resync and ref * rate >= MIN_RESYNC_SAMPLES)
        if result.complete and result.bits == PREAMBLE:
            logger.debug("preamble at %.1f us, t_on=%.1f t_off=%.1f us", t_start, timing.t_on, timing.t_off)
            return SyncResult(t_start, result.end_us, timing, local), slicer
    return None


def sync_preamble(trace: SensorTrace, scheme: str, timing: Optional[SymbolTiming] = None,
                  levels: int = 2, min_symbol_us: float = 200.0, start_us: float = 0.0) -> SyncResult:
    """
    Locate the first frame in a sensor trace.

    Returns the frame start, the first payload bit time and the symbol timing
    (given, or calibrated from the preamble). Raises PreambleNotFound when a
    full scan finds nothing.
    """
    threshold = estimate_threshold(trace, levels)
    if threshold.no_signal:
        raise NoSignal("flat trace, nothing to synchronize on")
    if timing is None:
        found = calibrate_from_preamble(trace, scheme, threshold, min_symbol_us, start_us)
        if found is None:
            raise PreambleNotFound("no preamble in trace")
        return found[0]
    slicer = SensorSlicer(trace, scheme, threshold,
                          smoothing_length(trace.sample_rate, reference_duration(scheme, timing)))
    result = find_preamble(slicer, timing, start_us)
    if result is None:
        raise PreambleNotFound("no preamble in trace")
    return result
