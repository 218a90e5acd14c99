"""
Symbol Slicer Module - turn a sampled trace into symbol decisions.

A slicer answers one question: which level does the trace show inside a time
window? SensorSlicer votes over photodiode samples, CameraSlicer over video
frames weighted by how much of each exposure falls in the window. The
scheme-specific walk (which window, how far to advance) lives in
slice_symbols and is shared by both receivers.
"""
import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np
from scipy.ndimage import uniform_filter1d

from src.channel.simulator import CAMERA_FULL_SCALE, CameraTrace, SensorTrace
from src.receive.threshold import ThresholdEstimate, noise_sigma
from src.transmit.modulation import LedState, SymbolTiming
from src.utils.bits import BitString
from src.utils.errors import UnsupportedCombination

# Required separation between lit and unlit windows, in noise standard errors
CONTRAST_SIGMAS = 6.0
# Camera channels with less swing than this (8-bit counts) are treated as constant
FLAT_CHANNEL_COUNTS = 1.0


@dataclass
class SliceResult:
    bits: BitString
    end_us: float
    complete: bool
    windows: List[Tuple[float, float, int]] = field(default_factory=list)


def reference_duration(scheme: str, timing: SymbolTiming) -> float:
    """Shortest state the receiver has to resolve."""
    return timing.shortest_state(scheme)


def decision_window(scheme: str, timing: SymbolTiming, t: float,
                    fraction: Tuple[float, float]) -> Tuple[float, float]:
    """Window inside the symbol starting at t that carries the decision."""
    f0, f1 = fraction
    if scheme == 'ook':
        span = min(timing.t_on, timing.t_off)
        return t + f0 * span, t + f1 * span
    if scheme == 'bfsk':
        short = min(timing.t_on, timing.t_off)
        gap = min(abs(timing.t_on - timing.t_off), timing.t_d)
        return t + short + f0 * gap, t + short + f1 * gap
    return t + f0 * timing.t_all, t + f1 * timing.t_all


def symbol_from_value(scheme: str, timing: SymbolTiming, value: int) -> Tuple[Tuple[int, ...], float]:
    """(bits, on-air duration) for a decided level value."""
    if scheme == 'ook':
        bit = int(value > 0)
        return (bit,), timing.t_on if bit else timing.t_off
    if scheme == 'bfsk':
        long_pulse = value > 0
        bit = int(long_pulse == (timing.t_on > timing.t_off))
        return (bit,), (timing.t_on if bit else timing.t_off) + timing.t_d
    if scheme == 'ask-amp':
        return ((value >> 1) & 1, value & 1), timing.t_all + timing.t_d
    return ((value >> 2) & 1, (value >> 1) & 1, value & 1), timing.t_all + timing.t_d


class Slicer:
    """Common interface of the sensor and camera slicers."""

    window_fraction = (0.25, 0.75)
    scheme: str

    @property
    def end_us(self) -> float:
        raise NotImplementedError

    def value(self, a: float, b: float) -> Optional[int]:
        raise NotImplementedError

    def rising_edges(self, t_from: float) -> Iterator[float]:
        raise NotImplementedError

    def snap(self, t: float, tol: float) -> float:
        return t

    def contrast_ok(self, windows: List[Tuple[float, float, int]], t_start: float, ref_us: float) -> bool:
        return True


class SensorSlicer(Slicer):
    """
    Per-sample decisions from threshold cut points, mode-voted over the
    central half of each symbol. Edges come from a moving-average copy of the
    trace thresholded at the first cut.
    """

    def __init__(self, trace: SensorTrace, scheme: str, threshold: ThresholdEstimate, smooth: int = 1):
        if scheme == 'ask3':
            raise UnsupportedCombination(
                "a single photodiode sees total power only; ask3 needs per-LED observation (use a camera)")
        self.trace = trace
        self.scheme = scheme
        self.threshold = threshold
        self.rate = trace.sample_rate / 1e6
        self.samples = trace.samples
        self.levels = threshold.classify(self.samples)
        self.smooth = max(1, int(smooth))
        smoothed = (uniform_filter1d(self.samples, size=self.smooth, mode='nearest')
                    if self.smooth > 1 else self.samples)
        self.smoothed = smoothed
        cut = threshold.cuts[0]
        active = smoothed > cut
        self.active = active
        change = np.flatnonzero(active[1:] != active[:-1])
        s0, s1 = smoothed[change], smoothed[change + 1]
        with np.errstate(divide='ignore', invalid='ignore'):
            frac = np.where(s1 != s0, (cut - s0) / (s1 - s0), 0.5)
        self.edge_times = (change + np.clip(frac, 0.0, 1.0)) / self.rate
        self.edge_rising = active[change + 1]
        self.sigma = noise_sigma(self.samples)

    @property
    def end_us(self) -> float:
        return len(self.samples) / self.rate

    def _indices(self, a: float, b: float) -> Optional[Tuple[int, int]]:
        n = len(self.samples)
        i0, i1 = math.ceil(a * self.rate - 1e-9), math.ceil(b * self.rate - 1e-9)
        if i1 <= i0:
            i0 = int(round(0.5 * (a + b) * self.rate))
            i1 = i0 + 1
        if i0 < 0 or i0 >= n:
            return None
        return i0, min(i1, n)

    def window_samples(self, a: float, b: float) -> np.ndarray:
        idx = self._indices(a, b)
        return self.samples[idx[0]:idx[1]] if idx else np.empty(0)

    def value(self, a: float, b: float) -> Optional[int]:
        idx = self._indices(a, b)
        if idx is None:
            return None
        votes = np.bincount(self.levels[idx[0]:idx[1]], minlength=self.threshold.levels)
        return int(np.argmax(votes))

    def rising_edges(self, t_from: float) -> Iterator[float]:
        if t_from <= 0 and self.active.size and self.active[0]:
            yield 0.0
        start = int(np.searchsorted(self.edge_times, t_from, side='left'))
        for i in range(start, len(self.edge_times)):
            if self.edge_rising[i]:
                yield float(self.edge_times[i])

    def snap(self, t: float, tol: float) -> float:
        """Move t onto the only transition within tol, if there is exactly one."""
        lo = np.searchsorted(self.edge_times, t - tol, side='left')
        hi = np.searchsorted(self.edge_times, t + tol, side='right')
        if hi - lo == 1:
            return float(self.edge_times[lo])
        return t

    def contrast_ok(self, windows: List[Tuple[float, float, int]], t_start: float, ref_us: float) -> bool:
        """
        Lit windows must stand above unlit ones (or the pre-frame baseline) by
        CONTRAST_SIGMAS standard errors of the estimated sample noise.
        """
        lit = [self.window_samples(a, b) for a, b, v in windows if v > 0]
        unlit = [self.window_samples(a, b) for a, b, v in windows if v == 0]
        if t_start - 0.75 * ref_us >= 0:
            unlit.append(self.window_samples(t_start - 0.75 * ref_us, t_start - 0.25 * ref_us))
        lit_v = np.concatenate(lit) if lit else np.empty(0)
        unlit_v = np.concatenate(unlit) if unlit else np.empty(0)
        if lit_v.size == 0:
            return False
        if unlit_v.size == 0:
            margin = lit_v.mean() - self.threshold.cuts[0]
            return bool(margin > 0 and margin >= 0.5 * CONTRAST_SIGMAS * self.sigma / math.sqrt(lit_v.size))
        contrast = lit_v.mean() - unlit_v.mean()
        needed = CONTRAST_SIGMAS * self.sigma * math.sqrt(1.0 / lit_v.size + 1.0 / unlit_v.size)
        return bool(contrast > 0 and contrast >= needed)


class CameraSlicer(Slicer):
    """
    Per-frame LED decisions against each channel's temporal mean, combined
    over the frames of a symbol by an exposure-overlap-weighted vote.

    With at least two frames per symbol, the central half of the symbol
    always overlaps a frame exposed entirely inside the symbol more than
    any straddling frame.
    """

    def __init__(self, trace: CameraTrace, scheme: str, leds: LedState = LedState(led1=True)):
        self.trace = trace
        self.scheme = scheme
        frames = trace.frames
        self.period = trace.frame_period_us
        self.exposure = trace.exposure_fraction * self.period
        self.starts = np.arange(len(trace)) * self.period

        mask = np.array(leds.as_tuple(), dtype=bool)
        if scheme in ('ook', 'bfsk'):
            if not mask.any():
                mask = np.array([True, False, False])
            channel = frames[:, mask].mean(axis=1) if len(trace) else np.empty(0)
            threshold = self._channel_threshold(channel)
            self.thresholds = tuple(threshold if m else float('nan') for m in mask)
            self.values = (channel > threshold).astype(np.int64)
            self.intensity = channel / CAMERA_FULL_SCALE
            self.n_values = 2
        else:
            thresholds = [self._channel_threshold(frames[:, k]) for k in range(3)]
            self.thresholds = tuple(thresholds)
            on = frames > np.asarray(thresholds)
            if scheme == 'ask-amp':
                self.values = on.sum(axis=1).astype(np.int64)
                self.n_values = 4
            else:
                self.values = (on[:, 0] * 4 + on[:, 1] * 2 + on[:, 2]).astype(np.int64)
                self.n_values = 8
            self.intensity = (frames.max(axis=1) if len(trace) else np.empty(0)) / CAMERA_FULL_SCALE
        self.active = self.values > 0

    @staticmethod
    def _channel_threshold(channel: np.ndarray) -> float:
        if channel.size == 0 or np.ptp(channel) < FLAT_CHANNEL_COUNTS:
            return CAMERA_FULL_SCALE / 2
        return float(channel.mean())

    @property
    def end_us(self) -> float:
        return len(self.trace) * self.period

    def value(self, a: float, b: float) -> Optional[int]:
        if len(self.trace) == 0 or a >= self.starts[-1] + self.exposure:
            return None
        overlap = np.clip(np.minimum(self.starts + self.exposure, b) - np.maximum(self.starts, a), 0.0, None)
        weights = overlap / self.exposure
        if not weights.any():
            centers = self.starts + self.exposure / 2
            return int(self.values[int(np.argmin(np.abs(centers - 0.5 * (a + b))))])
        votes = np.bincount(self.values, weights=weights, minlength=self.n_values)
        return int(np.argmax(votes))

    def _edge_time(self, k: int) -> float:
        """Estimate when the LEDs came on, given frame k is the first lit one."""
        x = self.intensity
        if x[k] < 0.95:
            return float(self.starts[k] + self.exposure * (1.0 - x[k]))
        if k == 0:
            return 0.0
        if x[k - 1] > 0.05:
            return float(self.starts[k - 1] + self.exposure * (1.0 - x[k - 1]))
        return float(0.5 * (self.starts[k - 1] + self.exposure + self.starts[k]))

    def rising_edges(self, t_from: float) -> Iterator[float]:
        for k in range(len(self.trace)):
            if self.active[k] and (k == 0 or not self.active[k - 1]):
                t = self._edge_time(k)
                if t >= t_from:
                    yield t


def slice_symbols(slicer: Slicer, timing: SymbolTiming, t0: float, n_bits: int,
                  resync: bool = False) -> SliceResult:
    """
    Walk symbols from t0 until n_bits are decided or the trace runs out.

    With resync, each symbol start is pulled onto a clean transition within a
    quarter of the shortest state.
    """
    scheme = slicer.scheme
    tol = 0.25 * reference_duration(scheme, timing)
    bits: List[int] = []
    windows = []
    t = t0
    complete = True
    while len(bits) < n_bits:
        a, b = decision_window(scheme, timing, t, slicer.window_fraction)
        if a >= slicer.end_us:
            complete = False
            break
        value = slicer.value(a, b)
        if value is None:
            complete = False
            break
        symbol_bits, duration = symbol_from_value(scheme, timing, value)
        bits.extend(symbol_bits)
        windows.append((a, b, value))
        t += duration
        if resync:
            t = slicer.snap(t, tol)
    return SliceResult(BitString(bits[:n_bits]), t, complete and len(bits) >= n_bits, windows)
