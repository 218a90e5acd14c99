"""
Channel Simulator Module - render an LedSchedule into what a receiver sees.

- simulate_sensor: photodiode power trace (mW) sampled at sample_rate, with a
  first-order rise and additive Gaussian noise
- simulate_camera: per-frame, per-LED intensity (0-255) integrated over the
  exposure window of each video frame
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from src.channel.profiles import KeyboardProfile
from src.transmit.modulation import LedSchedule
from src.utils.errors import ChannelError, NyquistViolation

logger = logging.getLogger(__name__)

CAMERA_FULL_SCALE = 255.0
RISE_TIME_FACTOR = 2.2  # 10-90% rise of a first-order system is 2.2 tau
MIN_FRAMES_PER_SEGMENT = 2


@dataclass(frozen=True)
class NoiseModel:
    """
    Additive white Gaussian noise.

    gaussian_sigma is in mW for sensor traces and in 8-bit counts for camera
    traces. The same seed and length always give the same noise draw.
    """

    gaussian_sigma: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if not self.gaussian_sigma >= 0 or not math.isfinite(self.gaussian_sigma):
            raise ChannelError(f"noise sigma must be finite and >= 0, got {self.gaussian_sigma}")
        if not 0 <= self.seed < 2 ** 64:
            raise ChannelError(f"seed must fit in 64 bits, got {self.seed}")

    def draw(self, n: int) -> np.ndarray:
        if self.gaussian_sigma == 0:
            return np.zeros(n)
        rng = np.random.default_rng(self.seed)
        return rng.standard_normal(n) * self.gaussian_sigma


NOISELESS = NoiseModel(0.0, 0)


@dataclass(frozen=True)
class SensorTrace:
    """Photodiode samples in mW. short_segments counts segments below the keyboard minimum."""

    sample_rate: float
    samples: np.ndarray
    short_segments: int = 0

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise ChannelError(f"sample rate must be positive, got {self.sample_rate}")
        arr = np.asarray(self.samples, dtype=float).reshape(-1)
        if not np.isfinite(arr).all():
            raise ChannelError("sensor samples must be finite")
        object.__setattr__(self, 'samples', arr)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_us(self) -> float:
        return len(self) * 1e6 / self.sample_rate

    def scaled(self, factor: float) -> 'SensorTrace':
        return SensorTrace(self.sample_rate, self.samples * factor, self.short_segments)

    def with_prefix(self, prefix: np.ndarray) -> 'SensorTrace':
        return SensorTrace(self.sample_rate, np.concatenate([np.asarray(prefix, float), self.samples]),
                           self.short_segments)


@dataclass(frozen=True)
class CameraTrace:
    """Per-frame intensities, shape (n_frames, 3), one column per LED."""

    fps: float
    frames: np.ndarray
    exposure_fraction: float = 0.9

    def __post_init__(self):
        if not self.fps > 0:
            raise ChannelError(f"fps must be positive, got {self.fps}")
        arr = np.asarray(self.frames, dtype=float)
        if arr.size == 0:
            arr = arr.reshape(0, 3)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ChannelError(f"camera frames must have 3 columns, got shape {arr.shape}")
        if not np.isfinite(arr).all() or (arr < 0).any() or (arr > CAMERA_FULL_SCALE).any():
            raise ChannelError("camera intensities must lie in [0, 255]")
        if not 0 < self.exposure_fraction <= 1:
            raise ChannelError(f"exposure fraction must be in (0, 1], got {self.exposure_fraction}")
        object.__setattr__(self, 'frames', arr)

    def __len__(self) -> int:
        return int(self.frames.shape[0])

    @property
    def frame_period_us(self) -> float:
        return 1e6 / self.fps


def _segment_arrays(schedule: LedSchedule):
    edges = np.asarray(schedule.boundaries(), dtype=float)
    counts = np.array([s.count for s in schedule.states], dtype=float)
    return edges, counts


def count_short_segments(schedule: LedSchedule, min_switch_us: float) -> int:
    return sum(1 for d in schedule.durations if d < min_switch_us)


def check_nyquist(schedule: LedSchedule, sample_rate: float) -> None:
    """Require two samples in the shortest segment."""
    shortest = schedule.shortest_segment()
    if shortest > 0 and sample_rate < 2e6 / shortest:
        raise NyquistViolation(
            f"sample rate {sample_rate:g} Hz below {2e6 / shortest:g} Hz needed for a {shortest:g} us segment")


def ideal_levels(schedule: LedSchedule, profile: KeyboardProfile, sample_rate: float) -> np.ndarray:
    """Noise-free, rise-free received power at each sample instant."""
    n = math.ceil(schedule.total_duration * sample_rate / 1e6 - 1e-9)
    edges, counts = _segment_arrays(schedule)
    t = np.arange(n) * (1e6 / sample_rate)
    idx = np.clip(np.searchsorted(edges, t, side='right') - 1, 0, len(counts) - 1)
    return profile.p_off_mw + counts[idx] * profile.led_increment_mw


def apply_rise(levels: np.ndarray, rise_us: float, sample_rate: float) -> np.ndarray:
    """First-order low-pass with 10-90% rise time rise_us, settled at levels[0]."""
    if rise_us <= 0 or levels.size == 0:
        return levels
    tau = rise_us / RISE_TIME_FACTOR
    a = math.exp(-(1e6 / sample_rate) / tau)
    b, den = [1 - a], [1, -a]
    zi = signal.lfilter_zi(b, den) * levels[0]
    out, _ = signal.lfilter(b, den, levels, zi=zi)
    return out


def simulate_sensor(schedule: LedSchedule, profile: KeyboardProfile, sample_rate: float = 500_000,
                    noise: NoiseModel = NoiseModel()) -> SensorTrace:
    """
    Photodiode trace of schedule as received from a keyboard with profile.

    Level per sample = p_off + lit LEDs * increment, smoothed by the keyboard's
    rise time, plus seeded Gaussian noise. Segments shorter than the keyboard's
    minimum switching time are simulated anyway and counted.
    """
    if not sample_rate > 0:
        raise ChannelError(f"sample rate must be positive, got {sample_rate}")
    check_nyquist(schedule, sample_rate)

    short = count_short_segments(schedule, profile.min_switch_us)
    if short:
        logger.warning("%d segment(s) shorter than %s minimum switching time %.0f us",
                       short, profile.label, profile.min_switch_us)

    levels = ideal_levels(schedule, profile, sample_rate)
    samples = apply_rise(levels, profile.rise_us, sample_rate) + noise.draw(levels.size)
    return SensorTrace(float(sample_rate), samples, short)


def led_on_fraction(schedule: LedSchedule, t0: np.ndarray, t1: np.ndarray) -> np.ndarray:
    """Fraction of [t0, t1) each LED is lit; shape (len(t0), 3)."""
    edges = np.asarray(schedule.boundaries(), dtype=float)
    width = np.asarray(t1, float) - np.asarray(t0, float)
    out = np.zeros((len(width), 3))
    for led in range(3):
        lit = np.array([s.as_tuple()[led] * d for s, d in schedule.segments], dtype=float)
        cumulative = np.concatenate([[0.0], np.cumsum(lit)])
        out[:, led] = (np.interp(t1, edges, cumulative) - np.interp(t0, edges, cumulative)) / width
    return out


def simulate_camera(schedule: LedSchedule, fps: float = 30, exposure_fraction: float = 0.9,
                    noise: NoiseModel = NOISELESS) -> CameraTrace:
    """
    Video of the three LEDs as per-frame intensities.

    Each LED's intensity is its on-fraction over the frame's exposure window
    scaled to 255, plus noise (counts), clamped and rounded.
    """
    if not fps > 0:
        raise ChannelError(f"fps must be positive, got {fps}")
    if not 0 < exposure_fraction <= 1:
        raise ChannelError(f"exposure fraction must be in (0, 1], got {exposure_fraction}")

    period = 1e6 / fps
    shortest = schedule.shortest_segment()
    if 0 < shortest < MIN_FRAMES_PER_SEGMENT * period * (1 - 1e-9):
        logger.warning("shortest segment %.0f us spans %.2f camera frame(s); at least %d are needed to decode",
                       shortest, shortest / period, MIN_FRAMES_PER_SEGMENT)
    n = math.ceil(schedule.total_duration / period - 1e-9)
    starts = np.arange(n) * period
    fraction = led_on_fraction(schedule, starts, starts + exposure_fraction * period)
    noisy = fraction * CAMERA_FULL_SCALE + noise.draw(fraction.size).reshape(fraction.shape)
    frames = np.rint(np.clip(noisy, 0.0, CAMERA_FULL_SCALE))
    return CameraTrace(float(fps), frames, exposure_fraction)

