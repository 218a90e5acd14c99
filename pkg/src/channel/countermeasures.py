"""
Countermeasures Module - host-side defences against LED signalling.

- apply_led_rate_limit: low-pass filter that locks the LEDs after each change
- inject_random_blinks: jamming by random LED toggles on top of the schedule
- monitor_led_activity: flags bursts of LED state changes
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from src.transmit.modulation import ALL_OFF, LedSchedule, LedState
from src.utils.errors import ChannelError

logger = logging.getLogger(__name__)

# Slack for accumulated float error in segment start times
_TIME_EPS_US = 1e-6


def _change_times(schedule: LedSchedule) -> List[Tuple[float, LedState]]:
    """(start time, new state) for the first segment and every state change."""
    changes = []
    t = 0.0
    previous = None
    for state, duration in schedule.segments:
        if state != previous:
            changes.append((t, state))
            previous = state
        t += duration
    return changes


def _from_changes(changes: Sequence[Tuple[float, LedState]], end: float, symbol_count: int) -> LedSchedule:
    segments = []
    for i, (t, state) in enumerate(changes):
        t_next = changes[i + 1][0] if i + 1 < len(changes) else end
        if t_next > t:
            segments.append((state, t_next - t))
    return LedSchedule(tuple(segments), symbol_count).merged()


def apply_led_rate_limit(schedule: LedSchedule, lock_ms: float = 1000.0) -> LedSchedule:
    """
    Hold the LEDs for lock_ms after every accepted change.

    The schedule start counts as the first accepted change. A change that
    arrives while the LEDs are locked is dropped; total duration is kept.
    """
    if not lock_ms > 0:
        raise ChannelError(f"lock_ms must be positive, got {lock_ms}")
    lock_us = lock_ms * 1000.0
    accepted = []
    last_t = None
    for t, state in _change_times(schedule):
        if last_t is None or t - last_t >= lock_us - _TIME_EPS_US:
            if accepted and accepted[-1][1] == state:
                continue
            accepted.append((t, state))
            last_t = t
    dropped = len(_change_times(schedule)) - len(accepted)
    if dropped:
        logger.debug("rate limit dropped %d LED change(s)", dropped)
    return _from_changes(accepted, schedule.total_duration, schedule.symbol_count)


def inject_random_blinks(schedule: LedSchedule, rate_hz: float = 50.0, blink_us: float = 2000.0,
                         seed: int = 0, min_segment_us: float = 5.0) -> LedSchedule:
    """
    Overlay random blinks: blink starts form a Poisson process of rate_hz and
    each toggles one randomly chosen LED for blink_us.

    Segments shorter than min_segment_us created by the overlay are absorbed
    into the preceding segment.
    """
    if rate_hz < 0 or not blink_us > 0:
        raise ChannelError("rate_hz must be >= 0 and blink_us > 0")
    total = schedule.total_duration
    rng = np.random.default_rng(seed)
    expected = rate_hz * total / 1e6
    n_blinks = int(rng.poisson(expected)) if expected > 0 else 0
    starts = np.sort(rng.uniform(0.0, total, n_blinks))
    leds = rng.integers(0, 3, n_blinks)

    # Every boundary of the base schedule and of each blink
    base_edges = schedule.boundaries()
    edges = np.unique(np.concatenate([base_edges, starts, np.minimum(starts + blink_us, total)]))
    masks = [LedState(led1=True), LedState(led2=True), LedState(led3=True)]

    segments = []
    for t0, t1 in zip(edges[:-1], edges[1:]):
        if t1 <= t0:
            continue
        mid = 0.5 * (t0 + t1)
        idx = min(int(np.searchsorted(base_edges, mid, side='right')) - 1, len(schedule) - 1)
        state = schedule.segments[idx][0]
        active = (starts <= mid) & (mid < starts + blink_us)
        for led in leds[active]:
            state = state ^ masks[int(led)]
        if segments and (t1 - t0 < min_segment_us or segments[-1][0] == state):
            segments[-1] = (segments[-1][0], segments[-1][1] + (t1 - t0))
        else:
            segments.append((state, t1 - t0))
    logger.debug("injected %d random blink(s)", n_blinks)
    return LedSchedule(tuple(segments), schedule.symbol_count).merged()


@dataclass(frozen=True)
class ActivityAlert:
    """A window that holds more LED changes than allowed."""

    start_us: float
    end_us: float
    changes: int


def monitor_led_activity(source: Union[LedSchedule, Sequence[Tuple[float, object]]],
                         window_ms: float = 1000.0, max_changes: int = 10) -> List[ActivityAlert]:
    """
    Flag sliding windows of window_ms holding more than max_changes LED changes.

    source is a schedule or a list of (timestamp_us, request) pairs as produced
    by schedule_to_reports. Overlapping alerts are merged.
    """
    if not window_ms > 0 or max_changes < 0:
        raise ChannelError("window_ms must be positive and max_changes non-negative")
    if isinstance(source, LedSchedule):
        times = np.array([t for t, _ in _change_times(source)], dtype=float)
    else:
        times = np.array([t for t, _ in source], dtype=float)
    # The initial state setting is not a change
    times = times[1:]
    window_us = window_ms * 1000.0

    alerts: List[ActivityAlert] = []
    ends = np.searchsorted(times, times + window_us, side='left')
    for i, j in enumerate(ends):
        count = int(j - i)
        if count > max_changes:
            start, end = float(times[i]), float(times[i] + window_us)
            if alerts and start <= alerts[-1].end_us:
                prev = alerts[-1]
                alerts[-1] = ActivityAlert(prev.start_us, end, max(prev.changes, count))
            else:
                alerts.append(ActivityAlert(start, end, count))
    if alerts:
        logger.info("LED activity monitor raised %d alert(s)", len(alerts))
    return alerts


def is_constant(schedule: LedSchedule) -> bool:
    return len(schedule.merged()) <= 1


def idle_schedule(duration_us: float) -> LedSchedule:
    return LedSchedule(((ALL_OFF, duration_us),), 0)
