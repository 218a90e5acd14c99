"""
Modulation Module - map bit streams onto timed on/off states of the three
keyboard status LEDs (LED1 = Num Lock, LED2 = Caps Lock, LED3 = Scroll Lock).

Schemes:
- ook:     LED(s) on for t_on encodes 1, off for t_off encodes 0
- bfsk:    duration keying; on-pulse of t_on (1) or t_off (0), then t_d off
- ask3:    each LED carries one bit of a 3-bit group for t_all, then t_d off
- ask-amp: each 2-bit group sets how many LEDs are lit (0..3) for t_all

All durations are microseconds.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.transmit.framing import build_frames, serialize_frame
from src.utils.bits import BitString
from src.utils.errors import EmptyMask, InvalidTiming, ModulationError

logger = logging.getLogger(__name__)

SCHEMES = ('ook', 'bfsk', 'ask3', 'ask-amp')


@dataclass(frozen=True)
class LedState:
    """On/off state of Num Lock (led1), Caps Lock (led2), Scroll Lock (led3)."""

    led1: bool = False
    led2: bool = False
    led3: bool = False

    @classmethod
    def from_bits(cls, text: str) -> 'LedState':
        """'101' -> led1 on, led2 off, led3 on."""
        if len(text) != 3 or any(ch not in '01' for ch in text):
            raise ValueError(f"LED state must be three 0/1 characters, got {text!r}")
        return cls(text[0] == '1', text[1] == '1', text[2] == '1')

    @classmethod
    def from_count(cls, count: int) -> 'LedState':
        """Amplitude ladder: 0 -> 000, 1 -> 100, 2 -> 110, 3 -> 111."""
        if not 0 <= count <= 3:
            raise ValueError(f"LED count out of range: {count}")
        return cls(count >= 1, count >= 2, count >= 3)

    def to_bits(self) -> str:
        return ''.join('1' if on else '0' for on in self.as_tuple())

    def as_tuple(self) -> Tuple[bool, bool, bool]:
        return (self.led1, self.led2, self.led3)

    @property
    def count(self) -> int:
        return sum(self.as_tuple())

    @property
    def any_on(self) -> bool:
        return self.count > 0

    def __or__(self, other: 'LedState') -> 'LedState':
        return LedState(*(a or b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def __xor__(self, other: 'LedState') -> 'LedState':
        return LedState(*(a != b for a, b in zip(self.as_tuple(), other.as_tuple())))


ALL_OFF = LedState()
LED1 = LedState(led1=True)
LED2 = LedState(led2=True)
LED3 = LedState(led3=True)
ALL_ON = LedState(True, True, True)


@dataclass(frozen=True)
class SymbolTiming:
    """
    Symbol durations in microseconds.

    t_d may be 0 for the ASK schemes (no separator); every other duration must
    be positive.
    """

    t_on: float = 400.0
    t_off: float = 400.0
    t_d: float = 400.0
    t_all: float = 400.0

    def __post_init__(self):
        for name in ('t_on', 't_off', 't_all'):
            if not getattr(self, name) > 0:
                raise InvalidTiming(f"{name} must be > 0, got {getattr(self, name)}")
        if self.t_d < 0:
            raise InvalidTiming(f"t_d must be >= 0, got {self.t_d}")

    def symbol_durations(self, scheme: str) -> Tuple[float, ...]:
        """Possible on-air durations of one symbol, separator included."""
        if scheme == 'ook':
            return (self.t_on, self.t_off)
        if scheme == 'bfsk':
            return (self.t_on + self.t_d, self.t_off + self.t_d)
        return (self.t_all + self.t_d,)

    def shortest_state(self, scheme: str) -> float:
        """Shortest time any single LED state is held."""
        if scheme == 'ook':
            return min(self.t_on, self.t_off)
        if scheme == 'bfsk':
            return min(self.t_on, self.t_off, self.t_d)
        return min(self.t_all, self.t_d) if self.t_d > 0 else self.t_all

    def violations(self, scheme: str, min_switch_us: float) -> List[str]:
        """Durations of this timing that undercut a keyboard's switching limit."""
        names = {'ook': ('t_on', 't_off'), 'bfsk': ('t_on', 't_off', 't_d')}
        checked = names.get(scheme, ('t_all', 't_d') if self.t_d > 0 else ('t_all',))
        return [f"{n}={getattr(self, n):g}us < {min_switch_us:g}us"
                for n in checked if getattr(self, n) < min_switch_us]


@dataclass(frozen=True)
class LedSchedule:
    """
    Timed sequence of LED states.

    segments holds (LedState, duration_us) pairs; symbol_count is the number of
    modulated symbols the schedule carries (merging does not change it).
    """

    segments: Tuple[Tuple[LedState, float], ...] = ()
    symbol_count: int = 0

    def __post_init__(self):
        for state, duration in self.segments:
            if not isinstance(state, LedState):
                raise ModulationError(f"segment state must be LedState, got {type(state).__name__}")
            if not duration > 0:
                raise ModulationError(f"segment durations must be positive, got {duration}")

    @property
    def total_duration(self) -> float:
        return float(math.fsum(d for _, d in self.segments))

    @property
    def states(self) -> List[LedState]:
        return [s for s, _ in self.segments]

    @property
    def durations(self) -> List[float]:
        return [d for _, d in self.segments]

    def boundaries(self) -> List[float]:
        """Segment start times followed by the end time."""
        edges = [0.0]
        for _, duration in self.segments:
            edges.append(edges[-1] + duration)
        return edges

    def merged(self) -> 'LedSchedule':
        """Fuse adjacent segments that share a state."""
        out: List[List] = []
        for state, duration in self.segments:
            if out and out[-1][0] == state:
                out[-1][1] += duration
            else:
                out.append([state, duration])
        return LedSchedule(tuple((s, d) for s, d in out), self.symbol_count)

    def shortest_segment(self) -> float:
        return min(self.durations) if self.segments else 0.0

    def __add__(self, other: 'LedSchedule') -> 'LedSchedule':
        return LedSchedule(self.segments + other.segments, self.symbol_count + other.symbol_count)

    def __len__(self) -> int:
        return len(self.segments)


def _finish(segments: List[Tuple[LedState, float]], symbols: int, merge: bool) -> LedSchedule:
    schedule = LedSchedule(tuple(segments), symbols)
    return schedule.merged() if merge else schedule


def modulate_ook(bits: BitString, timing: SymbolTiming, leds: LedState = LED1,
                 merge: bool = True) -> LedSchedule:
    """
    On-off keying: '1' lights the masked LEDs for t_on, '0' turns them off for t_off.

    A mask with two or three LEDs switches them together (multi-LED OOK).
    """
    if not leds.any_on:
        raise EmptyMask("OOK needs at least one LED in the mask")
    segments = [(leds, timing.t_on) if bit else (ALL_OFF, timing.t_off) for bit in bits]
    return _finish(segments, len(bits), merge)


def modulate_bfsk(bits: BitString, timing: SymbolTiming, leds: LedState = LED1,
                  merge: bool = True) -> LedSchedule:
    """
    Duration keying: each bit is an on-pulse of t_on ('1') or t_off ('0')
    followed by t_d off.
    """
    if not leds.any_on:
        raise EmptyMask("B-FSK needs at least one LED in the mask")
    if timing.t_on == timing.t_off:
        raise InvalidTiming("B-FSK needs t_on != t_off to tell symbols apart")
    if timing.t_d <= 0:
        raise InvalidTiming("B-FSK needs a positive separation t_d")
    segments = []
    for bit in bits:
        segments.append((leds, timing.t_on if bit else timing.t_off))
        segments.append((ALL_OFF, timing.t_d))
    return _finish(segments, len(bits), merge)


def modulate_ask3(bits: BitString, timing: SymbolTiming, merge: bool = True) -> LedSchedule:
    """
    Three-LED ASK: bit i of each 3-bit group drives LED i+1 for t_all, then all
    LEDs go off for t_d (skipped when t_d is 0). Bits are zero-padded to a
    multiple of three.
    """
    padded = bits.pad_to_multiple(3)
    segments = []
    for i in range(0, len(padded), 3):
        group = padded[i:i + 3].to_str()
        segments.append((LedState.from_bits(group), timing.t_all))
        if timing.t_d > 0:
            segments.append((ALL_OFF, timing.t_d))
    return _finish(segments, len(padded) // 3, merge)


def modulate_ask_amplitude(bits: BitString, timing: SymbolTiming, merge: bool = True) -> LedSchedule:
    """
    Amplitude ASK: each 2-bit group (natural binary) selects how many LEDs are
    lit, 00 -> 000, 01 -> 100, 10 -> 110, 11 -> 111, for t_all. Only the count
    of lit LEDs carries information.
    """
    padded = bits.pad_to_multiple(2)
    segments = []
    for i in range(0, len(padded), 2):
        level = (padded[i] << 1) | padded[i + 1]
        segments.append((LedState.from_count(level), timing.t_all))
        if timing.t_d > 0:
            segments.append((ALL_OFF, timing.t_d))
    return _finish(segments, len(padded) // 2, merge)


def modulate(bits: BitString, scheme: str, timing: SymbolTiming, leds: LedState = LED1,
             merge: bool = True) -> LedSchedule:
    """Dispatch to the modulator for scheme."""
    if scheme == 'ook':
        return modulate_ook(bits, timing, leds, merge)
    if scheme == 'bfsk':
        return modulate_bfsk(bits, timing, leds, merge)
    if scheme == 'ask3':
        return modulate_ask3(bits, timing, merge)
    if scheme == 'ask-amp':
        return modulate_ask_amplitude(bits, timing, merge)
    raise ModulationError(f"unknown scheme '{scheme}' (expected one of {', '.join(SCHEMES)})")


def bits_per_symbol(scheme: str) -> int:
    return {'ook': 1, 'bfsk': 1, 'ask3': 3, 'ask-amp': 2}[scheme]


def default_gap_us(scheme: str, timing: SymbolTiming) -> float:
    """Idle time between frames: two of the longest symbols."""
    return 2.0 * max(timing.symbol_durations(scheme))


def build_transmission(data: bytes, scheme: str, timing: SymbolTiming, leds: LedState = LED1,
                       gap_us: Optional[float] = None, merge: bool = True) -> LedSchedule:
    """
    Frame data and modulate every frame, separated by an all-off gap so that
    each preamble starts on a rising edge. With merge=False every symbol keeps
    its own segment (one row per symbol part in the schedule file).
    """
    gap = default_gap_us(scheme, timing) if gap_us is None else gap_us
    schedule = LedSchedule()
    frames = build_frames(data)
    for i, frame in enumerate(frames):
        schedule = schedule + modulate(serialize_frame(frame), scheme, timing, leds, merge=False)
        if gap > 0:
            schedule = schedule + LedSchedule(((ALL_OFF, gap),), 0)
    logger.debug("modulated %d frame(s) with %s, %.0f us on air", len(frames), scheme,
                 schedule.total_duration)
    return schedule.merged() if merge else schedule


def timing_for_bitrate(scheme: str, bitrate: float) -> SymbolTiming:
    """
    Symbol timing that achieves bitrate with each scheme's default shape:
    ook t_on = t_off; bfsk t_on = 2 t_off, t_d = t_off; ASK schemes without
    separator.
    """
    if bitrate <= 0:
        raise InvalidTiming(f"bitrate must be positive, got {bitrate}")
    t = 1e6 / bitrate
    if scheme == 'ook':
        return SymbolTiming(t_on=t, t_off=t, t_d=t, t_all=t)
    if scheme == 'bfsk':
        t_off = 0.4 * t
        return SymbolTiming(t_on=2 * t_off, t_off=t_off, t_d=t_off, t_all=t)
    if scheme in ('ask3', 'ask-amp'):
        t_all = bits_per_symbol(scheme) * t
        return SymbolTiming(t_on=t_all, t_off=t_all, t_d=0.0, t_all=t_all)
    raise ModulationError(f"unknown scheme '{scheme}'")


# Theoretical rates

def theoretical_bitrate_camera(n_leds: int, fps: float, frames_per_bit: int = 2) -> float:
    """Multi-LED camera rate: n_leds * fps / frames_per_bit."""
    if n_leds not in (1, 2, 3):
        raise ValueError(f"n_leds must be 1, 2 or 3, got {n_leds}")
    if not fps > 0:
        raise ValueError(f"fps must be positive, got {fps}")
    if frames_per_bit < 2:
        raise ValueError(f"need at least 2 frames per bit, got {frames_per_bit}")
    return n_leds * fps / frames_per_bit


def camera_bitrate(scheme: str, fps: float) -> float:
    """
    Rate a camera at fps can follow with each scheme: two frames per symbol,
    and for bfsk a pulse-length difference of at least two frames.
    """
    if not fps > 0:
        raise ValueError(f"fps must be positive, got {fps}")
    if scheme == 'ook':
        return theoretical_bitrate_camera(1, fps)
    if scheme == 'bfsk':
        return fps / 6.0
    if scheme == 'ask-amp':
        return fps
    if scheme == 'ask3':
        return theoretical_bitrate_camera(3, fps)
    raise ModulationError(f"unknown scheme '{scheme}'")


def ook_blink_bitrate(blink_period_us: float) -> float:
    """One bit per minimal on/off blink cycle."""
    if not blink_period_us > 0:
        raise ValueError("blink period must be positive")
    return 1e6 / blink_period_us


def ask_level_rate(t_all_us: float, levels: int = 4) -> Tuple[float, float]:
    """(levels per second, bits per second) for a level held t_all_us."""
    if not t_all_us > 0:
        raise ValueError("level duration must be positive")
    level_rate = 1e6 / t_all_us
    return level_rate, level_rate * math.log2(levels)


def schedule_bitrate(n_bits: int, schedule: LedSchedule) -> float:
    """Bits carried per second of schedule air time."""
    return n_bits * 1e6 / schedule.total_duration

