"""
Demodulator Module - recover frames and bytes from sensor and camera traces.

decode_sensor / decode_camera repeat sync -> slice 280 bits -> parse until
no further preamble is found. A frame that fails validation is recorded in
the report and decoding moves on; only unusable input raises.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.channel.simulator import CameraTrace, SensorTrace
from src.receive.metrics import ber, bit_errors
from src.receive.slicer import CameraSlicer, SensorSlicer, Slicer, reference_duration, slice_symbols
from src.receive.sync import (MIN_RESYNC_SAMPLES, SyncResult, calibrate_from_preamble, find_preamble,
                              smoothing_length)
from src.receive.threshold import estimate_threshold
from src.transmit.framing import FRAME_BITS, PAYLOAD_BITS, PREAMBLE, build_frames, parse_frame
from src.transmit.modulation import LED1, SCHEMES, LedState, SymbolTiming
from src.utils.bits import BitString
from src.utils.errors import (BadLength, ConfigError, CrcMismatch, EmptyTrace, FramingError, NoSignal,
                              UnsupportedCombination)

logger = logging.getLogger(__name__)

STATUS_OK = 'ok'
STATUS_CRC = 'crc_mismatch'
STATUS_TRUNCATED = 'truncated'
STATUS_BAD = 'bad_frame'


@dataclass(frozen=True)
class DecodeConfig:
    """
    Receiver settings.

    timing=None asks the sensor decoder to calibrate symbol timing from the
    preamble (ook and bfsk only). levels defaults to 4 for ask-amp, 2 otherwise.
    """

    scheme: str = 'ook'
    timing: Optional[SymbolTiming] = None
    levels: Optional[int] = None
    leds: LedState = LED1
    min_symbol_us: float = 200.0
    exposure_fraction: float = 0.9
    resync: bool = True

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme '{self.scheme}' (expected one of {', '.join(SCHEMES)})")
        if self.levels is None:
            object.__setattr__(self, 'levels', 4 if self.scheme == 'ask-amp' else 2)
        if self.levels not in (2, 4):
            raise ConfigError(f"level count must be 2 or 4, got {self.levels}")
        if (self.levels == 4) != (self.scheme == 'ask-amp'):
            raise ConfigError(f"scheme '{self.scheme}' cannot use {self.levels} levels")
        if not self.min_symbol_us > 0:
            raise ConfigError("min_symbol_us must be positive")


@dataclass
class FrameResult:
    index: int
    start_us: float
    status: str
    bits: BitString
    crc_computed: Optional[int] = None
    crc_received: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK

    @property
    def payload_bits(self) -> BitString:
        return self.bits[len(PREAMBLE):len(PREAMBLE) + PAYLOAD_BITS]


@dataclass
class DecodeReport:
    """Outcome of decoding one trace."""

    scheme: str
    receiver: str
    frames: List[FrameResult] = field(default_factory=list)
    timing: Optional[SymbolTiming] = None
    thresholds: Tuple[float, ...] = ()
    ber: Optional[float] = None
    bit_errors: Optional[int] = None
    bits_compared: Optional[int] = None

    @property
    def frames_ok(self) -> int:
        return sum(1 for f in self.frames if f.ok)

    @property
    def frames_failed(self) -> int:
        return len(self.frames) - self.frames_ok

    @property
    def all_ok(self) -> bool:
        return bool(self.frames) and self.frames_failed == 0

    @property
    def recovered(self) -> bytes:
        """
        Payload bytes of every complete frame, in order, padding included.
        Frames that failed the CRC contribute their sliced payload so that
        byte offsets stay aligned.
        """
        return b''.join(f.payload_bits.to_bytes() for f in self.frames if f.status != STATUS_TRUNCATED)

    def received_payload_bits(self) -> BitString:
        return BitString.concat(f.payload_bits for f in self.frames)

    def score(self, expected: bytes) -> None:
        """Fill in BER against the payload bits expected bytes would produce."""
        sent = BitString.concat(f.payload for f in build_frames(expected))
        received = self.received_payload_bits()
        self.ber = ber(sent, received)
        self.bit_errors = bit_errors(sent, received)
        self.bits_compared = len(sent)

    def to_dict(self) -> Dict[str, object]:
        out = {
            'receiver': self.receiver,
            'scheme': self.scheme,
            'frames_total': len(self.frames),
            'frames_ok': self.frames_ok,
            'frames_failed': self.frames_failed,
            'bytes_recovered': len(self.recovered),
            'thresholds': ';'.join(f'{t:.6g}' for t in self.thresholds),
            'frame_status': ';'.join(f.status for f in self.frames),
        }
        if self.timing is not None:
            out.update(t_on_us=round(self.timing.t_on, 3), t_off_us=round(self.timing.t_off, 3),
                       t_d_us=round(self.timing.t_d, 3), t_all_us=round(self.timing.t_all, 3))
        if self.ber is not None:
            out.update(ber=self.ber, bit_errors=self.bit_errors, bits_compared=self.bits_compared)
        return out


def _frame_result(index: int, start_us: float, bits: BitString, complete: bool) -> FrameResult:
    if not complete:
        return FrameResult(index, start_us, STATUS_TRUNCATED, bits)
    try:
        frame = parse_frame(bits)
        return FrameResult(index, start_us, STATUS_OK, bits, frame.crc, frame.crc)
    except CrcMismatch as e:
        return FrameResult(index, start_us, STATUS_CRC, bits, e.computed, e.received)
    except BadLength:
        return FrameResult(index, start_us, STATUS_TRUNCATED, bits)
    except FramingError:
        return FrameResult(index, start_us, STATUS_BAD, bits)


def _decode_frames(slicer: Slicer, timing: SymbolTiming, report: DecodeReport, resync: bool,
                   first: Optional[SyncResult] = None) -> DecodeReport:
    ref = reference_duration(slicer.scheme, timing)
    t = 0.0
    sync = first
    while True:
        if sync is None:
            sync = find_preamble(slicer, timing, t)
            if sync is None:
                break
        result = slice_symbols(slicer, timing, sync.frame_start_us, FRAME_BITS, resync=resync)
        frame = _frame_result(len(report.frames), sync.frame_start_us, result.bits, result.complete)
        report.frames.append(frame)
        if frame.status != STATUS_OK:
            logger.info("frame %d at %.0f us: %s", frame.index, frame.start_us, frame.status)
        if not result.complete:
            break
        t = result.end_us - 0.25 * ref
        sync = None
    return report


def decode_sensor(trace: SensorTrace, cfg: DecodeConfig, expected: Optional[bytes] = None) -> DecodeReport:
    """
    Decode every frame in a photodiode trace.

    Args:
        trace: sampled received power
        cfg: scheme and (optional) timing
        expected: original bytes, to score BER

    Returns:
        DecodeReport; a trace without any preamble yields a report with no frames
    """
    if cfg.scheme == 'ask3':
        raise UnsupportedCombination("ask3 needs per-LED observation; decode it from a camera trace")
    if len(trace) == 0:
        raise EmptyTrace("sensor trace has no samples")
    threshold = estimate_threshold(trace, cfg.levels,
                                   smooth=smoothing_length(trace.sample_rate, cfg.min_symbol_us))
    if threshold.no_signal:
        raise NoSignal("sensor trace is flat")

    report = DecodeReport(cfg.scheme, 'sensor', timing=cfg.timing, thresholds=threshold.cuts)
    rate = trace.sample_rate / 1e6
    first = None
    if cfg.timing is None:
        found = calibrate_from_preamble(trace, cfg.scheme, threshold, cfg.min_symbol_us, 0.0, cfg.resync)
        if found is None:
            logger.warning("no preamble found in sensor trace")
            if expected is not None:
                report.score(expected)
            return report
        first, slicer = found
        timing = first.timing
        report.timing = timing
        report.thresholds = first.threshold.cuts
    else:
        timing = cfg.timing
        slicer = SensorSlicer(trace, cfg.scheme, threshold,
                              smoothing_length(trace.sample_rate, reference_duration(cfg.scheme, timing)))

    resync = (cfg.resync and cfg.scheme in ('ook', 'bfsk')
              and reference_duration(cfg.scheme, timing) * rate >= MIN_RESYNC_SAMPLES)
    _decode_frames(slicer, timing, report, resync, first)
    if expected is not None:
        report.score(expected)
    logger.info("sensor decode: %d/%d frame(s) ok", report.frames_ok, len(report.frames))
    return report


def decode_camera(trace: CameraTrace, cfg: DecodeConfig, expected: Optional[bytes] = None) -> DecodeReport:
    """
    Decode every frame in a camera trace.

    Each LED column is thresholded at its temporal mean; the frames covering a
    symbol vote on its value. Camera decoding needs explicit symbol timing.
    """
    if cfg.timing is None:
        raise ConfigError("camera decoding needs symbol timing (frame rate is too coarse to calibrate)")
    if len(trace) == 0:
        raise EmptyTrace("camera trace has no frames")
    slicer = CameraSlicer(trace, cfg.scheme, cfg.leds)
    report = DecodeReport(cfg.scheme, 'camera', timing=cfg.timing,
                          thresholds=tuple(t for t in slicer.thresholds if t == t))
    _decode_frames(slicer, cfg.timing, report, resync=False)
    if expected is not None:
        report.score(expected)
    logger.info("camera decode: %d/%d frame(s) ok", report.frames_ok, len(report.frames))
    return report


def demodulate_bits(trace, cfg: DecodeConfig, start_us: float, n_bits: int) -> BitString:
    """
    Slice n_bits from a known symbol start with known timing, no sync.

    Works on SensorTrace and CameraTrace; returns fewer bits if the trace ends.
    """
    if cfg.timing is None:
        raise ConfigError("known-alignment slicing needs symbol timing")
    if isinstance(trace, CameraTrace):
        slicer = CameraSlicer(trace, cfg.scheme, cfg.leds)
    else:
        if len(trace) == 0:
            raise EmptyTrace("sensor trace has no samples")
        threshold = estimate_threshold(trace, cfg.levels,
                                       smooth=smoothing_length(trace.sample_rate, cfg.min_symbol_us))
        slicer = SensorSlicer(trace, cfg.scheme, threshold)
    return slice_symbols(slicer, cfg.timing, start_us, n_bits).bits
