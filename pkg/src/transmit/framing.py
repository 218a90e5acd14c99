"""
Framing Module - packetize bytes into fixed-size frames and validate them back.

Frame layout (MSB-first throughout):

    +----------+-------------------+--------+
    | PREAMBLE | PAYLOAD           | CRC-16 |
    | 8 bits   | 256 bits          | 16 bits|
    +----------+-------------------+--------+

- PREAMBLE: 10101010, marks frame start and carries timing for the receiver
- PAYLOAD: raw data, zero-padded when the source runs out
- CRC-16: CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF) over the payload

There is no length field, so trailing padding cannot be told apart from data;
callers that need the exact byte count must carry it separately.
"""
import math
from dataclasses import dataclass
from typing import List, Sequence

import crcmod.predefined

from src.utils.bits import BitString
from src.utils.errors import BadLength, BadPreamble, CrcMismatch, EmptyData

PREAMBLE = BitString.from_str('10101010')
PAYLOAD_BITS = 256
PAYLOAD_BYTES = PAYLOAD_BITS // 8
CRC_BITS = 16
FRAME_BITS = len(PREAMBLE) + PAYLOAD_BITS + CRC_BITS  # 280

_crc16_func = crcmod.predefined.mkCrcFun('crc-ccitt-false')


def crc16(payload: BitString) -> int:
    """CRC-16/CCITT-FALSE over a 256-bit payload."""
    if len(payload) != PAYLOAD_BITS:
        raise BadLength(PAYLOAD_BITS, len(payload))
    return _crc16_func(payload.to_bytes())


@dataclass(frozen=True)
class Frame:
    """One unit of transmission: preamble, 256-bit payload and its CRC."""

    payload: BitString
    crc: int
    preamble: BitString = PREAMBLE

    def __post_init__(self):
        if self.preamble != PREAMBLE:
            raise BadPreamble(f"preamble {self.preamble.to_str()} != {PREAMBLE.to_str()}")
        if len(self.payload) != PAYLOAD_BITS:
            raise BadLength(PAYLOAD_BITS, len(self.payload))
        if not 0 <= self.crc <= 0xFFFF:
            raise ValueError(f"crc out of range: {self.crc}")

    @classmethod
    def for_payload(cls, payload: BitString) -> 'Frame':
        return cls(payload=payload, crc=crc16(payload))

    def payload_bytes(self) -> bytes:
        return self.payload.to_bytes()


def build_frames(data: bytes) -> List[Frame]:
    """
    Split data into 256-bit payload frames.

    Args:
        data: bytes to send, must be non-empty

    Returns:
        ceil(len(data) * 8 / 256) frames; the last payload is zero-padded
    """
    if not data:
        raise EmptyData("nothing to frame")

    n_frames = math.ceil(len(data) * 8 / PAYLOAD_BITS)
    padded = bytes(data) + bytes(n_frames * PAYLOAD_BYTES - len(data))
    frames = []
    for i in range(n_frames):
        chunk = padded[i * PAYLOAD_BYTES:(i + 1) * PAYLOAD_BYTES]
        frames.append(Frame.for_payload(BitString.from_bytes(chunk)))
    return frames


def serialize_frame(frame: Frame) -> BitString:
    """preamble || payload || crc, 280 bits."""
    return frame.preamble + frame.payload + BitString.from_int(frame.crc, CRC_BITS)


def parse_frame(bits: BitString) -> Frame:
    """
    Validate a 280-bit frame and return it.

    Raises BadLength, BadPreamble or CrcMismatch (in that order of checking).
    """
    if len(bits) != FRAME_BITS:
        raise BadLength(FRAME_BITS, len(bits))

    preamble = bits[:len(PREAMBLE)]
    if preamble != PREAMBLE:
        raise BadPreamble(f"preamble {preamble.to_str()} != {PREAMBLE.to_str()}")

    payload = bits[len(PREAMBLE):len(PREAMBLE) + PAYLOAD_BITS]
    received = bits[len(PREAMBLE) + PAYLOAD_BITS:].to_int()
    computed = crc16(payload)
    if computed != received:
        raise CrcMismatch(computed, received)
    return Frame(payload=payload, crc=received)


def frames_to_bytes(frames: Sequence[Frame]) -> bytes:
    """Concatenate payloads, padding included."""
    return b''.join(f.payload_bytes() for f in frames)

