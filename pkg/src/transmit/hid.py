"""
HID Module - build and parse the USB HID SetReport control transfer that sets
the keyboard status LEDs. Requests are constructed byte-exact but never sent.

Setup packet (little-endian) followed by the one-byte data stage:

    bmRequestType  0x21    class request, host-to-device, interface recipient
    bRequest       0x09    SET_REPORT
    wValue         0x0200  report type 0x02 (output) high byte, report ID 0x00 low byte
    wIndex         interface number
    wLength        1
    data           bit0 Num Lock, bit1 Caps Lock, bit2 Scroll Lock, bits 3-7 reserved
"""
import struct
from dataclasses import dataclass
from typing import List, Tuple

from src.transmit.modulation import LedSchedule, LedState
from src.utils.errors import InvariantViolation

BM_REQUEST_TYPE = 0x21
B_REQUEST_SET_REPORT = 0x09
REPORT_TYPE_OUTPUT = 0x02
REPORT_ID = 0x00
W_VALUE = (REPORT_TYPE_OUTPUT << 8) | REPORT_ID
W_LENGTH = 1

NUM_LOCK = 0x01
CAPS_LOCK = 0x02
SCROLL_LOCK = 0x04
RESERVED_MASK = 0xF8

_SETUP_FORMAT = '<BBHHHB'
PACKET_SIZE = struct.calcsize(_SETUP_FORMAT)  # 9


def led_bitfield(state: LedState) -> int:
    """(led3 << 2) | (led2 << 1) | led1"""
    return (int(state.led3) << 2) | (int(state.led2) << 1) | int(state.led1)


def state_from_bitfield(value: int) -> LedState:
    if value & RESERVED_MASK:
        raise InvariantViolation(f"reserved LED bits set in 0x{value:02X}")
    return LedState(bool(value & NUM_LOCK), bool(value & CAPS_LOCK), bool(value & SCROLL_LOCK))


@dataclass(frozen=True)
class SetReportRequest:
    bmRequestType: int = BM_REQUEST_TYPE
    bRequest: int = B_REQUEST_SET_REPORT
    wValue: int = W_VALUE
    wIndex: int = 0
    wLength: int = W_LENGTH
    data: int = 0

    def check(self) -> None:
        """Raise InvariantViolation if any fixed field or reserved bit is off."""
        fixed = (('bmRequestType', BM_REQUEST_TYPE), ('bRequest', B_REQUEST_SET_REPORT),
                 ('wValue', W_VALUE), ('wLength', W_LENGTH))
        for name, expected in fixed:
            if getattr(self, name) != expected:
                raise InvariantViolation(f"{name}=0x{getattr(self, name):X}, expected 0x{expected:X}")
        if not 0 <= self.wIndex <= 0xFFFF:
            raise InvariantViolation(f"wIndex out of 16-bit range: {self.wIndex}")
        if not 0 <= self.data <= 0xFF or self.data & RESERVED_MASK:
            raise InvariantViolation(f"reserved LED bits set in data 0x{self.data:02X}")

    @property
    def state(self) -> LedState:
        return state_from_bitfield(self.data)


def build_set_report(state: LedState, interface: int = 0) -> SetReportRequest:
    """SetReport request that puts the LEDs into state."""
    if not 0 <= interface <= 0xFFFF:
        raise InvariantViolation(f"interface must fit in 16 bits, got {interface}")
    return SetReportRequest(wIndex=interface, data=led_bitfield(state))


def serialize_setup_packet(request: SetReportRequest) -> bytes:
    """8-byte setup packet plus the data stage, 9 bytes."""
    request.check()
    return struct.pack(_SETUP_FORMAT, request.bmRequestType, request.bRequest, request.wValue,
                       request.wIndex, request.wLength, request.data)


def parse_setup_packet(packet: bytes) -> SetReportRequest:
    if len(packet) != PACKET_SIZE:
        raise InvariantViolation(f"packet must be {PACKET_SIZE} bytes, got {len(packet)}")
    request = SetReportRequest(*struct.unpack(_SETUP_FORMAT, bytes(packet)))
    request.check()
    return request


def schedule_to_reports(schedule: LedSchedule, interface: int = 0) -> List[Tuple[float, SetReportRequest]]:
    """
    One request per state change, stamped with the segment start time (us).

    The first segment always produces a request; repeated states do not.
    """
    reports = []
    previous = None
    t = 0.0
    for state, duration in schedule.segments:
        if state != previous:
            reports.append((t, build_set_report(state, interface)))
            previous = state
        t += duration
    return reports


def hex_dump(packet: bytes) -> str:
    """Space-separated uppercase hex, e.g. '21 09 00 02 00 00 01 00 07'."""
    return ' '.join(f'{b:02X}' for b in packet)
