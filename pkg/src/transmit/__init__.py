"""
Transmit module - everything between raw bytes and LED state changes.
"""

from .framing import Frame, build_frames, crc16, parse_frame, serialize_frame
from .modulation import (
    LedSchedule,
    LedState,
    SymbolTiming,
    build_transmission,
    modulate,
    modulate_ask3,
    modulate_ask_amplitude,
    modulate_bfsk,
    modulate_ook,
    theoretical_bitrate_camera,
)
from .hid import SetReportRequest, build_set_report, schedule_to_reports, serialize_setup_packet

__all__ = [
    'Frame',
    'build_frames',
    'crc16',
    'parse_frame',
    'serialize_frame',
    'LedSchedule',
    'LedState',
    'SymbolTiming',
    'build_transmission',
    'modulate',
    'modulate_ask3',
    'modulate_ask_amplitude',
    'modulate_bfsk',
    'modulate_ook',
    'theoretical_bitrate_camera',
    'SetReportRequest',
    'build_set_report',
    'schedule_to_reports',
    'serialize_setup_packet',
]
