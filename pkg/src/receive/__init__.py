"""
Receive module - recover bits and frames from sensor and camera traces.
"""

from .threshold import ThresholdEstimate, estimate_threshold
from .sync import SyncResult, sync_preamble
from .demodulator import DecodeConfig, DecodeReport, decode_camera, decode_sensor, demodulate_bits
from .metrics import ber

__all__ = [
    'ThresholdEstimate',
    'estimate_threshold',
    'SyncResult',
    'sync_preamble',
    'DecodeConfig',
    'DecodeReport',
    'decode_camera',
    'decode_sensor',
    'demodulate_bits',
    'ber',
]
