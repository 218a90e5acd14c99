"""
Keyboard LED Channel Toolkit - Main Package

This package contains:
- transmit: framing, LED modulation and HID SetReport synthesis
- channel: link-budget optics, keyboard profiles, sensor/camera simulation, countermeasures
- receive: thresholds, preamble sync, symbol slicing, demodulation and BER
- analytics: BER sweeps, noise calibration, rate and link-budget tables
- ui: command-line interface
- data: bundled configuration paths
- utils: bit strings, errors and trace file formats
"""

from . import data, utils, transmit, channel, receive, analytics, ui

__all__ = ['data', 'utils', 'transmit', 'channel', 'receive', 'analytics', 'ui']
