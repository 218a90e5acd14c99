"""
Error hierarchy for the keyboard LED channel toolkit.

Every failure raised by the transmit, channel and receive layers derives from
LedChannelError, grouped per layer so callers can catch as broadly as they need.
"""
from typing import Optional


class LedChannelError(Exception):
    """Base class for all toolkit errors."""


# Framing

class FramingError(LedChannelError):
    """Frame construction or validation failed."""


class EmptyData(FramingError):
    """No bytes were given to packetize."""


class BadLength(FramingError):
    """A bit string has the wrong length for the operation."""

    def __init__(self, expected: int, actual: int):
        super().__init__(f"expected {expected} bits, got {actual}")
        self.expected = expected
        self.actual = actual


class BadPreamble(FramingError):
    """The first eight bits do not match the alternating preamble."""


class CrcMismatch(FramingError):
    """Payload checksum does not match the transmitted one."""

    def __init__(self, computed: int, received: int):
        super().__init__(f"crc mismatch: computed 0x{computed:04X}, received 0x{received:04X}")
        self.computed = computed
        self.received = received


# Modulation

class ModulationError(LedChannelError):
    """Bits could not be mapped onto an LED schedule."""


class EmptyMask(ModulationError):
    """The LED mask selects no LED."""


class InvalidTiming(ModulationError):
    """Symbol durations are inconsistent or non-positive."""


# HID

class HidError(LedChannelError):
    """HID request construction or parsing failed."""


class InvariantViolation(HidError):
    """A SetReport request breaks a fixed header or reserved-bit rule."""


# Optics

class OpticsError(LedChannelError):
    """Link-budget input outside the model's validity range."""


class OutOfPattern(OpticsError):
    """Irradiance angle at or beyond the emitter's hemisphere edge."""


class GeometryError(OpticsError):
    """Lens radius is not small compared with the distance."""


# Channel

class ChannelError(LedChannelError):
    """Channel simulation failed."""


class NyquistViolation(ChannelError):
    """Sample rate too low for the shortest schedule segment."""


# Demodulation

class DemodError(LedChannelError):
    """Trace could not be demodulated."""


class EmptyTrace(DemodError):
    """Trace has no samples."""


class NoSignal(DemodError):
    """Trace is flat; no threshold can separate on from off."""


class PreambleNotFound(DemodError):
    """A full scan found no preamble."""


class UnsupportedCombination(DemodError):
    """The receiver type cannot observe the requested scheme."""


# Configuration and files

class ConfigError(LedChannelError):
    """Invalid configuration, parameter file or command-line value."""


class UnknownProfile(ConfigError):
    """No keyboard profile with the requested name."""

    def __init__(self, name: str, available: Optional[list] = None):
        hint = f" (available: {', '.join(available)})" if available else ""
        super().__init__(f"unknown keyboard profile '{name}'{hint}")
        self.name = name


class TraceFormatError(LedChannelError):
    """A schedule or trace file is malformed."""
