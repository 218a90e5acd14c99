"""
Trace I/O Module - text formats for schedules, sensor traces and camera traces.

Schedule:      CSV with header `state_bits,duration_us`
Sensor trace:  `sample_rate_hz,<int>` then one mW value per line
Camera trace:  `fps,<int>` then `frame,led1,led2,led3` rows
"""
import io
import logging
import os
from typing import Dict, Tuple

import numpy as np
import pandas as pd

from src.channel.simulator import CameraTrace, SensorTrace
from src.transmit.modulation import LedSchedule, LedState
from src.utils.errors import LedChannelError, TraceFormatError

logger = logging.getLogger(__name__)

SCHEDULE_COLUMNS = ['state_bits', 'duration_us']
CAMERA_COLUMNS = ['frame', 'led1', 'led2', 'led3']


def _number_text(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def _split_header(path: str, key: str) -> Tuple[float, str]:
    """Parse the `key,<number>` first line and return (number, remaining text)."""
    if not os.path.exists(path):
        raise TraceFormatError(f"file not found: {path}")
    with open(path, encoding='utf-8') as fh:
        first = fh.readline().strip()
        rest = fh.read()
    parts = [p.strip() for p in first.split(',')]
    if len(parts) != 2 or parts[0] != key:
        raise TraceFormatError(f"{path}: first line must be '{key},<number>', got {first!r}")
    try:
        value = float(parts[1])
    except ValueError:
        raise TraceFormatError(f"{path}: {key} is not a number: {parts[1]!r}")
    if not value > 0:
        raise TraceFormatError(f"{path}: {key} must be positive")
    return value, rest


def schedule_to_frame(schedule: LedSchedule) -> pd.DataFrame:
    return pd.DataFrame({
        'state_bits': [s.to_bits() for s in schedule.states],
        'duration_us': schedule.durations,
    }, columns=SCHEDULE_COLUMNS)


def write_schedule(schedule: LedSchedule, path: str) -> None:
    schedule_to_frame(schedule).to_csv(path, index=False, float_format='%.6f')
    logger.debug("wrote %d schedule rows to %s", len(schedule), path)


def read_schedule(path: str) -> LedSchedule:
    if not os.path.exists(path):
        raise TraceFormatError(f"file not found: {path}")
    try:
        df = pd.read_csv(path, dtype={'state_bits': str})
    except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as e:
        raise TraceFormatError(f"{path}: {e}") from e
    if list(df.columns) != SCHEDULE_COLUMNS:
        raise TraceFormatError(f"{path}: expected columns {SCHEDULE_COLUMNS}, got {list(df.columns)}")
    try:
        segments = tuple((LedState.from_bits(str(bits).zfill(3)), float(d))
                         for bits, d in zip(df['state_bits'], df['duration_us']))
        return LedSchedule(segments)
    except (ValueError, LedChannelError) as e:
        raise TraceFormatError(f"{path}: {e}") from e


def write_sensor_trace(trace: SensorTrace, path: str) -> None:
    with open(path, 'w', encoding='utf-8', newline='') as fh:
        fh.write(f"sample_rate_hz,{_number_text(trace.sample_rate)}\n")
        pd.Series(trace.samples).to_csv(fh, header=False, index=False, float_format='%.9g')


def read_sensor_trace(path: str) -> SensorTrace:
    rate, rest = _split_header(path, 'sample_rate_hz')
    if not rest.strip():
        return SensorTrace(rate, np.empty(0))
    try:
        values = pd.read_csv(io.StringIO(rest), header=None).iloc[:, 0]
        samples = pd.to_numeric(values, errors='raise').to_numpy(dtype=float)
    except (pd.errors.ParserError, ValueError) as e:
        raise TraceFormatError(f"{path}: {e}") from e
    try:
        return SensorTrace(rate, samples)
    except LedChannelError as e:
        raise TraceFormatError(f"{path}: {e}") from e


def write_camera_trace(trace: CameraTrace, path: str) -> None:
    df = pd.DataFrame(trace.frames.astype(int), columns=CAMERA_COLUMNS[1:])
    df.insert(0, 'frame', np.arange(len(trace)))
    with open(path, 'w', encoding='utf-8', newline='') as fh:
        fh.write(f"fps,{_number_text(trace.fps)}\n")
        df.to_csv(fh, index=False)


def read_camera_trace(path: str, exposure_fraction: float = 0.9) -> CameraTrace:
    fps, rest = _split_header(path, 'fps')
    lines = rest.strip().splitlines()
    if not lines:
        return CameraTrace(fps, np.empty((0, 3)), exposure_fraction)
    has_header = lines[0].replace(' ', '').lower() == ','.join(CAMERA_COLUMNS)
    try:
        df = pd.read_csv(io.StringIO(rest), header=0 if has_header else None)
        if df.shape[1] != 4:
            raise TraceFormatError(f"{path}: camera rows need 4 columns, got {df.shape[1]}")
        df.columns = CAMERA_COLUMNS
        df = df.sort_values('frame')
        frames = df[CAMERA_COLUMNS[1:]].apply(pd.to_numeric, errors='raise').to_numpy(dtype=float)
        return CameraTrace(fps, frames, exposure_fraction)
    except TraceFormatError:
        raise
    except (pd.errors.ParserError, ValueError, LedChannelError) as e:
        raise TraceFormatError(f"{path}: {e}") from e


def write_report(values: Dict[str, object], fh) -> None:
    """Machine-readable `key=value` block."""
    for key, value in values.items():
        fh.write(f"{key}={value}\n")


def detect_trace_kind(path: str) -> str:
    """'sensor' or 'camera', from the header key of a trace file."""
    if not os.path.exists(path):
        raise TraceFormatError(f"file not found: {path}")
    with open(path, encoding='utf-8') as fh:
        key = fh.readline().split(',')[0].strip()
    kinds = {'sample_rate_hz': 'sensor', 'fps': 'camera'}
    if key not in kinds:
        raise TraceFormatError(f"{path}: not a trace file (header key {key!r})")
    return kinds[key]
