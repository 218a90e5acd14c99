"""
decode - recover bytes from a sensor or camera trace file.
"""
import argparse
import logging
from dataclasses import replace
from typing import List

from src.receive.demodulator import decode_camera, decode_sensor
from src.ui.components import render_decode_report, render_status
from src.ui.config import RunConfig
from src.utils.errors import ConfigError
from src.utils.trace_io import detect_trace_kind, read_camera_trace, read_sensor_trace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA_ERROR = 3


def add_parser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser('decode', parents=parents, help="decode a trace file",
                                   description=__doc__)
    parser.add_argument('--in', dest='input_path', required=True, help="sensor or camera trace")
    parser.add_argument('--out', dest='output_path', help="where to write the recovered bytes")
    parser.add_argument('--expect', help="original file, to report BER against")
    parser.add_argument('--length', type=int, help="trim recovered bytes to this length")
    return parser


def run(cfg: RunConfig, args) -> int:
    kind = detect_trace_kind(cfg.input_path)
    explicit = getattr(args, 'receiver', None)
    if explicit and explicit != kind:
        raise ConfigError(f"{cfg.input_path} is a {kind} trace, not a {explicit} trace")

    expected = None
    if getattr(args, 'expect', None):
        with open(args.expect, 'rb') as fh:
            expected = fh.read()

    if kind == 'camera':
        trace = read_camera_trace(cfg.input_path, cfg.exposure)
        cfg = replace(cfg, receiver='camera', fps=trace.fps)
        report = decode_camera(trace, cfg.decode_config(), expected)
    else:
        trace = read_sensor_trace(cfg.input_path)
        cfg = replace(cfg, receiver='sensor', sample_rate=trace.sample_rate)
        report = decode_sensor(trace, cfg.decode_config(), expected)

    render_decode_report(report)

    recovered = report.recovered
    length = getattr(args, 'length', None)
    if length is None and expected is not None:
        length = len(expected)
    if length is not None:
        recovered = recovered[:length]
    if cfg.output_path:
        with open(cfg.output_path, 'wb') as fh:
            fh.write(recovered)

    if not report.frames:
        render_status(False, "no frame found in trace")
        return EXIT_DATA_ERROR
    if not report.all_ok:
        render_status(False, f"{report.frames_failed} of {len(report.frames)} frame(s) failed")
        return EXIT_DATA_ERROR
    render_status(True, f"{report.frames_ok} frame(s) decoded, {len(recovered)} byte(s) recovered")
    return EXIT_OK
