"""
encode - frame and modulate a file into an LED schedule, optionally rendering
it through the simulated sensor or camera.
"""
import argparse
import logging
import os
from typing import List

from src.channel.countermeasures import apply_led_rate_limit, inject_random_blinks
from src.channel.simulator import simulate_camera, simulate_sensor
from src.transmit.framing import FRAME_BITS, build_frames
from src.transmit.hid import schedule_to_reports
from src.transmit.modulation import build_transmission, schedule_bitrate
from src.ui.components import render_header, render_metrics_cards, render_status, render_warning
from src.ui.config import RunConfig
from src.utils.errors import ConfigError
from src.utils.trace_io import write_camera_trace, write_schedule, write_sensor_trace

logger = logging.getLogger(__name__)


def add_parser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser('encode', parents=parents, help="encode a file into an LED schedule",
                                   description=__doc__)
    parser.add_argument('--in', dest='input_path', required=True, help="file to transmit")
    parser.add_argument('--out', dest='output_path', required=True, help="schedule CSV to write")
    parser.add_argument('--simulate', action='store_true', help="also write a simulated receiver trace")
    parser.add_argument('--trace', dest='trace_path', help="trace path (default: <out>.trace.csv)")
    parser.add_argument('--merge', action='store_true', help="fuse adjacent rows with the same LED state")
    parser.add_argument('--lock-ms', type=float, help="apply the LED rate-limit countermeasure")
    parser.add_argument('--jam-hz', type=float, help="overlay random LED blinks at this mean rate")
    return parser


def _trace_path(cfg: RunConfig, args) -> str:
    if getattr(args, 'trace_path', None):
        return args.trace_path
    return os.path.splitext(cfg.output_path)[0] + '.trace.csv'


def run(cfg: RunConfig, args) -> int:
    if getattr(args, 'simulate', False) and cfg.scheme == 'ask3' and cfg.receiver == 'sensor':
        raise ConfigError("ask3 needs per-LED observation; simulate it with --receiver camera")
    with open(cfg.input_path, 'rb') as fh:
        data = fh.read()

    profile = cfg.keyboard()
    timing = cfg.timing()
    for problem in timing.violations(cfg.scheme, profile.min_switch_us):
        render_warning(f"{profile.label}: {problem}")

    schedule = build_transmission(data, cfg.scheme, timing, cfg.led_mask(),
                                  merge=bool(getattr(args, 'merge', False)))
    frames = len(build_frames(data))
    if cfg.lock_ms is not None:
        schedule = apply_led_rate_limit(schedule, cfg.lock_ms)
    if getattr(args, 'jam_hz', None):
        schedule = inject_random_blinks(schedule, rate_hz=args.jam_hz, seed=cfg.seed)
    write_schedule(schedule, cfg.output_path)

    render_header(f"🔦 Encoded {os.path.basename(cfg.input_path)} ({cfg.scheme}, {profile.label})")
    render_metrics_cards({
        "Bytes": len(data),
        "Frames": frames,
        "Symbols": schedule.symbol_count,
        "Schedule rows": len(schedule),
        "HID reports": len(schedule_to_reports(schedule)),
        "Air time": f"{schedule.total_duration / 1000:.3f} ms",
        "Channel bit rate": f"{schedule_bitrate(frames * FRAME_BITS, schedule):.1f} bit/s",
        "Schedule": cfg.output_path,
    })

    if getattr(args, 'simulate', False):
        path = _trace_path(cfg, args)
        if cfg.receiver == 'camera':
            trace = simulate_camera(schedule.merged(), cfg.fps, cfg.exposure, cfg.noise())
            write_camera_trace(trace, path)
            render_metrics_cards({"Camera frames": len(trace), "Trace": path})
        else:
            trace = simulate_sensor(schedule.merged(), profile, cfg.sample_rate, cfg.noise())
            write_sensor_trace(trace, path)
            render_metrics_cards({"Samples": len(trace), "Trace": path})
            if trace.short_segments:
                render_warning(f"{trace.short_segments} segment(s) faster than the keyboard can switch")
    render_status(True, "encode complete")
    return 0
