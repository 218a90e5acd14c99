"""
hid-packet - dump the SetReport setup packet(s) that drive the keyboard LEDs,
for one LED state or for every change in a schedule file.
"""
import argparse
import logging
from typing import List

from src.channel.countermeasures import monitor_led_activity
from src.transmit.hid import build_set_report, hex_dump, schedule_to_reports, serialize_setup_packet
from src.transmit.modulation import LedState
from src.ui.components import render_status, render_warning
from src.ui.config import RunConfig
from src.utils.errors import ConfigError
from src.utils.trace_io import read_schedule

logger = logging.getLogger(__name__)


def add_parser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser('hid-packet', parents=parents, help="print HID SetReport packets",
                                   description=__doc__)
    parser.add_argument('state', nargs='?', help="LED state as three bits: Num, Caps, Scroll (e.g. 101)")
    parser.add_argument('--interface', type=int, default=0, help="USB interface number (wIndex)")
    parser.add_argument('--in', dest='input_path', help="schedule CSV; dump one packet per LED change")
    parser.add_argument('--monitor', action='store_true',
                        help="run the LED activity monitor over the schedule's changes")
    parser.add_argument('--window-ms', type=float, default=1000.0, help="monitor window")
    parser.add_argument('--max-changes', type=int, default=10, help="changes allowed per window")
    return parser


def run(cfg: RunConfig, args) -> int:
    interface = getattr(args, 'interface', 0) or 0
    state_text = getattr(args, 'state', None)
    if (state_text is None) == (cfg.input_path is None):
        raise ConfigError("give exactly one of an LED state or --in SCHEDULE")

    if state_text is not None:
        try:
            state = LedState.from_bits(state_text)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        print(hex_dump(serialize_setup_packet(build_set_report(state, interface))))
        return 0

    reports = schedule_to_reports(read_schedule(cfg.input_path), interface)
    for t_us, request in reports:
        print(f"{t_us:.3f},{hex_dump(serialize_setup_packet(request))}")

    if getattr(args, 'monitor', False):
        alerts = monitor_led_activity(reports, args.window_ms, args.max_changes)
        for alert in alerts:
            render_warning(f"{alert.changes} LED changes between {alert.start_us / 1000:.1f} ms "
                           f"and {alert.end_us / 1000:.1f} ms")
        render_status(not alerts, f"activity monitor: {len(alerts)} alert(s)")
    return 0
