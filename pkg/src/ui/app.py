"""
Main command-line entry point.
Handles argument parsing and subcommand routing for the keyboard LED channel toolkit.
"""

import argparse
import logging
import sys
from typing import List, Optional

from src.transmit.modulation import SCHEMES
from src.ui import commands
from src.ui.components import render_status
from src.ui.config import RECEIVERS, RunConfig
from src.utils.errors import DemodError, FramingError, LedChannelError, TraceFormatError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3

# Errors about the data being processed; everything else is a usage/config problem
DATA_ERRORS = (TraceFormatError, DemodError, FramingError)


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("common")
    group.add_argument('-v', '--verbose', action='count', default=0, help="more logging (-vv for debug)")
    group.add_argument('--profile', help="keyboard profile (section, vendor or model)")
    group.add_argument('--profiles-file', dest='profiles_path', help="alternative profile INI file")
    group.add_argument('--seed', type=int, help="seed for every random draw (default 0)")
    return parser


def _channel_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("modulation and channel")
    group.add_argument('--scheme', choices=SCHEMES, help="modulation scheme (default ook)")
    group.add_argument('--ton-us', dest='t_on_us', type=float, help="on time / long pulse (us)")
    group.add_argument('--toff-us', dest='t_off_us', type=float, help="off time / short pulse (us)")
    group.add_argument('--td-us', dest='t_d_us', type=float, help="separator (us)")
    group.add_argument('--tall-us', dest='t_all_us', type=float, help="ASK symbol duration (us)")
    group.add_argument('--bitrate', type=float, help="derive timing from a target bit rate")
    group.add_argument('--leds', help="LED mask for OOK/B-FSK as three bits (default 100)")
    group.add_argument('--receiver', choices=RECEIVERS, help="sensor (photodiode) or camera")
    group.add_argument('--sigma', type=float, help="noise sigma: mW for the sensor, counts for the camera")
    group.add_argument('--sample-rate', dest='sample_rate', type=float, help="sensor sample rate (Hz)")
    group.add_argument('--fps', type=float, help="camera frame rate")
    group.add_argument('--exposure', type=float, help="camera exposure as a fraction of the frame period")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ledchannel',
        description="Keyboard status-LED optical channel: encode, simulate, decode and budget.")
    subparsers = parser.add_subparsers(dest='subcommand', metavar='COMMAND')
    subparsers.required = True
    common, channel = _common_parser(), _channel_parser()
    for name, module in commands.COMMANDS.items():
        parents = [common] if name in ('linkbudget', 'hid-packet') else [common, channel]
        sub = module.add_parser(subparsers, parents)
        sub.set_defaults(handler=module.run)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr,
                        force=True)


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    configure_logging(args.verbose)

    try:
        cfg = RunConfig.from_args(args)
        return args.handler(cfg, args)
    except DATA_ERRORS as e:
        render_status(False, f"{type(e).__name__}: {e}")
        return EXIT_DATA
    except LedChannelError as e:
        render_status(False, f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except OSError as e:
        render_status(False, f"I/O error: {e}")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
