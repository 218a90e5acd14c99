"""
CLI subcommands. Each module exposes add_parser(subparsers, parents) and
run(config, args) -> exit code.
"""

from . import encode, decode, simulate, linkbudget, hid_packet

COMMANDS = {
    'encode': encode,
    'decode': decode,
    'simulate': simulate,
    'linkbudget': linkbudget,
    'hid-packet': hid_packet,
}

__all__ = ['encode', 'decode', 'simulate', 'linkbudget', 'hid_packet', 'COMMANDS']
