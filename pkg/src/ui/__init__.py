"""
UI module for the keyboard LED channel toolkit.
Contains the command-line application, its subcommands and console components.
"""

from . import components, commands
from .app import main, build_parser

__all__ = ['components', 'commands', 'main', 'build_parser']
