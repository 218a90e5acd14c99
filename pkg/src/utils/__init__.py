"""
Utilities module for the keyboard LED channel toolkit.
Contains the shared bit string type, the error hierarchy and trace file formats
(import src.utils.trace_io directly; it depends on the channel layer).
"""

from . import bits, errors

__all__ = ['bits', 'errors']
