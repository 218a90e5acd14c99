"""
Metrics Module - bit error rate.
"""
import numpy as np

from src.utils.bits import BitString


def bit_errors(sent: BitString, received: BitString) -> int:
    """Hamming distance; missing trailing bits on either side count as errors."""
    n = min(len(sent), len(received))
    flips = int(np.count_nonzero(sent.as_array()[:n] != received.as_array()[:n]))
    return flips + abs(len(sent) - len(received))


def ber(sent: BitString, received: BitString) -> float:
    """Bit errors over the longer of the two lengths; 0.0 when both are empty."""
    n = max(len(sent), len(received))
    if n == 0:
        return 0.0
    return bit_errors(sent, received) / n
