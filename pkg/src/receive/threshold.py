"""
Threshold Module - decision levels for sampled LED power.

Two-level traces are cut at their temporal mean. Four-level (amplitude ASK)
traces are clustered with 1-D k-means and cut halfway between adjacent
cluster centers.
"""
import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy.ndimage import uniform_filter1d
from sklearn.cluster import KMeans

from src.channel.simulator import SensorTrace
from src.utils.errors import DemodError, EmptyTrace

logger = logging.getLogger(__name__)

KMEANS_MAX_POINTS = 50_000
_MAD_TO_SIGMA = 1.4826


@dataclass(frozen=True)
class ThresholdEstimate:
    """
    Ascending cut points between decision levels.

    One cut for on/off traces, three for four-level traces. no_signal is set
    when the trace is flat and the cuts are meaningless.
    """

    cuts: Tuple[float, ...]
    no_signal: bool = False
    centers: Tuple[float, ...] = ()

    @property
    def value(self) -> float:
        """The single on/off threshold."""
        return self.cuts[0]

    @property
    def levels(self) -> int:
        return len(self.cuts) + 1

    def classify(self, values: np.ndarray) -> np.ndarray:
        """Level index 0..len(cuts) for each value."""
        return np.searchsorted(np.asarray(self.cuts), np.asarray(values, dtype=float), side='right')


def _as_array(trace: Union[SensorTrace, np.ndarray]) -> np.ndarray:
    values = trace.samples if isinstance(trace, SensorTrace) else np.asarray(trace, dtype=float)
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.size == 0:
        raise EmptyTrace("cannot estimate a threshold from an empty trace")
    return values


def estimate_threshold(trace: Union[SensorTrace, np.ndarray], levels: int = 2,
                       smooth: int = 1) -> ThresholdEstimate:
    """
    Temporal-mean threshold (levels=2) or 4-means cut points (levels=4).

    Args:
        trace: sensor trace or raw sample array
        levels: 2 for on/off, 4 for amplitude ASK
        smooth: moving-average length applied before clustering

    Returns:
        ThresholdEstimate; flagged no_signal for a constant trace
    """
    if levels not in (2, 4):
        raise DemodError(f"level count must be 2 or 4, got {levels}")
    values = _as_array(trace)
    if np.ptp(values) == 0:
        logger.warning("flat trace at %.6g, no signal to threshold", values[0])
        level = float(values[0])
        return ThresholdEstimate(tuple([level] * (levels - 1)), no_signal=True)

    if levels == 2:
        return ThresholdEstimate((float(values.mean()),))

    if smooth > 1:
        values = uniform_filter1d(values, size=int(smooth), mode='nearest')
    if values.size > KMEANS_MAX_POINTS:
        step = int(np.ceil(values.size / KMEANS_MAX_POINTS))
        values = values[::step]

    lo, hi = np.quantile(values, [0.005, 0.995])
    if hi <= lo:
        lo, hi = float(values.min()), float(values.max())
    init = np.linspace(lo, hi, 4).reshape(-1, 1)
    if np.unique(values).size < 4:
        centers = init.ravel()
    else:
        model = KMeans(n_clusters=4, init=init, n_init=1, random_state=0).fit(values.reshape(-1, 1))
        centers = np.sort(model.cluster_centers_.ravel())
    cuts = tuple(float(c) for c in (centers[:-1] + centers[1:]) / 2)
    return ThresholdEstimate(cuts, centers=tuple(float(c) for c in centers))


def noise_sigma(values: np.ndarray) -> float:
    """
    Per-sample white-noise sigma from the median absolute deviation of first
    differences; step edges barely move it.
    """
    values = np.asarray(values, dtype=float)
    if values.size < 3:
        return 0.0
    diff = np.diff(values)
    mad = np.median(np.abs(diff - np.median(diff)))
    return float(_MAD_TO_SIGMA * mad / np.sqrt(2.0))


def midpoint_threshold(on_values: np.ndarray, off_values: np.ndarray) -> float:
    return 0.5 * (float(np.mean(on_values)) + float(np.mean(off_values)))
