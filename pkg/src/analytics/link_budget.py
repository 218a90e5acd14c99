"""
Link Budget Analytics Module - received power, detector output and range
figures for the photodiode and camera receivers
"""
import logging
import math
from dataclasses import replace
from typing import Dict, Iterable, Optional

import pandas as pd

from src.channel.optics import (camera_range, diffraction_limit, diffraction_limited_distance,
                                effective_distance, max_one_pixel_distance, pd_voltage, received_power,
                                required_tx_power, tx_power_from_received)
from src.channel.profiles import LinkDefaults
from .base import AnalyticsBase

logger = logging.getLogger(__name__)


class LinkBudgetAnalytics(AnalyticsBase):
    """
    Link budget evaluation for a parameter set (defaults from the [link]
    section of the profile file).
    """

    def link_budget_report(self, params: Optional[LinkDefaults] = None) -> Dict:
        """
        Evaluate the link at its configured distance and solve for range.

        Args:
            params: link, photodiode and camera parameters

        Returns:
            Dictionary of figures in SI units
        """
        params = params or self._link_defaults()
        link, photodiode, camera = params.link, params.photodiode, params.camera

        report = {
            'p_tx_w': link.p_tx,
            'theta_deg': math.degrees(link.theta),
            'effective_distance_m': effective_distance(link, photodiode),
            'target_distance_m': params.target_distance_m,
            'required_p_tx_w': required_tx_power(link, photodiode, params.target_distance_m),
            'diffraction_limit_m': diffraction_limit(camera),
            'one_pixel_distance_m': max_one_pixel_distance(camera),
            'diffraction_limited_distance_m': diffraction_limited_distance(camera),
            'camera_range_m': camera_range(camera),
        }
        report['meets_target'] = report['effective_distance_m'] >= params.target_distance_m
        if link.d is not None:
            p_r = received_power(link)
            report.update(d_m=link.d, p_received_w=p_r, v_out_v=pd_voltage(p_r, photodiode))
        else:
            logger.info("link has no distance; skipping received power")

        logger.debug("link budget: d_max=%.2f m for P_t=%.3g W", report['effective_distance_m'], link.p_tx)
        return report

    def inferred_tx_power(self, profiles: Optional[Iterable] = None) -> pd.DataFrame:
        """
        LED power each keyboard must emit for its measured on-level to arrive
        at the link distance.
        """
        params = self._link_defaults()
        if params.link.d is None:
            return pd.DataFrame({"error": ["link distance not configured"]})
        rows = []
        for profile in self._select(profiles):
            p_received = profile.p_on_mw * 1e-3
            p_tx = tx_power_from_received(p_received, params.link)
            rows.append({
                'profile': profile.name,
                'p_on_mw': profile.p_on_mw,
                'd_m': params.link.d,
                'p_tx_w': p_tx,
                'effective_distance_m': effective_distance(replace(params.link, p_tx=p_tx), params.photodiode),
            })
        return pd.DataFrame(rows)
