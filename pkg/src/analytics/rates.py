"""
Rate Analytics Module - achievable bit rates from keyboard timing limits and
camera frame rates, set against the rates reported in the field measurements
"""
from typing import Dict, Optional

import pandas as pd

from src.transmit.modulation import ask_level_rate, ook_blink_bitrate, theoretical_bitrate_camera
from .base import AnalyticsBase

# Shortest single-LED on/off blink any of the keyboards sustained
SINGLE_LED_BLINK_US = 800.0
SINGLE_LED_REPORTED_BITRATE = 1250.0

# Relative deviation above which a reported rate disagrees with its timing
RATE_TOLERANCE = 0.02

# Reported figures per profile section: multi-LED blink rate, distinct ASK
# levels per second, and the duration/rate of the bulk transfer test
REPORTED_RATES: Dict[str, Dict[str, float]] = {
    'dell': {'multi_blink_bitrate': 3570, 'ask_levels_per_s': 1730, 'transfer_ms': 36, 'transfer_bitrate': 1665},
    'lenovo': {'multi_blink_bitrate': 2000, 'ask_levels_per_s': 2000, 'transfer_ms': 25, 'transfer_bitrate': 2400},
    'logitech': {'multi_blink_bitrate': 2270, 'ask_levels_per_s': 2000, 'transfer_ms': 28, 'transfer_bitrate': 2240},
    'silverline': {'multi_blink_bitrate': 2500, 'ask_levels_per_s': 2850, 'transfer_ms': 22, 'transfer_bitrate': 2725},
}

# (receiver, frame rate, LEDs, reported bit/s); the smartphone figure is an
# empirical ceiling below the theoretical two-frames-per-bit rate
CAMERA_ROWS = (
    ('DSLR / security camera / webcam', 30, 1, 15),
    ('DSLR / security camera / webcam', 30, 3, 45),
    ('Smartphone (120 fps mode)', 120, 3, 130),
)


def _agrees(value: float, reported: Optional[float]) -> Optional[bool]:
    if reported is None:
        return None
    return abs(value - reported) <= RATE_TOLERANCE * reported


class RateAnalytics(AnalyticsBase):
    """
    Bit-rate tables derived from profile timing.
    """

    def blink_rates(self) -> pd.DataFrame:
        """One bit per minimal blink, single LED and all three LEDs together."""
        rows = []
        single = ook_blink_bitrate(SINGLE_LED_BLINK_US)
        for profile in self._select():
            reported = REPORTED_RATES.get(profile.name, {}).get('multi_blink_bitrate')
            multi = ook_blink_bitrate(profile.min_blink_multi_us) if profile.min_blink_multi_us else None
            rows.append({
                'profile': profile.name,
                'single_blink_us': SINGLE_LED_BLINK_US,
                'single_bitrate': single,
                'single_reported': SINGLE_LED_REPORTED_BITRATE,
                'multi_blink_us': profile.min_blink_multi_us,
                'multi_bitrate': multi,
                'multi_reported': reported,
                'multi_agrees': _agrees(multi, reported) if multi is not None else None,
            })
        return pd.DataFrame(rows)

    def ask_rates(self) -> pd.DataFrame:
        """
        Level rate 1/T_all and the two-bit amplitude rate for each profile.
        Rows whose reported level rate does not match 1/T_all are flagged.
        """
        rows = []
        for profile in self._select():
            if not profile.ask_level_us:
                continue
            levels_per_s, bits_per_s = ask_level_rate(profile.ask_level_us, levels=4)
            reported = REPORTED_RATES.get(profile.name, {}).get('ask_levels_per_s')
            rows.append({
                'profile': profile.name,
                'ask_level_us': profile.ask_level_us,
                'levels_per_s': levels_per_s,
                'bits_per_s': bits_per_s,
                'reported_levels_per_s': reported,
                'consistent': _agrees(levels_per_s, reported),
            })
        return pd.DataFrame(rows)

    def camera_rates(self) -> pd.DataFrame:
        rows = []
        for receiver, fps, leds, reported in CAMERA_ROWS:
            theoretical = theoretical_bitrate_camera(leds, fps)
            rows.append({
                'receiver': receiver,
                'fps': fps,
                'leds': leds,
                'theoretical_bitrate': theoretical,
                'reported_bitrate': reported,
                'empirical_ceiling': reported < theoretical,
            })
        return pd.DataFrame(rows)

    def transfer_rates(self) -> pd.DataFrame:
        """Bulk transfer test: duration, reported rate and the payload they imply."""
        rows = []
        for profile in self._select():
            reported = REPORTED_RATES.get(profile.name)
            if reported is None:
                continue
            rows.append({
                'profile': profile.name,
                'transfer_ms': reported['transfer_ms'],
                'reported_bitrate': reported['transfer_bitrate'],
                'implied_bits': round(reported['transfer_bitrate'] * reported['transfer_ms'] / 1000.0),
            })
        return pd.DataFrame(rows)

    def rate_tables(self) -> Dict[str, pd.DataFrame]:
        return {
            'blink': self.blink_rates(),
            'ask': self.ask_rates(),
            'camera': self.camera_rates(),
            'transfer': self.transfer_rates(),
        }
