"""
Base Analytics Module - shared profile access and the combined analytics facade
"""
import logging
from typing import Dict, Iterable, List, Optional

import pandas as pd

from src.channel.profiles import KeyboardProfile, LinkDefaults, get_profile, load_link_defaults, load_profiles
from src.data import PROFILES_PATH

logger = logging.getLogger(__name__)

DEFAULT_SAMPLE_RATE = 500_000


class AnalyticsBase:
    """
    Base class for channel analytics: knows where the profile file is, the
    photodiode sample rate and the base seed every measurement derives from.
    """

    def __init__(self, profiles_path: Optional[str] = None, sample_rate: float = DEFAULT_SAMPLE_RATE,
                 seed: int = 0):
        self.profiles_path = profiles_path or PROFILES_PATH
        self.sample_rate = float(sample_rate)
        self.seed = int(seed)

    def _profiles(self) -> Dict[str, KeyboardProfile]:
        return load_profiles(self.profiles_path)

    def _profile(self, profile) -> KeyboardProfile:
        """Accept a KeyboardProfile or any name get_profile understands."""
        if isinstance(profile, KeyboardProfile):
            return profile
        return get_profile(profile, self.profiles_path)

    def _select(self, profiles: Optional[Iterable] = None) -> List[KeyboardProfile]:
        if profiles is None:
            return list(self._profiles().values())
        return [self._profile(p) for p in profiles]

    def _link_defaults(self) -> LinkDefaults:
        return load_link_defaults(self.profiles_path)


class ChannelAnalytics(AnalyticsBase):
    """
    Main analytics class that combines all specialized analytics modules.
    This serves as the unified interface for the CLI and scripts.
    """

    def __init__(self, profiles_path: Optional[str] = None, sample_rate: float = DEFAULT_SAMPLE_RATE,
                 seed: int = 0):
        super().__init__(profiles_path, sample_rate, seed)

        # Import specialized modules here to avoid circular imports
        from .ber_sweep import BerAnalytics
        from .link_budget import LinkBudgetAnalytics
        from .rates import RateAnalytics

        self.ber = BerAnalytics(profiles_path, sample_rate, seed)
        self.link_budget = LinkBudgetAnalytics(profiles_path, sample_rate, seed)
        self.rates = RateAnalytics(profiles_path, sample_rate, seed)

    # Delegate methods to specialized modules
    def measure_ber(self, profile, scheme: str, bitrate: float, sigma: float, **kwargs) -> float:
        """Measure BER at one operating point - delegates to ber module"""
        return self.ber.measure_ber(profile, scheme, bitrate, sigma, **kwargs)

    def ber_sweep(self, **kwargs) -> pd.DataFrame:
        """Sweep BER over profiles, schemes, sigmas and bit rates - delegates to ber module"""
        return self.ber.ber_sweep(**kwargs)

    def calibrate_sigma(self, profile, scheme: str, bitrate: float, target_ber: float, **kwargs) -> float:
        """Find the noise level giving a target BER - delegates to ber module"""
        return self.ber.calibrate_sigma(profile, scheme, bitrate, target_ber, **kwargs)

    def reference_ber_table(self, **kwargs) -> pd.DataFrame:
        """Reference vs reproduced BER per profile - delegates to ber module"""
        return self.ber.reference_ber_table(**kwargs)

    def link_budget_report(self, params: Optional[LinkDefaults] = None) -> Dict:
        """Link budget figures - delegates to link_budget module"""
        return self.link_budget.link_budget_report(params)

    def inferred_tx_power(self, profiles: Optional[Iterable] = None) -> pd.DataFrame:
        """LED power implied by each profile's received level - delegates to link_budget module"""
        return self.link_budget.inferred_tx_power(profiles)

    def rate_tables(self) -> Dict[str, pd.DataFrame]:
        """Bit-rate reproduction tables - delegates to rates module"""
        return self.rates.rate_tables()
