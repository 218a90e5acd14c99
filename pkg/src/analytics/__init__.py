"""
Analytics Module - BER measurement, link budget and bit-rate tables
"""
from .base import ChannelAnalytics, AnalyticsBase
from .ber_sweep import BerAnalytics
from .link_budget import LinkBudgetAnalytics
from .rates import RateAnalytics

__all__ = [
    'ChannelAnalytics',
    'AnalyticsBase',
    'BerAnalytics',
    'LinkBudgetAnalytics',
    'RateAnalytics',
]
