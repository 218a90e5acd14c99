"""
linkbudget - received power, photodiode output and range limits for a
parameter file (or the defaults in the profile file).
"""
import argparse
import logging
import sys
from typing import List

from src.analytics import ChannelAnalytics
from src.channel.profiles import read_link_file
from src.ui.components import (format_quantity, render_header, render_metrics_cards, render_section,
                               render_status, render_table)
from src.ui.config import RunConfig
from src.utils.trace_io import write_report

logger = logging.getLogger(__name__)


def add_parser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser('linkbudget', parents=parents, help="print the optical link budget",
                                   description=__doc__)
    parser.add_argument('--params', dest='input_path', help="name = value parameter file")
    parser.add_argument('--inferred', action='store_true',
                        help="also print the LED power implied by each profile's received level")
    return parser


def run(cfg: RunConfig, args) -> int:
    analytics = ChannelAnalytics(cfg.profiles_path, cfg.sample_rate, cfg.seed)
    params = read_link_file(cfg.input_path) if cfg.input_path else None
    report = analytics.link_budget_report(params)

    render_header("🔭 Link budget")
    cards = {
        "Transmit power": format_quantity(report['p_tx_w'], 'W'),
        "Irradiance angle": f"{report['theta_deg']:.1f}°",
    }
    if 'p_received_w' in report:
        cards.update({
            "Distance": f"{report['d_m']:g} m",
            "Received power": format_quantity(report['p_received_w'], 'W'),
            "Photodiode output": format_quantity(report['v_out_v'], 'V'),
        })
    cards.update({
        "Effective distance": f"{report['effective_distance_m']:.2f} m",
        f"P_t for {report['target_distance_m']:g} m": format_quantity(report['required_p_tx_w'], 'W'),
        "Diffraction limit": format_quantity(report['diffraction_limit_m'], 'm'),
        "One-pixel distance": f"{report['one_pixel_distance_m']:.3f} m",
        "Diffraction-limited distance": f"{report['diffraction_limited_distance_m']:.2f} m",
        "Camera range": f"{report['camera_range_m']:.3f} m",
    })
    render_metrics_cards(cards)

    if getattr(args, 'inferred', False):
        render_section("Inferred LED power per profile")
        render_table(analytics.inferred_tx_power())

    render_section("Report")
    write_report(report, sys.stdout)
    render_status(report['meets_target'],
                  f"effective distance {'reaches' if report['meets_target'] else 'falls short of'} "
                  f"{report['target_distance_m']:g} m")
    return 0
