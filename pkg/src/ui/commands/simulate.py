"""
simulate - seeded BER sweeps over the simulated channel, the reference BER
table, and the bit-rate tables.
"""
import argparse
import logging
from typing import List, Optional

from src.analytics import ChannelAnalytics
from src.ui.components import (create_comparison_table, render_section, render_status, render_table,
                               render_warning)
from src.ui.config import RunConfig
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def add_parser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser('simulate', parents=parents, help="BER sweeps and reference tables",
                                   description=__doc__)
    parser.add_argument('--profiles', nargs='+', help="profiles to sweep (default: all)")
    parser.add_argument('--schemes', nargs='+', help="schemes to sweep (default: --scheme)")
    parser.add_argument('--sigmas', type=_float_list, help="comma-separated noise sigmas (mW)")
    parser.add_argument('--bitrates', type=_float_list, help="comma-separated bit rates (default: reference rate)")
    parser.add_argument('--calibrated', action='store_true', help="include each profile's calibrated sigma")
    parser.add_argument('--n-bits', type=int, default=2000, help="bits per sweep point")
    parser.add_argument('--workers', type=int, default=1, help="worker processes")
    parser.add_argument('--reference-table', action='store_true', help="reference vs reproduced BER per profile")
    parser.add_argument('--recalibrate', action='store_true', help="refit sigma before reproducing the table")
    parser.add_argument('--rates', action='store_true', help="print the bit-rate tables")
    parser.add_argument('--out', dest='output_path', help="write the CSV here instead of stdout")
    return parser


def _emit(df, path: Optional[str]) -> None:
    if path:
        df.to_csv(path, index=False, float_format='%.6g')
    else:
        render_table(df)


def run(cfg: RunConfig, args) -> int:
    analytics = ChannelAnalytics(cfg.profiles_path, cfg.sample_rate, cfg.seed)
    n_bits = getattr(args, 'n_bits', 2000) or 2000
    workers = getattr(args, 'workers', 1) or 1
    if n_bits <= 0 or workers <= 0:
        raise ConfigError("--n-bits and --workers must be positive")
    profiles = cfg.profiles or None

    if getattr(args, 'rates', False):
        for name, table in analytics.rate_tables().items():
            render_section(f"{name} rates")
            render_table(table)
        return 0

    if getattr(args, 'reference_table', False):
        df = analytics.reference_ber_table(profiles=profiles, n_bits=n_bits,
                                 calibrate=getattr(args, 'recalibrate', False), workers=workers)
        df = create_comparison_table(df, 'profile')
        _emit(df, cfg.output_path)
        misses = int((~df['within_tolerance']).sum()) if not df.empty else 0
        refitted = int(df['recalibrated'].sum()) if not df.empty else 0
        if refitted:
            render_warning(f"{refitted} stored sigma(s) were stale and refitted; run scripts/calibrate_profiles.py")
        render_status(misses == 0, f"{len(df) - misses}/{len(df)} row(s) within tolerance")
        return 0

    df = analytics.ber_sweep(profiles=profiles, schemes=cfg.schemes or [cfg.scheme],
                             sigmas=getattr(args, 'sigmas', None) or [cfg.sigma],
                             bitrates=getattr(args, 'bitrates', None), workers=workers, n_bits=n_bits,
                             calibrated=getattr(args, 'calibrated', False), receiver=cfg.receiver)
    _emit(df, cfg.output_path)
    render_status(True, f"{len(df)} sweep point(s)")
    return 0
