#!/usr/bin/env python3
"""
Refit the noise sigma of every keyboard profile to its reference BER and
write the results back into the profile file (comments are preserved).
"""

import argparse
import logging
import os
import re
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.analytics import ChannelAnalytics
from src.data import PROFILES_PATH

SECTION_RE = re.compile(r'^\[(?P<name>[^\]]+)\]\s*$')
KEY_RE = re.compile(r'^(?P<key>(ook|multi)_sigma_mw)\s*=.*$')


def rewrite_sigmas(path: str, sigmas: dict) -> int:
    """Replace `<kind>_sigma_mw` lines in place; sigmas maps (section, kind) to a value."""
    with open(path, encoding='utf-8') as fh:
        lines = fh.read().splitlines()

    section = None
    changed = 0
    for i, line in enumerate(lines):
        match = SECTION_RE.match(line.strip())
        if match:
            section = match.group('name').lower()
            continue
        match = KEY_RE.match(line.strip())
        if match and section is not None:
            kind = match.group('key').split('_')[0]
            if (section, kind) in sigmas:
                lines[i] = f"{match.group('key')} = {sigmas[(section, kind)]:.3f}"
                changed += 1

    with open(path, 'w', encoding='utf-8') as fh:
        fh.write('\n'.join(lines) + '\n')
    return changed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument('--profiles-file', default=PROFILES_PATH, help="profile INI file to update")
    parser.add_argument('--n-bits', type=int, default=2000, help="bits per BER measurement")
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--workers', type=int, default=1)
    parser.add_argument('--dry-run', action='store_true', help="print the fit without writing it")
    args = parser.parse_args()
    logging.basicConfig(level=logging.WARNING, format='%(levelname)s %(name)s: %(message)s')

    print("🎯 Noise Calibration")
    print("=" * 50)

    analytics = ChannelAnalytics(args.profiles_file, seed=args.seed)
    table = analytics.reference_ber_table(seed=args.seed, n_bits=args.n_bits, calibrate=True, workers=args.workers)
    print(table.to_string(index=False))

    misses = table[~table['within_tolerance']]
    for _, row in misses.iterrows():
        print(f"⚠️  {row['profile']} {row['kind']}: BER {row['ber']:.4f} vs reference {row['reference_ber']:.4f}")

    if args.dry_run:
        print("\n✓ Dry run, profile file left unchanged")
        return 0

    sigmas = {(row['profile'], row['kind']): row['sigma'] for _, row in table.iterrows()}
    changed = rewrite_sigmas(args.profiles_file, sigmas)
    print(f"\n✅ Updated {changed} sigma value(s) in {args.profiles_file}")
    return 0 if misses.empty else 1


if __name__ == "__main__":
    sys.exit(main())
