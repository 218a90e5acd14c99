#!/usr/bin/env python3
"""
Diagnostic script to check the environment and the keyboard profile file
"""

import importlib
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

REQUIRED_PACKAGES = ('numpy', 'pandas', 'scipy', 'sklearn', 'crcmod')


def test_imports():
    """Test all required imports"""
    print("🔍 Testing imports...")

    ok = True
    for name in REQUIRED_PACKAGES:
        try:
            module = importlib.import_module(name)
            print(f"✅ {name} {getattr(module, '__version__', '')} imported successfully")
        except ImportError as e:
            print(f"❌ {name} import failed: {e}")
            ok = False
    return ok


def test_profiles():
    """Load every keyboard profile and the link-budget defaults"""
    print("\n⌨️  Testing keyboard profiles...")

    try:
        from src.channel.profiles import load_link_defaults, load_profiles
        from src.data import PROFILES_PATH
    except ImportError as e:
        print(f"❌ Package import failed: {e}")
        return False

    if not os.path.exists(PROFILES_PATH):
        print(f"❌ Profile file not found: {PROFILES_PATH}")
        return False

    try:
        profiles = load_profiles(PROFILES_PATH)
        for profile in profiles.values():
            missing = [k for k in ('ook', 'multi') if profile.reference_row(k)['sigma_mw'] is None]
            marker = "⚠️ " if missing else "✅"
            note = f" (no calibrated sigma for {', '.join(missing)})" if missing else ""
            print(f"{marker} {profile.name}: {profile.label}, min switch {profile.min_switch_us:g} us{note}")
        load_link_defaults(PROFILES_PATH)
        print("✅ Link-budget defaults loaded")
    except Exception as e:
        print(f"❌ Profile file error: {e}")
        return False
    return True


def test_round_trip():
    """Frame, modulate, simulate and decode a short message without noise"""
    print("\n🔁 Testing noiseless round trip...")

    try:
        from src.channel import NoiseModel, get_profile, simulate_sensor
        from src.receive import DecodeConfig, decode_sensor
        from src.transmit import build_transmission
        from src.ui.config import profile_timing

        profile = get_profile('dell')
        timing = profile_timing('ook', profile)
        message = b"diagnostic"
        trace = simulate_sensor(build_transmission(message, 'ook', timing), profile, noise=NoiseModel(0.0))
        report = decode_sensor(trace, DecodeConfig('ook', timing=timing))
        if report.recovered[:len(message)] == message:
            print("✅ Message recovered")
            return True
        print(f"❌ Recovered {report.recovered[:len(message)]!r}")
    except Exception as e:
        print(f"❌ Round trip failed: {e}")
    return False


def main():
    print("🩺 LED Channel Diagnostics")
    print("=" * 50)

    results = [test_imports(), test_profiles(), test_round_trip()]

    print("\n" + "=" * 50)
    if all(results):
        print("🎉 All checks passed")
        return 0
    print("❌ Some checks failed - see above")
    return 1


if __name__ == "__main__":
    sys.exit(main())
