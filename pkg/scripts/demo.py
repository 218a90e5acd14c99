#!/usr/bin/env python3
"""
Keyboard LED Channel - Demo Script
Walks through encoding, simulation, decoding and the evaluation tables
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.analytics import ChannelAnalytics
from src.channel import NoiseModel, apply_led_rate_limit, get_profile, simulate_camera, simulate_sensor
from src.receive import DecodeConfig, decode_camera, decode_sensor
from src.transmit import build_transmission, build_set_report, serialize_setup_packet
from src.transmit.hid import hex_dump
from src.transmit.modulation import ALL_ON, camera_bitrate, timing_for_bitrate
from src.ui.config import profile_timing
from src.utils.errors import DemodError

MESSAGE = b"The quick brown fox leaks over the keyboard LEDs.."


def main():
    print("⌨️  Keyboard LED Channel - Demo")
    print("=" * 50)

    analytics = ChannelAnalytics()
    dell = get_profile('dell')

    # Demo 1: HID packet
    print("\n🔌 Demo 1: SetReport packet lighting all three LEDs")
    print("-" * 50)
    print(f"  {hex_dump(serialize_setup_packet(build_set_report(ALL_ON)))}")

    # Demo 2: photodiode round trip
    print("\n📡 Demo 2: OOK over the photodiode, Dell KB212-B")
    print("-" * 50)
    timing = profile_timing('ook', dell)
    schedule = build_transmission(MESSAGE, 'ook', timing)
    trace = simulate_sensor(schedule, dell, noise=NoiseModel(0.005, seed=1))
    report = decode_sensor(trace, DecodeConfig('ook'), expected=MESSAGE)
    print(f"  Air time: {schedule.total_duration / 1000:.1f} ms, {len(trace):,} samples")
    print(f"  Frames OK: {report.frames_ok}/{len(report.frames)}, BER {report.ber:.4f}")
    print(f"  Recovered: {report.recovered[:len(MESSAGE)]!r}")

    # Demo 3: camera round trip
    print("\n🎥 Demo 3: three-LED ASK seen by a 30 fps camera")
    print("-" * 50)
    camera_timing = timing_for_bitrate('ask3', camera_bitrate('ask3', 30))
    schedule = build_transmission(MESSAGE[:8], 'ask3', camera_timing)
    video = simulate_camera(schedule, fps=30)
    report = decode_camera(video, DecodeConfig('ask3', timing=camera_timing), expected=MESSAGE[:8])
    print(f"  {len(video)} frames, {camera_bitrate('ask3', 30):.0f} bit/s, BER {report.ber:.4f}")

    # Demo 4: rate limiting countermeasure
    print("\n🛡️  Demo 4: one-second LED lock")
    print("-" * 50)
    limited = apply_led_rate_limit(build_transmission(MESSAGE, 'ook', timing), 1000)
    print(f"  Schedule collapsed to {len(limited)} segment(s)")
    try:
        report = decode_sensor(simulate_sensor(limited, dell), DecodeConfig('ook', timing=timing))
        print(f"  Frames OK: {report.frames_ok}/{len(report.frames)}")
    except DemodError as e:
        print(f"  ✓ Nothing to decode: {e}")

    # Demo 5: tables
    print("\n📊 Demo 5: rate tables")
    print("-" * 50)
    for name, table in analytics.rate_tables().items():
        print(f"\n  {name}:")
        print(table.to_string(index=False))

    print("\n🔭 Demo 6: link budget")
    print("-" * 50)
    budget = analytics.link_budget_report()
    print(f"  Effective distance: {budget['effective_distance_m']:.2f} m "
          f"(target {budget['target_distance_m']:g} m)")
    print(f"  Camera range: {budget['camera_range_m']:.2f} m")

    print("\n📉 Demo 7: reference BER rows with the stored noise calibration")
    print("-" * 50)
    print(analytics.reference_ber_table(n_bits=1000).to_string(index=False))

    print("\n🎉 Demo complete")


if __name__ == "__main__":
    main()
