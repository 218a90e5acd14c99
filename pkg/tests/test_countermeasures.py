"""
Tests for the LED rate limiter, random-blink jamming and the activity monitor.
"""

import os
import sys
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.channel.countermeasures import (apply_led_rate_limit, idle_schedule, inject_random_blinks,
                                         is_constant, monitor_led_activity)
from src.channel.profiles import get_profile
from src.channel.simulator import NoiseModel, simulate_sensor
from src.receive.demodulator import DecodeConfig, decode_sensor
from src.transmit.hid import schedule_to_reports
from src.transmit.modulation import (ALL_OFF, LED1, LedSchedule, SymbolTiming, build_transmission,
                                     modulate_ook, timing_for_bitrate)
from src.utils.bits import BitString
from src.utils.errors import ChannelError, DemodError


def change_times(schedule: LedSchedule):
    return [t for t, _ in schedule_to_reports(schedule)]


class TestRateLimit(unittest.TestCase):

    def setUp(self):
        timing = SymbolTiming(t_on=400, t_off=400, t_d=400, t_all=400)
        self.schedule = build_transmission(bytes(range(96)), 'ook', timing)

    def test_at_most_one_change_per_second(self):
        for lock_ms in (1000, 50, 2):
            limited = apply_led_rate_limit(self.schedule, lock_ms)
            times = change_times(limited)
            for a, b in zip(times, times[1:]):
                self.assertGreaterEqual(b - a, lock_ms * 1000 - 1e-3)
            self.assertAlmostEqual(limited.total_duration, self.schedule.total_duration)
        self.assertEqual(len(change_times(apply_led_rate_limit(self.schedule, 1000))), 1)

    def test_small_lock_keeps_schedule(self):
        limited = apply_led_rate_limit(self.schedule, 0.1)
        self.assertEqual(limited.segments, self.schedule.merged().segments)

    def test_constant_schedule_unchanged(self):
        schedule = idle_schedule(5000.0)
        self.assertEqual(apply_led_rate_limit(schedule, 1000).segments, schedule.segments)

    def test_idempotent(self):
        once = apply_led_rate_limit(self.schedule, 1.5)
        self.assertEqual(apply_led_rate_limit(once, 1.5), once)

    def test_bad_lock(self):
        with self.assertRaises(ChannelError):
            apply_led_rate_limit(self.schedule, 0)

    def test_defeats_decoding(self):
        """After a 1 s lock no frame decodes with the original settings."""
        dell = get_profile('dell')
        timing = timing_for_bitrate('ook', 1666)
        data = bytes(range(256)) * 2
        schedule = build_transmission(data, 'ook', timing)
        trace = simulate_sensor(apply_led_rate_limit(schedule, 1000), dell, noise=NoiseModel(0.005, seed=3))
        try:
            report = decode_sensor(trace, DecodeConfig('ook', timing=timing))
        except DemodError:
            return
        self.assertEqual(report.frames_ok, 0)


class TestRandomBlinks(unittest.TestCase):

    def test_duration_preserved(self):
        schedule = modulate_ook(BitString.from_str('1100101'), SymbolTiming(t_on=1000, t_off=1000))
        jammed = inject_random_blinks(schedule, rate_hz=500, blink_us=300, seed=4)
        self.assertAlmostEqual(jammed.total_duration, schedule.total_duration, places=6)
        self.assertTrue(all(d >= 5.0 for d in jammed.durations[:-1]))

    def test_zero_rate_is_identity(self):
        schedule = modulate_ook(BitString.from_str('1100101'), SymbolTiming(t_on=1000, t_off=1000))
        self.assertEqual(inject_random_blinks(schedule, rate_hz=0).segments, schedule.segments)

    def test_seeded(self):
        schedule = idle_schedule(1e5)
        a = inject_random_blinks(schedule, rate_hz=200, seed=9)
        b = inject_random_blinks(schedule, rate_hz=200, seed=9)
        self.assertEqual(a, b)
        self.assertFalse(is_constant(a))


class TestMonitor(unittest.TestCase):

    def test_quiet_typing_not_flagged(self):
        segments = tuple((LED1 if i % 2 == 0 else ALL_OFF, 250_000.0) for i in range(8))
        self.assertEqual(monitor_led_activity(LedSchedule(segments), 1000, 10), [])

    def test_signalling_flagged(self):
        schedule = modulate_ook(BitString.from_str('10' * 100), SymbolTiming(t_on=500, t_off=500))
        alerts = monitor_led_activity(schedule, 1000, 10)
        self.assertEqual(len(alerts), 1)
        self.assertGreater(alerts[0].changes, 10)

    def test_accepts_reports(self):
        schedule = modulate_ook(BitString.from_str('10' * 100), SymbolTiming(t_on=500, t_off=500))
        self.assertEqual(monitor_led_activity(schedule_to_reports(schedule), 1000, 10),
                         monitor_led_activity(schedule, 1000, 10))

    def test_rate_limited_passes(self):
        schedule = modulate_ook(BitString.from_str('10' * 100), SymbolTiming(t_on=500, t_off=500))
        self.assertEqual(monitor_led_activity(apply_led_rate_limit(schedule, 1000), 1000, 1), [])


if __name__ == '__main__':
    unittest.main()
