"""
Tests for keyboard profiles and the sensor / camera simulators.
"""

import os
import sys
import tempfile
import unittest
from unittest import mock

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.channel import simulator
from src.channel.profiles import get_profile, load_profiles, profile_names, read_link_file
from src.channel.simulator import (CameraTrace, NoiseModel, SensorTrace, simulate_camera,
                                   simulate_sensor)
from src.transmit.modulation import ALL_OFF, ALL_ON, LED1, LedSchedule, LedState
from src.utils.errors import ChannelError, ConfigError, NyquistViolation, UnknownProfile

NOISELESS = NoiseModel(0.0)


class TestProfiles(unittest.TestCase):

    def test_builtin_profiles(self):
        self.assertEqual(sorted(profile_names()), ['dell', 'lenovo', 'logitech', 'silverline'])

    def test_lookup_by_vendor_and_model(self):
        self.assertEqual(get_profile('Dell').name, 'dell')
        self.assertEqual(get_profile('kb212-b').name, 'dell')
        self.assertEqual(get_profile('SK-8825').name, 'lenovo')

    def test_unknown_profile(self):
        with self.assertRaises(UnknownProfile):
            get_profile('commodore')

    def test_dell_values(self):
        dell = get_profile('dell')
        self.assertEqual(dell.min_switch_us, 600)
        self.assertAlmostEqual(dell.p_on_mw, 0.42)
        self.assertAlmostEqual(dell.p_off_mw, 0.37)
        self.assertAlmostEqual(dell.level_mw(3), 0.37 + 3 * 0.05)
        self.assertEqual(dell.ook_blink_period_us, 1200)

    def test_reference_rows(self):
        for profile in load_profiles().values():
            for kind in ('ook', 'multi'):
                row = profile.reference_row(kind)
                self.assertIsNotNone(row['bitrate'])
                self.assertTrue(0 < row['ber'] < 0.1)

    def test_bad_profile_file(self):
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'bad.ini')
            with open(path, 'w') as fh:
                fh.write("[broken]\nmin_switch_us = 400\np_on_mw = 0.1\np_off_mw = 0.2\n")
            with self.assertRaises(ConfigError):
                load_profiles(path)

    def test_link_file(self):
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'link.txt')
            with open(path, 'w') as fh:
                fh.write("theta_deg = 0\nd_m = 2\np_tx_w = 1e-3\n")
            params = read_link_file(path)
            self.assertEqual(params.link.theta, 0.0)
            self.assertEqual(params.link.d, 2.0)
            with open(path, 'w') as fh:
                fh.write("warp_factor = 9\n")
            with self.assertRaises(ConfigError):
                read_link_file(path)


class TestSensorSimulator(unittest.TestCase):

    def setUp(self):
        self.dell = get_profile('dell')

    def test_constant_off(self):
        trace = simulate_sensor(LedSchedule(((ALL_OFF, 2000.0),)), self.dell, 500_000, NOISELESS)
        self.assertEqual(len(trace), 1000)
        np.testing.assert_allclose(trace.samples, self.dell.p_off_mw)

    def test_steady_state_levels(self):
        schedule = LedSchedule(((LED1, 2000.0), (ALL_OFF, 2000.0)))
        trace = simulate_sensor(schedule, self.dell, 500_000, NOISELESS)
        self.assertAlmostEqual(trace.samples[900], 0.42, places=3)
        self.assertAlmostEqual(trace.samples[1900], 0.37, places=3)

    def test_led_count_levels(self):
        schedule = LedSchedule(((ALL_ON, 2000.0),))
        trace = simulate_sensor(schedule, self.dell, 500_000, NOISELESS)
        self.assertAlmostEqual(trace.samples[-1], self.dell.level_mw(3), places=6)

    def test_deterministic(self):
        schedule = LedSchedule(((LED1, 1000.0), (ALL_OFF, 1000.0)))
        a = simulate_sensor(schedule, self.dell, noise=NoiseModel(0.01, seed=5))
        b = simulate_sensor(schedule, self.dell, noise=NoiseModel(0.01, seed=5))
        np.testing.assert_array_equal(a.samples, b.samples)
        c = simulate_sensor(schedule, self.dell, noise=NoiseModel(0.01, seed=6))
        self.assertFalse(np.array_equal(a.samples, c.samples))

    def test_nyquist(self):
        schedule = LedSchedule(((LED1, 10.0), (ALL_OFF, 10.0)))
        with self.assertRaises(NyquistViolation):
            simulate_sensor(schedule, self.dell, 100_000)

    def test_short_segments_counted(self):
        schedule = LedSchedule(((LED1, 100.0), (ALL_OFF, 1000.0)))
        with self.assertLogs('src.channel.simulator', level='WARNING'):
            trace = simulate_sensor(schedule, self.dell, noise=NOISELESS)
        self.assertEqual(trace.short_segments, 1)

    def test_bad_noise(self):
        with self.assertRaises(ChannelError):
            NoiseModel(-1.0)


class TestCameraSimulator(unittest.TestCase):

    def test_full_frame_on(self):
        trace = simulate_camera(LedSchedule(((LED1, 1e6),)), fps=30)
        self.assertEqual(len(trace), 30)
        np.testing.assert_array_equal(trace.frames[:, 0], 255)
        np.testing.assert_array_equal(trace.frames[:, 1:], 0)

    def test_half_exposure(self):
        # 30 fps, exposure 0.9 of 33333 us; LED on for the first half of the first exposure
        half = 0.5 * 0.9 * 1e6 / 30
        schedule = LedSchedule(((ALL_ON, half), (ALL_OFF, 1e6 / 30 - half)))
        trace = simulate_camera(schedule, fps=30)
        self.assertTrue(np.all(np.abs(trace.frames[0] - 127.5) <= 0.5))

    def test_per_led_columns(self):
        schedule = LedSchedule(((LedState(False, True, False), 1e5),))
        trace = simulate_camera(schedule, fps=30)
        self.assertTrue((trace.frames[:, 1] == 255).all())
        self.assertTrue((trace.frames[:, [0, 2]] == 0).all())

    def test_noise_clamped(self):
        trace = simulate_camera(LedSchedule(((LED1, 1e6),)), fps=30, noise=NoiseModel(50.0, seed=1))
        self.assertTrue((trace.frames >= 0).all() and (trace.frames <= 255).all())

    def test_warns_below_two_frames_per_segment(self):
        fast = LedSchedule(((LED1, 1e6 / 30), (ALL_OFF, 1e6 / 30)))
        with self.assertLogs('src.channel.simulator', level='WARNING') as logs:
            simulate_camera(fast, fps=30)
        self.assertIn('camera frame', logs.output[0])

    def test_two_frames_per_segment_is_quiet(self):
        slow = LedSchedule(((LED1, 2e6 / 30), (ALL_OFF, 2e6 / 30)))
        with mock.patch.object(simulator.logger, 'warning') as warning:
            trace = simulate_camera(slow, fps=30)
        warning.assert_not_called()
        self.assertEqual(len(trace), 4)

    def test_trace_validation(self):
        with self.assertRaises(ChannelError):
            CameraTrace(30, np.zeros((4, 2)))
        with self.assertRaises(ChannelError):
            SensorTrace(0, np.zeros(4))


if __name__ == '__main__':
    unittest.main()
