"""
Tests for threshold estimation, preamble sync and BER.
"""

import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.channel.profiles import get_profile
from src.channel.simulator import NoiseModel, SensorTrace, simulate_sensor
from src.receive.metrics import ber, bit_errors
from src.receive.sync import sync_preamble
from src.receive.threshold import estimate_threshold, noise_sigma
from src.transmit.modulation import build_transmission
from src.ui.config import profile_timing
from src.utils.bits import BitString
from src.utils.errors import EmptyTrace, NoSignal, PreambleNotFound


class TestThreshold(unittest.TestCase):

    def test_square_wave_mean(self):
        samples = np.tile(np.r_[np.full(50, 0.42), np.full(50, 0.37)], 20)
        estimate = estimate_threshold(samples)
        self.assertAlmostEqual(estimate.value, 0.395, places=9)
        self.assertFalse(estimate.no_signal)

    def test_constant_is_no_signal(self):
        self.assertTrue(estimate_threshold(np.full(100, 0.37)).no_signal)
        self.assertTrue(estimate_threshold(np.full(100, 0.37), levels=4).no_signal)

    def test_empty(self):
        with self.assertRaises(EmptyTrace):
            estimate_threshold(np.empty(0))

    def test_four_levels(self):
        rng = np.random.default_rng(0)
        levels = np.array([0.37, 0.42, 0.47, 0.52])
        samples = np.repeat(levels, 5000) + rng.standard_normal(20000) * 0.002
        rng.shuffle(samples)
        estimate = estimate_threshold(samples, levels=4)
        expected = (levels[:-1] + levels[1:]) / 2
        np.testing.assert_allclose(estimate.cuts, expected, atol=0.05 * 0.05)
        self.assertEqual(list(estimate.classify(levels)), [0, 1, 2, 3])

    def test_scaling_scales_cuts(self):
        rng = np.random.default_rng(1)
        samples = 0.4 + 0.05 * rng.integers(0, 2, 5000) + rng.standard_normal(5000) * 0.005
        base = estimate_threshold(samples)
        for factor in (1e-3, 0.5, 7.0, 1e4):
            self.assertAlmostEqual(estimate_threshold(samples * factor).value / factor, base.value, places=9)

    def test_noise_sigma_ignores_steps(self):
        rng = np.random.default_rng(2)
        samples = np.repeat([0.0, 1.0, 0.0, 1.0], 2500) + rng.standard_normal(10000) * 0.01
        self.assertAlmostEqual(noise_sigma(samples), 0.01, delta=0.001)


class TestSync(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.dell = get_profile('dell')
        cls.timing = profile_timing('ook', cls.dell)
        data = bytes(np.random.default_rng(3).integers(0, 256, 32, dtype=np.uint8))
        schedule = build_transmission(data, 'ook', cls.timing)
        trace = simulate_sensor(schedule, cls.dell, 500_000, NoiseModel(0.005, seed=11))
        prefix = cls.dell.p_off_mw + np.random.default_rng(12).standard_normal(1000) * 0.005
        cls.trace = trace.with_prefix(prefix)
        cls.true_start_us = 1000 / 500_000 * 1e6

    def test_known_timing(self):
        result = sync_preamble(self.trace, 'ook', self.timing)
        self.assertLessEqual(abs(result.frame_start_us - self.true_start_us), self.timing.t_on)
        self.assertAlmostEqual(result.payload_start_us - result.frame_start_us, 8 * self.timing.t_on,
                               delta=self.timing.t_on)

    def test_blind_calibration(self):
        result = sync_preamble(self.trace, 'ook')
        self.assertLessEqual(abs(result.frame_start_us - self.true_start_us), self.timing.t_on)
        self.assertAlmostEqual(result.timing.t_on, self.timing.t_on, delta=0.3 * self.timing.t_on)
        self.assertAlmostEqual(result.timing.t_off, self.timing.t_off, delta=0.3 * self.timing.t_off)

    def test_pure_noise(self):
        noise = SensorTrace(500_000, 0.37 + np.random.default_rng(5).standard_normal(50_000) * 0.005)
        with self.assertRaises(PreambleNotFound):
            sync_preamble(noise, 'ook')
        with self.assertRaises(PreambleNotFound):
            sync_preamble(noise, 'ook', self.timing)

    def test_long_pure_noise(self):
        rng = np.random.default_rng(6)
        for i in range(3):
            noise = SensorTrace(500_000, 0.37 + rng.standard_normal(1_000_000) * 0.005)
            with self.subTest(trace=i):
                with self.assertRaises(PreambleNotFound):
                    sync_preamble(noise, 'ook')
                with self.assertRaises(PreambleNotFound):
                    sync_preamble(noise, 'ook', self.timing)

    def test_flat_trace(self):
        with self.assertRaises(NoSignal):
            sync_preamble(SensorTrace(500_000, np.full(1000, 0.37)), 'ook', self.timing)


class TestBer(unittest.TestCase):

    def test_identical(self):
        bits = BitString.from_str('1011001')
        self.assertEqual(ber(bits, bits), 0.0)

    def test_complement(self):
        bits = BitString.from_str('1011001')
        self.assertEqual(ber(bits, BitString.from_str('0100110')), 1.0)

    def test_one_flip_in_hundred(self):
        bits = BitString.zeros(100)
        self.assertEqual(ber(bits, bits.flip(42)), 0.01)

    def test_missing_bits_are_errors(self):
        sent = BitString.from_str('10101010')
        self.assertEqual(bit_errors(sent, sent[:6]), 2)
        self.assertEqual(ber(sent, sent[:6]), 0.25)

    def test_empty(self):
        self.assertEqual(ber(BitString(), BitString()), 0.0)


if __name__ == '__main__':
    unittest.main()
