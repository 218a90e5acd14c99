"""
Tests for the radiometric link budget and camera range limits.
"""

import math
import os
import sys
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.channel.optics import (RED_WAVELENGTH_M, CameraParams, OpticalLink, PhotodiodeParams,
                                camera_range, diffraction_limit, diffraction_limited_distance,
                                effective_distance, hemisphere_integral, lambertian_intensity,
                                max_one_pixel_distance, pd_voltage, received_power, required_tx_power,
                                solid_angle, tx_power_from_received)
from src.channel.profiles import load_link_defaults
from src.utils.errors import GeometryError, OpticsError, OutOfPattern


class TestRadiometry(unittest.TestCase):

    def test_lambertian(self):
        self.assertAlmostEqual(lambertian_intensity(0.0), 1 / math.pi, places=6)
        self.assertAlmostEqual(lambertian_intensity(math.radians(60)), 1 / (2 * math.pi), places=6)
        self.assertAlmostEqual(lambertian_intensity(math.radians(25)), 0.288487, places=5)

    def test_lambertian_out_of_pattern(self):
        with self.assertRaises(OutOfPattern):
            lambertian_intensity(math.pi / 2)
        with self.assertRaises(OutOfPattern):
            OpticalLink(theta=math.radians(95))

    def test_hemisphere_normalization(self):
        self.assertAlmostEqual(hemisphere_integral(), 1.0, delta=1e-6)

    def test_solid_angle(self):
        self.assertAlmostEqual(solid_angle(0.0254, 1.0), 2.0268e-3, delta=1e-7)
        self.assertAlmostEqual(solid_angle(0.0254, 2.0), solid_angle(0.0254, 1.0) / 4, delta=1e-15)

    def test_solid_angle_large_lens(self):
        with self.assertRaises(GeometryError):
            solid_angle(0.5, 1.0)

    def test_received_power(self):
        link = OpticalLink(theta=0.0, d=1.0, r_lens=0.0254, loss=0.8, p_tx=1e-3)
        self.assertAlmostEqual(received_power(link), 5.1613e-7, delta=1e-10)

    def test_inverse_square(self):
        link = OpticalLink(theta=math.radians(25), d=1.0, p_tx=5.4e-3)
        for d in (2.0, 3.7, 10.0, 42.0):
            ratio = received_power(link.at_distance(d)) * d ** 2 / received_power(link)
            self.assertAlmostEqual(ratio, 1.0, delta=1e-9)

    def test_falls_with_distance_and_angle(self):
        distances = (0.3, 1.0, 2.5, 10.0, 50.0)
        angles = [math.radians(a) for a in (0, 10, 25, 45, 70, 89)]
        for theta in angles:
            powers = [received_power(OpticalLink(theta=theta, d=d, p_tx=5.4e-3)) for d in distances]
            with self.subTest(theta=theta):
                self.assertTrue(all(a > b for a, b in zip(powers, powers[1:])))
        for d in distances:
            powers = [received_power(OpticalLink(theta=theta, d=d, p_tx=5.4e-3)) for theta in angles]
            with self.subTest(d=d):
                self.assertTrue(all(a > b for a, b in zip(powers, powers[1:])))

    def test_linear_in_power_and_loss(self):
        base = OpticalLink(d=1.0, p_tx=1e-3, loss=0.5)
        doubled = OpticalLink(d=1.0, p_tx=2e-3, loss=0.5)
        self.assertAlmostEqual(received_power(doubled) / received_power(base), 2.0, places=12)
        self.assertLess(received_power(base), received_power(OpticalLink(d=1.0, p_tx=1e-3, loss=1.0)))

    def test_loss_zero_rejected(self):
        with self.assertRaises(OpticsError):
            OpticalLink(loss=0.0)

    def test_received_power_needs_distance(self):
        with self.assertRaises(GeometryError):
            received_power(OpticalLink())

    def test_tx_power_inversion(self):
        link = OpticalLink(d=1.0, p_tx=3e-3)
        self.assertAlmostEqual(tx_power_from_received(received_power(link), link), 3e-3, places=12)


class TestEffectiveDistance(unittest.TestCase):

    def setUp(self):
        self.pd = PhotodiodeParams()
        self.link = OpticalLink(theta=math.radians(25), r_lens=0.0254, loss=0.8, p_tx=5.4e-3)

    def test_reaches_fifty_metres(self):
        self.assertGreaterEqual(effective_distance(self.link, self.pd), 50.0)
        self.assertAlmostEqual(effective_distance(self.link, self.pd), 50.26, delta=0.01)

    def test_minimum_power(self):
        p_min = required_tx_power(self.link, self.pd, 50.0)
        self.assertAlmostEqual(p_min * 1e3, 5.3445, delta=1e-3)
        at_min = OpticalLink(theta=self.link.theta, p_tx=p_min)
        self.assertAlmostEqual(effective_distance(at_min, self.pd), 50.0, delta=1e-9)

    def test_square_root_law(self):
        quadrupled = OpticalLink(theta=self.link.theta, p_tx=4 * self.link.p_tx)
        self.assertAlmostEqual(effective_distance(quadrupled, self.pd),
                               2 * effective_distance(self.link, self.pd), places=9)

    def test_threshold_at_range(self):
        d_max = effective_distance(self.link, self.pd)
        p = received_power(self.link.at_distance(d_max))
        self.assertAlmostEqual(p / self.pd.p_thr, 1.0, delta=1e-9)

    def test_profile_file_defaults(self):
        defaults = load_link_defaults()
        self.assertGreaterEqual(effective_distance(defaults.link, defaults.photodiode),
                                defaults.target_distance_m)


class TestCameraLimits(unittest.TestCase):

    def test_diffraction_limit(self):
        self.assertAlmostEqual(diffraction_limit(CameraParams()), 1.281e-3, delta=1e-6)

    def test_diffraction_linear_in_h(self):
        self.assertAlmostEqual(diffraction_limit(CameraParams(h=20)), 2 * diffraction_limit(CameraParams()))

    def test_red_limit_larger(self):
        self.assertGreater(diffraction_limit(CameraParams(wavelength=RED_WAVELENGTH_M)),
                           diffraction_limit(CameraParams()))

    def test_one_pixel_distance(self):
        self.assertAlmostEqual(max_one_pixel_distance(CameraParams()), 5.714, delta=1e-3)
        self.assertAlmostEqual(max_one_pixel_distance(CameraParams(focal=8e-3)),
                               2 * max_one_pixel_distance(CameraParams()))
        self.assertEqual(max_one_pixel_distance(CameraParams(led_size=0.0)), 0.0)

    def test_camera_range_is_tighter_limit(self):
        camera = CameraParams()
        self.assertEqual(camera_range(camera),
                         min(max_one_pixel_distance(camera), diffraction_limited_distance(camera)))


class TestPhotodiode(unittest.TestCase):

    def test_voltage(self):
        pd = PhotodiodeParams(responsivity=0.32, gain=4.75e5)
        self.assertAlmostEqual(pd_voltage(1e-6, pd), 0.152, places=9)
        self.assertEqual(pd_voltage(0.0, pd), 0.0)
        self.assertAlmostEqual(pd_voltage(3e-6, pd), 3 * pd_voltage(1e-6, pd))

    def test_negative_power(self):
        with self.assertRaises(OpticsError):
            pd_voltage(-1e-6, PhotodiodeParams())


if __name__ == '__main__':
    unittest.main()
