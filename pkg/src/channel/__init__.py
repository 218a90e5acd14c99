"""
Channel module - optics, keyboard profiles, receiver simulation and countermeasures.
"""

from .optics import CameraParams, OpticalLink, PhotodiodeParams
from .profiles import KeyboardProfile, get_profile, load_profiles
from .simulator import CameraTrace, NoiseModel, SensorTrace, simulate_camera, simulate_sensor
from .countermeasures import apply_led_rate_limit, inject_random_blinks, monitor_led_activity

__all__ = [
    'CameraParams',
    'OpticalLink',
    'PhotodiodeParams',
    'KeyboardProfile',
    'get_profile',
    'load_profiles',
    'CameraTrace',
    'NoiseModel',
    'SensorTrace',
    'simulate_camera',
    'simulate_sensor',
    'apply_led_rate_limit',
    'inject_random_blinks',
    'monitor_led_activity',
]
