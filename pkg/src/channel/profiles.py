"""
Keyboard Profiles Module - per-model LED timing and received-power levels,
loaded from the INI profile file.
"""
import configparser
import logging
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional

from src.channel.optics import CameraParams, OpticalLink, PhotodiodeParams
from src.data import PROFILES_PATH
from src.utils.errors import ConfigError, UnknownProfile

logger = logging.getLogger(__name__)

LINK_SECTION = 'link'


@dataclass(frozen=True)
class KeyboardProfile:
    """
    Timing and received-power characteristics of one keyboard model.

    Powers are received optical power at the sensor in mW. Each lit LED adds
    led_increment_mw on top of the ambient floor p_off_mw.
    """

    name: str
    min_switch_us: float
    p_on_mw: float
    p_off_mw: float
    rise_us: float = 50.0
    led_increment_mw: Optional[float] = None
    vendor: str = ''
    model: str = ''
    min_blink_multi_us: Optional[float] = None
    ask_level_us: Optional[float] = None
    ook_bitrate: Optional[float] = None
    ook_ber: Optional[float] = None
    ook_sigma_mw: Optional[float] = None
    multi_bitrate: Optional[float] = None
    multi_ber: Optional[float] = None
    multi_sigma_mw: Optional[float] = None
    camera_max_distance_m: Optional[float] = None

    def __post_init__(self):
        if not self.p_on_mw > self.p_off_mw >= 0:
            raise ConfigError(f"profile '{self.name}': need p_on > p_off >= 0")
        if not self.min_switch_us > 0:
            raise ConfigError(f"profile '{self.name}': min_switch_us must be positive")
        if self.rise_us < 0:
            raise ConfigError(f"profile '{self.name}': rise_us must be non-negative")
        if self.led_increment_mw is None:
            object.__setattr__(self, 'led_increment_mw', self.p_on_mw - self.p_off_mw)
        elif not self.led_increment_mw > 0:
            raise ConfigError(f"profile '{self.name}': led_increment_mw must be positive")

    @property
    def label(self) -> str:
        return f"{self.vendor} {self.model}".strip() or self.name

    def level_mw(self, lit_leds: int) -> float:
        """Received power with lit_leds LEDs on."""
        return self.p_off_mw + lit_leds * self.led_increment_mw

    @property
    def on_off_delta_mw(self) -> float:
        return self.p_on_mw - self.p_off_mw

    @property
    def ook_blink_period_us(self) -> float:
        """One full on/off blink at the minimum switching time."""
        return 2 * self.min_switch_us

    def reference_row(self, kind: str) -> Dict[str, Optional[float]]:
        """Reference bit rate, BER and calibrated sigma for 'ook' or 'multi'."""
        if kind not in ('ook', 'multi'):
            raise ValueError(f"kind must be 'ook' or 'multi', got {kind}")
        return {
            'bitrate': getattr(self, f'{kind}_bitrate'),
            'ber': getattr(self, f'{kind}_ber'),
            'sigma_mw': getattr(self, f'{kind}_sigma_mw'),
        }


_FLOAT_KEYS = ('min_switch_us', 'p_on_mw', 'p_off_mw', 'rise_us', 'led_increment_mw',
               'min_blink_multi_us', 'ask_level_us', 'ook_bitrate', 'ook_ber', 'ook_sigma_mw',
               'multi_bitrate', 'multi_ber', 'multi_sigma_mw', 'camera_max_distance_m')
_REQUIRED_KEYS = ('min_switch_us', 'p_on_mw', 'p_off_mw')


def _read_ini(path: str) -> configparser.ConfigParser:
    if not os.path.exists(path):
        raise ConfigError(f"profile file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path, encoding='utf-8')
    except configparser.Error as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e
    return parser


def _float(section: configparser.SectionProxy, key: str) -> Optional[float]:
    raw = section.get(key)
    if raw is None or raw.strip() == '':
        return None
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"[{section.name}] {key} = {raw!r} is not a number")
    if not math.isfinite(value):
        raise ConfigError(f"[{section.name}] {key} must be finite")
    return value


def _profile_from_section(section: configparser.SectionProxy) -> KeyboardProfile:
    for key in _REQUIRED_KEYS:
        if key not in section:
            raise ConfigError(f"[{section.name}] missing required key '{key}'")
    values = {key: _float(section, key) for key in _FLOAT_KEYS if key in section}
    if values.get('rise_us') is None:
        values.pop('rise_us', None)
    return KeyboardProfile(name=section.name, vendor=section.get('vendor', ''),
                           model=section.get('model', ''), **values)


@lru_cache(maxsize=8)
def load_profiles(path: str = PROFILES_PATH) -> Dict[str, KeyboardProfile]:
    """All keyboard profiles in path, keyed by lower-case section name."""
    parser = _read_ini(path)
    profiles = {}
    for name in parser.sections():
        if name == LINK_SECTION:
            continue
        profiles[name.lower()] = _profile_from_section(parser[name])
    logger.debug("loaded %d keyboard profiles from %s", len(profiles), path)
    return profiles


def get_profile(name: str, path: str = PROFILES_PATH) -> KeyboardProfile:
    """
    Look up a profile by section name, vendor or model (case-insensitive).
    """
    profiles = load_profiles(path)
    key = name.strip().lower()
    if key in profiles:
        return profiles[key]
    for profile in profiles.values():
        if key in (profile.vendor.lower(), profile.model.lower()):
            return profile
    raise UnknownProfile(name, sorted(profiles))


def profile_names(path: str = PROFILES_PATH) -> List[str]:
    return list(load_profiles(path))


@dataclass(frozen=True)
class LinkDefaults:
    link: OpticalLink
    photodiode: PhotodiodeParams
    camera: CameraParams
    target_distance_m: float = 50.0


_LINK_KEYS = ('theta_deg', 'phi_deg', 'd_m', 'r_lens_m', 'loss', 'p_tx_w', 'responsivity',
              'gain', 'p_thr_w', 'target_distance_m', 'wavelength_m', 'h_m', 'aperture_m',
              'focal_m', 'pixel_m', 'led_size_m')


def link_from_mapping(values: Dict[str, float]) -> LinkDefaults:
    """Build link, photodiode and camera parameters from a flat key/value mapping."""
    unknown = set(values) - set(_LINK_KEYS)
    if unknown:
        raise ConfigError(f"unknown link-budget keys: {', '.join(sorted(unknown))}")
    v = dict(values)
    link = OpticalLink(theta=math.radians(v.get('theta_deg', 25.0)), d=v.get('d_m', 1.0),
                       r_lens=v.get('r_lens_m', 0.0254), loss=v.get('loss', 0.8),
                       p_tx=v.get('p_tx_w', 5.4e-3), phi=math.radians(v.get('phi_deg', 0.0)))
    pd = PhotodiodeParams(responsivity=v.get('responsivity', 0.32), gain=v.get('gain', 4.75e5),
                          p_thr=v.get('p_thr_w', 1e-9))
    camera = CameraParams(wavelength=v.get('wavelength_m', 525e-9), h=v.get('h_m', 10.0),
                          aperture=v.get('aperture_m', 5e-3), focal=v.get('focal_m', 4e-3),
                          pixel=v.get('pixel_m', 1.4e-6), led_size=v.get('led_size_m', 2e-3))
    return LinkDefaults(link, pd, camera, v.get('target_distance_m', 50.0))


def read_link_file(path: str) -> LinkDefaults:
    """
    Read a section-less `name = value` link-budget file.
    """
    if not os.path.exists(path):
        raise ConfigError(f"parameter file not found: {path}")
    with open(path, encoding='utf-8') as fh:
        text = fh.read()
    parser = configparser.ConfigParser()
    try:
        parser.read_string(f'[{LINK_SECTION}]\n' + text)
    except configparser.Error as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e
    section = parser[LINK_SECTION]
    try:
        return link_from_mapping({key: _float(section, key) for key in section})
    except (ValueError, TypeError) as e:
        raise ConfigError(f"{path}: {e}") from e


def load_link_defaults(path: str = PROFILES_PATH) -> LinkDefaults:
    """Link-budget parameters from the [link] section of the profile file."""
    parser = _read_ini(path)
    if not parser.has_section(LINK_SECTION):
        raise ConfigError(f"{path} has no [{LINK_SECTION}] section")
    section = parser[LINK_SECTION]
    # [DEFAULT] keys leak into every section; keep only link keys
    values = {key: _float(section, key) for key in _LINK_KEYS if key in section}
    return link_from_mapping(values)
