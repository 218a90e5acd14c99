"""
Run configuration shared by the CLI subcommands.
"""
import math
import os
from dataclasses import dataclass, field, replace
from typing import List, Optional

from src.channel.profiles import KeyboardProfile, get_profile
from src.channel.simulator import NoiseModel
from src.data import PROFILES_PATH
from src.receive.demodulator import DecodeConfig
from src.transmit.modulation import SCHEMES, LedState, SymbolTiming, camera_bitrate, timing_for_bitrate
from src.utils.errors import ConfigError, LedChannelError

RECEIVERS = ('sensor', 'camera')


def profile_timing(scheme: str, profile: KeyboardProfile) -> SymbolTiming:
    """Fastest timing the keyboard's switching limits allow for scheme."""
    t = profile.min_switch_us
    if scheme == 'ook':
        return SymbolTiming(t_on=t, t_off=t, t_d=t, t_all=t)
    if scheme == 'bfsk':
        return SymbolTiming(t_on=2 * t, t_off=t, t_d=t, t_all=2 * t)
    level = max(t, profile.ask_level_us or t)
    return SymbolTiming(t_on=level, t_off=level, t_d=0.0, t_all=level)


@dataclass
class RunConfig:
    """
    Everything one CLI invocation needs.

    Timing resolves in layers: --bitrate (or the camera's default rate, or the
    profile's switching limit) gives the base, and each --t*-us flag overrides
    one duration.
    """

    subcommand: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    profile: str = 'dell'
    scheme: str = 'ook'
    t_on_us: Optional[float] = None
    t_off_us: Optional[float] = None
    t_d_us: Optional[float] = None
    t_all_us: Optional[float] = None
    bitrate: Optional[float] = None
    sigma: float = 0.0
    seed: int = 0
    sample_rate: float = 500_000
    fps: float = 30.0
    exposure: float = 0.9
    receiver: str = 'sensor'
    leds: str = '100'
    lock_ms: Optional[float] = None
    profiles_path: str = PROFILES_PATH
    profiles: List[str] = field(default_factory=list)
    schemes: List[str] = field(default_factory=list)

    def __post_init__(self):
        for scheme in [self.scheme] + list(self.schemes):
            if scheme not in SCHEMES:
                raise ConfigError(f"unknown scheme '{scheme}' (expected one of {', '.join(SCHEMES)})")
        if self.receiver not in RECEIVERS:
            raise ConfigError(f"receiver must be one of {', '.join(RECEIVERS)}, got '{self.receiver}'")
        if not self.sample_rate > 0:
            raise ConfigError(f"sample rate must be positive, got {self.sample_rate}")
        if not self.fps > 0:
            raise ConfigError(f"fps must be positive, got {self.fps}")
        if not 0 < self.exposure <= 1:
            raise ConfigError(f"exposure fraction must be in (0, 1], got {self.exposure}")
        if not (self.sigma >= 0 and math.isfinite(self.sigma)):
            raise ConfigError(f"sigma must be finite and >= 0, got {self.sigma}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        if self.lock_ms is not None and not self.lock_ms > 0:
            raise ConfigError(f"--lock-ms must be positive, got {self.lock_ms}")
        if self.bitrate is not None and not self.bitrate > 0:
            raise ConfigError(f"--bitrate must be positive, got {self.bitrate}")
        if self.input_path is not None and not os.path.isfile(self.input_path):
            raise ConfigError(f"input file not found: {self.input_path}")
        if self.output_path is not None:
            folder = os.path.dirname(os.path.abspath(self.output_path))
            if not os.path.isdir(folder):
                raise ConfigError(f"output directory does not exist: {folder}")
        # Referenced profiles must exist
        for name in [self.profile] + list(self.profiles):
            get_profile(name, self.profiles_path)

    @classmethod
    def from_args(cls, args) -> 'RunConfig':
        """Build from an argparse namespace; missing attributes keep their defaults."""
        values = {}
        for name in cls.__dataclass_fields__:
            value = getattr(args, name, None)
            if value is not None:
                values[name] = value
        return cls(**values)

    def keyboard(self) -> KeyboardProfile:
        return get_profile(self.profile, self.profiles_path)

    def led_mask(self) -> LedState:
        try:
            return LedState.from_bits(self.leds)
        except (ValueError, LedChannelError) as e:
            raise ConfigError(f"--leds must be a 3-bit string like 100, got '{self.leds}'") from e

    @property
    def has_timing_overrides(self) -> bool:
        return self.bitrate is not None or any(
            v is not None for v in (self.t_on_us, self.t_off_us, self.t_d_us, self.t_all_us))

    def timing(self) -> SymbolTiming:
        if self.bitrate is not None:
            base = timing_for_bitrate(self.scheme, self.bitrate)
        elif self.receiver == 'camera':
            base = timing_for_bitrate(self.scheme, camera_bitrate(self.scheme, self.fps))
        else:
            base = profile_timing(self.scheme, self.keyboard())
        overrides = {name: value for name, value in (('t_on', self.t_on_us), ('t_off', self.t_off_us),
                                                      ('t_d', self.t_d_us), ('t_all', self.t_all_us))
                     if value is not None}
        return replace(base, **overrides) if overrides else base

    def noise(self) -> NoiseModel:
        return NoiseModel(self.sigma, self.seed)

    def decode_config(self) -> DecodeConfig:
        """
        Receiver settings. On/off schemes on the sensor calibrate timing from
        the preamble unless timing flags were given.
        """
        blind = self.receiver == 'sensor' and self.scheme in ('ook', 'bfsk') and not self.has_timing_overrides
        return DecodeConfig(scheme=self.scheme, timing=None if blind else self.timing(),
                            leds=self.led_mask(), exposure_fraction=self.exposure)
