"""
Optics Module - radiometric link budget for a status LED seen by a photodiode
or a camera.

Model:
- Lambertian emitter, R(theta) = cos(theta) / pi
- receiver lens of radius r seen under solid angle pi r^2 / d^2 (r << d)
- received power P_r = P_t R(theta) Omega L
- photodiode output V = P R A (responsivity R in A/W, transimpedance gain A in V/A)
- camera limits: Rayleigh spot 1.22 lambda h / aperture, one-pixel distance f t / p

Angles are radians, lengths metres, powers watts.
"""
import math
from dataclasses import dataclass, replace
from typing import Optional

from scipy import integrate

from src.utils.errors import GeometryError, OpticsError, OutOfPattern

# Geometry must satisfy r_lens / d below this for the small-lens approximation
MAX_LENS_RATIO = 0.1
RAYLEIGH_FACTOR = 1.22

GREEN_WAVELENGTH_M = 525e-9
RED_WAVELENGTH_M = 625e-9


@dataclass(frozen=True)
class OpticalLink:
    """
    Emitter/receiver geometry.

    d may be left unset when the link is used to solve for distance.
    phi records axial misalignment and does not enter the power equation.
    """

    theta: float = math.radians(25.0)
    d: Optional[float] = None
    r_lens: float = 0.0254
    loss: float = 0.8
    p_tx: float = 1e-3
    phi: float = 0.0

    def __post_init__(self):
        if not 0 <= self.theta < math.pi / 2:
            raise OutOfPattern(f"irradiance angle {math.degrees(self.theta):.2f} deg outside [0, 90)")
        if self.d is not None and not self.d > 0:
            raise GeometryError(f"distance must be positive, got {self.d}")
        if not self.r_lens > 0:
            raise GeometryError(f"lens radius must be positive, got {self.r_lens}")
        if not 0 < self.loss <= 1:
            raise OpticsError(f"loss factor must be in (0, 1], got {self.loss}")
        if not self.p_tx > 0:
            raise OpticsError(f"transmit power must be positive, got {self.p_tx}")

    def at_distance(self, d: float) -> 'OpticalLink':
        return replace(self, d=d)


@dataclass(frozen=True)
class CameraParams:
    wavelength: float = GREEN_WAVELENGTH_M
    h: float = 10.0
    aperture: float = 5e-3
    focal: float = 4e-3
    pixel: float = 1.4e-6
    led_size: float = 2e-3

    def __post_init__(self):
        for name in ('wavelength', 'h', 'aperture', 'focal', 'pixel'):
            if not getattr(self, name) > 0:
                raise OpticsError(f"{name} must be positive, got {getattr(self, name)}")
        if self.led_size < 0:
            raise OpticsError(f"led_size must be non-negative, got {self.led_size}")


@dataclass(frozen=True)
class PhotodiodeParams:
    responsivity: float = 0.32
    gain: float = 4.75e5
    p_thr: float = 1e-9

    def __post_init__(self):
        for name in ('responsivity', 'gain', 'p_thr'):
            if not getattr(self, name) > 0:
                raise OpticsError(f"{name} must be positive, got {getattr(self, name)}")


def lambertian_intensity(theta: float) -> float:
    """Radiant intensity per unit power, cos(theta)/pi, in 1/sr."""
    if not 0 <= theta < math.pi / 2:
        raise OutOfPattern(f"irradiance angle {theta} rad outside [0, pi/2)")
    return math.cos(theta) / math.pi


def solid_angle(r_lens: float, d: float) -> float:
    """pi r^2 / d^2, valid for r_lens / d < 0.1."""
    if not (r_lens > 0 and d > 0):
        raise GeometryError("lens radius and distance must be positive")
    if r_lens / d >= MAX_LENS_RATIO:
        raise GeometryError(f"lens radius {r_lens} m not small against distance {d} m")
    return math.pi * r_lens ** 2 / d ** 2


def received_power(link: OpticalLink) -> float:
    if link.d is None:
        raise GeometryError("received power needs a distance")
    return link.p_tx * lambertian_intensity(link.theta) * solid_angle(link.r_lens, link.d) * link.loss


def effective_distance(link: OpticalLink, pd: PhotodiodeParams) -> float:
    """Largest distance at which received power still reaches pd.p_thr."""
    gain = math.pi * link.p_tx * lambertian_intensity(link.theta) * link.loss
    return link.r_lens * math.sqrt(gain / pd.p_thr)


def required_tx_power(link: OpticalLink, pd: PhotodiodeParams, d_target: float) -> float:
    """Smallest LED power whose effective distance reaches d_target."""
    if not d_target > 0:
        raise GeometryError(f"target distance must be positive, got {d_target}")
    denom = math.pi * link.r_lens ** 2 * lambertian_intensity(link.theta) * link.loss
    return pd.p_thr * d_target ** 2 / denom


def tx_power_from_received(p_received: float, link: OpticalLink) -> float:
    """Invert the received-power equation at link.d for the emitted power."""
    unit = received_power(replace(link, p_tx=1.0))
    return p_received / unit


def diffraction_limit(c: CameraParams) -> float:
    """Smallest resolvable spot at distance h, 1.22 lambda h / aperture."""
    return RAYLEIGH_FACTOR * c.wavelength * c.h / c.aperture


def max_one_pixel_distance(c: CameraParams) -> float:
    """Distance at which the LED image shrinks to one pixel, f t / p."""
    return c.focal * c.led_size / c.pixel


def diffraction_limited_distance(c: CameraParams) -> float:
    """Distance at which the Rayleigh spot grows to the LED size."""
    return c.led_size * c.aperture / (RAYLEIGH_FACTOR * c.wavelength)


def camera_range(c: CameraParams) -> float:
    return min(max_one_pixel_distance(c), diffraction_limited_distance(c))


def pd_voltage(p_in: float, pd: PhotodiodeParams) -> float:
    if p_in < 0:
        raise OpticsError(f"optical power must be non-negative, got {p_in}")
    return p_in * pd.responsivity * pd.gain


def hemisphere_integral() -> float:
    """Integral of the Lambertian pattern over the emitting hemisphere (1 when normalized)."""
    value, _ = integrate.quad(lambda t: lambertian_intensity(t) * math.sin(t), 0.0, math.pi / 2 - 1e-12)
    return 2 * math.pi * value
