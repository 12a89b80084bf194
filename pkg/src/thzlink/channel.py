"""Deterministic LOS and single-bounce NLOS channel magnitudes.

Each path is spreading loss x molecular absorption, and NLOS paths also
carry a reflection amplitude: |TE Fresnel| x Rayleigh roughness factor.
"""
import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

from .atmosphere import AtmosphereState, AttenuationTable, absorption_coefficient, amplitude_transmittance
from .errors import InvalidArgumentError
from .geometry import Material, PathKind, RayPath, Reflector, _point, los_path, specular_path
from .units import SPEED_OF_LIGHT, _positive

__all__ = [
    "CombinationMode",
    "Scenario",
    "ChannelResponse",
    "h_spread",
    "los_response",
    "trace_specular_paths",
    "fresnel_reflection",
    "rough_scatter_factor",
    "reflection_coefficient",
    "nlos_response",
    "total_response",
]


class CombinationMode(str, Enum):
    POWER_SUM = "power-sum"
    COHERENT = "coherent"


@dataclass(frozen=True)
class Scenario:
    tx: tuple
    rx: tuple
    reflectors: tuple = ()
    atmosphere: AtmosphereState = field(default_factory=AtmosphereState)
    attenuation: AttenuationTable | None = None

    def __post_init__(self):
        tx, rx = _point(self.tx, "tx"), _point(self.rx, "rx")
        if tx == rx:
            raise InvalidArgumentError("tx and rx coincide")
        object.__setattr__(self, "tx", tx)
        object.__setattr__(self, "rx", rx)
        object.__setattr__(self, "reflectors", tuple(self.reflectors))
        for r in self.reflectors:
            if not isinstance(r, Reflector):
                raise InvalidArgumentError(f"expected Reflector, got {type(r).__name__}")
        if self.attenuation is None:
            lossless = AttenuationTable.constant(
                0.0, 1.0, 1e15, reference_state=self.atmosphere, source_label="lossless"
            )
            object.__setattr__(self, "attenuation", lossless)

    @property
    def distance(self):
        return math.dist(self.tx, self.rx)

    def swapped(self):
        return Scenario(self.rx, self.tx, self.reflectors, self.atmosphere, self.attenuation)

    def alpha(self, f):
        return absorption_coefficient(self.attenuation, f, self.atmosphere)


@dataclass(frozen=True)
class ChannelResponse:
    frequency: float
    per_path: tuple  # ((RayPath, magnitude), ...)
    combined_magnitude: float
    combination_mode: CombinationMode = CombinationMode.POWER_SUM
    warnings: tuple = ()


def h_spread(f, path_length):
    """Free-space spreading amplitude c / (4 pi f r)."""
    f = _positive(f, "frequency")
    path_length = _positive(path_length, "path_length")
    return SPEED_OF_LIGHT / (4.0 * math.pi * f * path_length)


def los_response(scenario, f):
    path = los_path(scenario.tx, scenario.rx)
    r = path.length
    return path, h_spread(f, r) * amplitude_transmittance(scenario.alpha(f), r)


def trace_specular_paths(scenario):
    """LOS path followed by at most one specular path per reflector."""
    paths = [los_path(scenario.tx, scenario.rx)]
    for i, refl in enumerate(scenario.reflectors):
        p = specular_path(scenario.tx, scenario.rx, refl, i)
        if p is not None:
            paths.append(p)
    return paths


def _check_angle(incidence_angle):
    theta = float(incidence_angle)
    if not 0 <= theta < math.pi / 2:
        raise InvalidArgumentError(f"incidence angle must be in [0, pi/2), got {theta!r}")
    return theta


def fresnel_reflection(material, incidence_angle):
    """TE (s-polarised) amplitude reflection coefficient of a lossless dielectric."""
    theta = _check_angle(incidence_angle)
    if material.is_ideal:
        return -1.0
    n = material.refractive_index
    cos_t = math.cos(theta)
    root = math.sqrt(n * n - math.sin(theta) ** 2)
    return (cos_t - root) / (cos_t + root)


def rough_scatter_factor(material, f, incidence_angle):
    """Rayleigh roughness amplitude factor exp(-g/2), g = (4 pi sigma f cos(theta) / c)^2."""
    f = _positive(f, "frequency")
    theta = _check_angle(incidence_angle)
    g = (4.0 * math.pi * material.roughness_sigma * f * math.cos(theta) / SPEED_OF_LIGHT) ** 2
    return math.exp(-0.5 * g)


def reflection_coefficient(material, f, incidence_angle):
    """Square root of the expected specular power reflectivity |Gamma|^2 * rho^2."""
    return abs(fresnel_reflection(material, incidence_angle)) * rough_scatter_factor(
        material, f, incidence_angle
    )


def nlos_response(scenario, path, f):
    if path.kind != PathKind.NLOS:
        raise InvalidArgumentError("nlos_response needs an NLOS path")
    material = scenario.reflectors[path.reflector_index].material
    r = path.length
    return (
        reflection_coefficient(material, f, path.incidence_angle)
        * h_spread(f, r)
        * amplitude_transmittance(scenario.alpha(f), r)
    )


def total_response(scenario, f, mode=CombinationMode.POWER_SUM):
    """Trace all paths and combine their magnitudes.

    ``power-sum`` adds path powers; ``coherent`` adds phasors with the
    propagation phase exp(-j 2 pi f L / c) of each path length L.
    """
    mode = CombinationMode(mode)
    per_path = []
    for path in trace_specular_paths(scenario):
        if path.kind == PathKind.LOS:
            mag = los_response(scenario, f)[1]
        else:
            mag = nlos_response(scenario, path, f)
        per_path.append((path, mag))

    if mode == CombinationMode.POWER_SUM:
        combined = math.sqrt(math.fsum(m * m for _, m in per_path))
    else:
        k = 2.0 * math.pi * f / SPEED_OF_LIGHT
        combined = abs(sum(m * cmath.exp(-1j * k * p.length) for p, m in per_path))

    msg = scenario.attenuation.state_warning(scenario.atmosphere)
    return ChannelResponse(float(f), tuple(per_path), combined, mode, (msg,) if msg else ())
