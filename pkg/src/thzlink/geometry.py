"""2D scene description and first-order image-method ray tracing."""
import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidArgumentError


class PathKind(str, Enum):
    LOS = "LOS"
    NLOS = "NLOS"


@dataclass(frozen=True)
class Material:
    """Lossless dielectric with Gaussian surface roughness.

    ``refractive_index=math.inf`` is the perfect-reflector idealization
    (|Fresnel coefficient| == 1).
    """

    refractive_index: float
    roughness_sigma: float = 0.0  # m, RMS height
    label: str = ""

    def __post_init__(self):
        n = float(self.refractive_index)
        if math.isnan(n) or n <= 1:
            raise InvalidArgumentError(f"refractive_index must be > 1, got {n!r}")
        s = float(self.roughness_sigma)
        if not (math.isfinite(s) and s >= 0):
            raise InvalidArgumentError(f"roughness_sigma must be >= 0, got {s!r}")

    @property
    def is_ideal(self):
        return math.isinf(self.refractive_index)


def _point(p, name):
    try:
        x, y = (float(v) for v in p)
    except (TypeError, ValueError):
        raise InvalidArgumentError(f"{name} must be a 2D point, got {p!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidArgumentError(f"{name} must be finite, got {p!r}")
    return (x, y)


@dataclass(frozen=True)
class Reflector:
    endpoint_a: tuple
    endpoint_b: tuple
    material: Material

    def __post_init__(self):
        a = _point(self.endpoint_a, "endpoint_a")
        b = _point(self.endpoint_b, "endpoint_b")
        if a == b:
            raise InvalidArgumentError("reflector endpoints coincide")
        object.__setattr__(self, "endpoint_a", a)
        object.__setattr__(self, "endpoint_b", b)

    @property
    def length(self):
        return math.dist(self.endpoint_a, self.endpoint_b)

    @property
    def direction(self):
        (ax, ay), (bx, by) = self.endpoint_a, self.endpoint_b
        ln = self.length
        return ((bx - ax) / ln, (by - ay) / ln)

    @property
    def normal(self):
        ux, uy = self.direction
        return (-uy, ux)


@dataclass(frozen=True)
class RayPath:
    """One resolved propagation path.

    For LOS paths ``leg1`` is the full distance and ``leg2`` is 0.
    ``incidence_angle`` is measured from the surface normal.
    """

    kind: PathKind
    leg1: float
    leg2: float = 0.0
    incidence_angle: float | None = None
    reflector_index: int | None = None
    reflection_point: tuple | None = None

    def __post_init__(self):
        if self.leg1 < 0 or self.leg2 < 0:
            raise InvalidArgumentError("path legs must be >= 0")
        if self.kind == PathKind.NLOS:
            if self.incidence_angle is None or not 0 <= self.incidence_angle < math.pi / 2:
                raise InvalidArgumentError(
                    f"NLOS incidence angle must be in [0, pi/2), got {self.incidence_angle!r}"
                )

    @property
    def length(self):
        return self.leg1 + self.leg2


def los_path(tx, rx):
    return RayPath(PathKind.LOS, math.dist(tx, rx))


def specular_path(tx, rx, reflector, index=None):
    """Single-bounce specular path off ``reflector`` or None.

    The transmitter is mirrored across the reflector's line and the
    image-to-receiver segment is intersected with the reflector. None when
    the hit falls outside the open segment, when tx and rx are on opposite
    sides, or when either lies on the line.
    """
    ax, ay = reflector.endpoint_a
    ux, uy = reflector.direction
    nx, ny = reflector.normal
    tx_n = (tx[0] - ax) * nx + (tx[1] - ay) * ny
    rx_n = (rx[0] - ax) * nx + (rx[1] - ay) * ny
    if tx_n == 0 or rx_n == 0 or (tx_n > 0) != (rx_n > 0):
        return None
    # along-line coordinates of both terminals; the hit splits them in ratio tx_n : rx_n
    tx_u = (tx[0] - ax) * ux + (tx[1] - ay) * uy
    rx_u = (rx[0] - ax) * ux + (rx[1] - ay) * uy
    t = tx_n / (tx_n + rx_n)
    s = tx_u + t * (rx_u - tx_u)
    if not 0 < s < reflector.length:
        return None
    px, py = ax + s * ux, ay + s * uy
    leg1 = math.hypot(s - tx_u, tx_n)
    leg2 = math.hypot(rx_u - s, rx_n)
    angle = math.atan2(abs(s - tx_u), abs(tx_n))
    return RayPath(PathKind.NLOS, leg1, leg2, angle, index, (px, py))
