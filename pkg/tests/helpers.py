"""Random scenario generation and brute-force geometry oracles for tests."""
import math

import numpy as np

from thzlink.channel import Scenario
from thzlink.geometry import Material, Reflector, specular_path


def random_reflector_scenario(rng, table=None, material=None):
    """Single-reflector scenario that is guaranteed to have a specular path."""
    while True:
        a = rng.uniform(-10, 10, 2)
        b = rng.uniform(-10, 10, 2)
        if np.linalg.norm(b - a) < 1.0:
            continue
        tx = rng.uniform(-10, 10, 2)
        rx = rng.uniform(-10, 10, 2)
        if np.linalg.norm(tx - rx) < 0.1:
            continue
        mat = material or Material(rng.uniform(1.2, 4.0), rng.uniform(0, 200e-6), "random")
        refl = Reflector(tuple(a), tuple(b), mat)
        path = specular_path(tuple(tx), tuple(rx), refl, 0)
        if path is None or path.incidence_angle > math.radians(85):
            continue
        return Scenario(tuple(tx), tuple(rx), (refl,), attenuation=table)


def _length(tx, rx, p):
    return np.hypot(*(p - tx)) + np.hypot(*(p - rx))


def brute_force_specular_point(tx, rx, reflector, samples=10_000):
    """Minimise |tx-s| + |s-rx| over the segment.

    A dense sample grid locates the bracket; bisection on the derivative of
    the (convex) path length then polishes the minimiser.
    """
    tx, rx = np.asarray(tx, float), np.asarray(rx, float)
    a, b = np.asarray(reflector.endpoint_a, float), np.asarray(reflector.endpoint_b, float)
    t = np.linspace(0.0, 1.0, samples)
    pts = a + t[:, None] * (b - a)
    lengths = np.hypot(*(pts - tx).T) + np.hypot(*(pts - rx).T)
    k = int(np.argmin(lengths))
    lo, hi = t[max(k - 1, 0)], t[min(k + 1, samples - 1)]
    u = b - a

    def slope(s):
        p = a + s * u
        return np.dot(p - tx, u) / np.linalg.norm(p - tx) + np.dot(p - rx, u) / np.linalg.norm(p - rx)

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if slope(mid) > 0:
            hi = mid
        else:
            lo = mid
    s = 0.5 * (lo + hi)
    p = a + s * u
    return p, float(_length(tx, rx, p)), float(lengths.min())


def angles_from_normal(tx, rx, point, reflector):
    """Incidence and reflection angles (from the surface normal) at ``point``."""
    n = np.asarray(reflector.normal)
    inc = np.asarray(tx) - point
    out = np.asarray(rx) - point

    def ang(v):
        return math.atan2(abs(n[0] * v[1] - n[1] * v[0]), abs(np.dot(n, v)))

    return ang(inc), ang(out)


DATA = __import__("pathlib").Path(__file__).parent / "data"
GOLDEN = __import__("pathlib").Path(__file__).parent / "golden"

# one golden case per CLI subcommand
GOLDEN_CASES = {
    "pathloss": ["pathloss", "--distance", "1", "--frequency", "300e9"],
    "friis": ["friis", "--format", "csv"],
    "los": ["los", "--scenario", str(DATA / "wall.json"), "--frequency", "300e9", "--format", "csv"],
    "nlos": ["nlos", "--scenario", str(DATA / "wall.json"), "--frequency", "300e9", "--combine", "power-sum"],
    "capacity": ["capacity", "--bandwidth", "40e9", "--snr-db", "20"],
    "sweep": ["sweep", "--quantity", "capacity", "--derive-snr", "--distance-range", "0.1", "10", "5",
              "--frequency-range", "280e9", "320e9", "3", "--format", "json"],
    "windows": ["windows", "--threshold", "2.0"],
}
