"""Log/linear conversions and physical constants.

Everything inside the package works in linear SI units (Hz, m, W).
dB, dBm and dBi only appear at API boundaries.
"""
import math
import re

from .errors import InvalidArgumentError, ParseError

SPEED_OF_LIGHT = 299792458.0  # m/s, exact
BOLTZMANN = 1.380649e-23  # J/K, exact

__all__ = [
    "SPEED_OF_LIGHT",
    "BOLTZMANN",
    "db_to_linear",
    "linear_to_db",
    "dbm_to_watts",
    "watts_to_dbm",
    "wavelength",
    "parse_quantity",
]


def _finite(x, name="x"):
    x = float(x)
    if not math.isfinite(x):
        raise InvalidArgumentError(f"{name} must be finite, got {x!r}")
    return x


def _positive(x, name):
    x = _finite(x, name)
    if x <= 0:
        raise InvalidArgumentError(f"{name} must be > 0, got {x!r}")
    return x


def db_to_linear(x):
    return 10.0 ** (_finite(x) / 10.0)


def linear_to_db(ratio):
    ratio = float(ratio)
    if math.isnan(ratio) or ratio < 0 or math.isinf(ratio):
        raise InvalidArgumentError(f"ratio must be finite and >= 0, got {ratio!r}")
    if ratio == 0:
        return -math.inf
    return 10.0 * math.log10(ratio)


def dbm_to_watts(p):
    return 1e-3 * 10.0 ** (_finite(p, "p") / 10.0)


def watts_to_dbm(p):
    return linear_to_db(float(p) / 1e-3)


def wavelength(f):
    return SPEED_OF_LIGHT / _positive(f, "frequency")


_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z]*)\s*$")
_SCALE = {
    "hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9, "thz": 1e12,
    "m": 1.0, "km": 1e3, "cm": 1e-2, "mm": 1e-3, "um": 1e-6,
    "dbm": 1.0, "dbi": 1.0, "db": 1.0,
}


def parse_quantity(text):
    """Parse a printed value such as ``"100cm"``, ``"300GHz"`` or ``"0dBm"``.

    Frequencies come back in Hz and lengths in meters; log units are
    returned unchanged.
    """
    m = _QUANTITY.match(text)
    if m is None or m.group(2).lower() not in _SCALE:
        raise ParseError(f"cannot parse quantity {text!r}")
    return float(m.group(1)) * _SCALE[m.group(2).lower()]
