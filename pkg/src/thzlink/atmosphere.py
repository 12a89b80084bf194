"""Table-driven molecular absorption and transmission-window search.

Specific attenuation is read from a precomputed spectrum (GHz vs dB/km)
and linearly interpolated. There is no temperature/pressure rescaling: a
table is only valid at its reference state.
"""
import bisect
import io
import math
import os
from dataclasses import dataclass, field
from importlib import resources

from .errors import InvalidArgumentError, OutOfRangeError, ParseError

CSV_HEADER = "frequency_ghz,attenuation_db_per_km"

# dB/km -> 1/m (power) : A * ln(10) / 10 / 1000
_DB_PER_KM_TO_NEPER_PER_M = math.log(10.0) / 10000.0

# relative difference tolerated before a state-mismatch warning is raised
STATE_TOLERANCE = 0.01


@dataclass(frozen=True)
class AtmosphereState:
    temperature_kelvin: float = 296.0
    pressure_pascal: float = 101325.0

    def __post_init__(self):
        for name in ("temperature_kelvin", "pressure_pascal"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidArgumentError(f"{name} must be > 0, got {v!r}")


@dataclass(frozen=True)
class TransmissionWindow:
    low: float
    high: float
    min_attenuation: float
    center: float

    def __post_init__(self):
        if not (self.low < self.high and self.low <= self.center <= self.high):
            raise InvalidArgumentError(f"inconsistent window {self!r}")

    @property
    def bandwidth(self):
        return self.high - self.low

    def __contains__(self, f):
        return self.low <= f <= self.high


@dataclass(frozen=True)
class AttenuationTable:
    """Frequency (Hz) vs specific attenuation (dB/km) samples."""

    frequencies: tuple
    attenuations: tuple
    reference_state: AtmosphereState = field(default_factory=AtmosphereState)
    source_label: str = ""

    def __post_init__(self):
        fs = tuple(float(f) for f in self.frequencies)
        att = tuple(float(a) for a in self.attenuations)
        object.__setattr__(self, "frequencies", fs)
        object.__setattr__(self, "attenuations", att)
        if len(fs) != len(att):
            raise InvalidArgumentError("frequencies and attenuations differ in length")
        if len(fs) < 2:
            raise InvalidArgumentError("attenuation table needs at least 2 samples")
        for i, (f, a) in enumerate(zip(fs, att)):
            if not (math.isfinite(f) and math.isfinite(a)):
                raise InvalidArgumentError(f"non-finite sample {i}")
            if a < 0:
                raise InvalidArgumentError(f"negative attenuation at sample {i}")
            if i and f <= fs[i - 1]:
                raise InvalidArgumentError(f"non-increasing frequency at sample {i}")

    @classmethod
    def constant(cls, attenuation, low=100e9, high=500e9, **kwargs):
        """Flat table, handy for lossless (``attenuation=0``) scenarios."""
        return cls((low, high), (attenuation, attenuation), **kwargs)

    @property
    def samples(self):
        return list(zip(self.frequencies, self.attenuations))

    @property
    def span(self):
        return self.frequencies[0], self.frequencies[-1]

    def __len__(self):
        return len(self.frequencies)

    def specific_attenuation(self, f):
        """Interpolated attenuation in dB/km at ``f`` Hz; no extrapolation."""
        f = float(f)
        lo, hi = self.span
        if not (lo <= f <= hi):
            raise OutOfRangeError(
                f"frequency {f!r} Hz outside table span [{lo!r}, {hi!r}]"
            )
        fs, att = self.frequencies, self.attenuations
        i = bisect.bisect_left(fs, f)
        if fs[i] == f:
            return att[i]
        f0, f1 = fs[i - 1], fs[i]
        a0, a1 = att[i - 1], att[i]
        return a0 + (f - f0) / (f1 - f0) * (a1 - a0)

    def state_warning(self, state):
        """Return a warning message if ``state`` differs from the table's, else None."""
        ref = self.reference_state
        dt = abs(state.temperature_kelvin - ref.temperature_kelvin) / ref.temperature_kelvin
        dp = abs(state.pressure_pascal - ref.pressure_pascal) / ref.pressure_pascal
        if dt > STATE_TOLERANCE or dp > STATE_TOLERANCE:
            return (
                f"atmosphere state (T={state.temperature_kelvin} K, "
                f"p={state.pressure_pascal} Pa) differs from table reference "
                f"(T={ref.temperature_kelvin} K, p={ref.pressure_pascal} Pa); "
                "table values used without rescaling"
            )
        return None


def load_attenuation_table(source, reference_state=None, source_label=None):
    """Parse the attenuation CSV format.

    ``source`` may be a path, a binary stream or a text stream. The first
    line must be exactly ``frequency_ghz,attenuation_db_per_km``; ``#``
    lines after it are comments. Frequencies are converted to Hz.
    """
    if isinstance(source, (str, os.PathLike)):
        label = source_label or os.fspath(source)
        with open(source, "rb") as fh:
            raw = fh.read()
    else:
        label = source_label or getattr(source, "name", "<stream>")
        raw = source.read()
    if isinstance(raw, bytes):
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"attenuation table is not UTF-8: {exc}") from None
    else:
        text = raw

    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln[:-1] if ln.endswith("\r") else ln for ln in lines]
    if not lines:
        raise ParseError("empty attenuation table", line=1)
    if lines[0] != CSV_HEADER:
        raise ParseError(f"expected header {CSV_HEADER!r}", line=1)

    freqs, atts = [], []
    for lineno, ln in enumerate(lines[1:], start=2):
        if ln.startswith("#"):
            continue
        if ln == "":
            raise ParseError("blank line", line=lineno)
        parts = ln.split(",")
        if len(parts) != 2:
            raise ParseError("expected two comma-separated fields", line=lineno)
        try:
            f_ghz, a = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(f"malformed number in {ln!r}", line=lineno) from None
        if not (math.isfinite(f_ghz) and math.isfinite(a)):
            raise ParseError("non-finite value", line=lineno)
        if a < 0:
            raise ParseError("negative attenuation", line=lineno)
        f = f_ghz * 1e9
        if freqs and f <= freqs[-1]:
            raise ParseError("non-increasing frequency", line=lineno)
        freqs.append(f)
        atts.append(a)
    if len(freqs) < 2:
        raise ParseError(f"need at least 2 samples, got {len(freqs)}", line=len(lines))
    return AttenuationTable(
        tuple(freqs),
        tuple(atts),
        reference_state or AtmosphereState(),
        label,
    )


def demo_table():
    """Synthetic water-vapour-like spectrum shipped with the package.

    Shaped like a sea-level humid spectrum with a low-loss window around
    300 GHz. Not measured data.
    """
    ref = resources.files("thzlink") / "data" / "demo_attenuation.csv"
    return load_attenuation_table(io.BytesIO(ref.read_bytes()), source_label="demo (synthetic)")


def absorption_coefficient(table, f, state=None):
    """Power absorption coefficient in 1/m at ``f`` Hz.

    ``exp(-alpha * r)`` equals ``10 ** (-A * r / 10000)`` for the
    interpolated specific attenuation ``A`` in dB/km. ``state`` is only
    validated; use :meth:`AttenuationTable.state_warning` to detect a
    mismatch.
    """
    if state is not None and not isinstance(state, AtmosphereState):
        raise InvalidArgumentError("state must be an AtmosphereState")
    return table.specific_attenuation(f) * _DB_PER_KM_TO_NEPER_PER_M


def amplitude_transmittance(alpha, r):
    alpha, r = float(alpha), float(r)
    if not (alpha >= 0 and math.isfinite(alpha)):
        raise InvalidArgumentError(f"alpha must be finite and >= 0, got {alpha!r}")
    if not (r >= 0 and math.isfinite(r)):
        raise InvalidArgumentError(f"path length must be finite and >= 0, got {r!r}")
    return math.exp(-0.5 * alpha * r)


def find_windows(table, threshold):
    """Maximal frequency intervals where the interpolated attenuation is <= threshold.

    Edges are exact crossings of the piecewise-linear interpolant. The
    minimum inside each window sits on a sample or an edge; ties go to the
    lowest frequency. Zero-width touches are dropped.
    """
    threshold = float(threshold)
    if not (math.isfinite(threshold) and threshold > 0):
        raise InvalidArgumentError(f"threshold must be > 0, got {threshold!r}")

    fs, att = table.frequencies, table.attenuations
    # candidate (frequency, attenuation) points inside the current window
    windows = []
    current = None

    def close():
        nonlocal current
        if current is not None:
            pts = current
            if pts[-1][0] > pts[0][0]:
                best = min(pts, key=lambda p: (p[1], p[0]))
                windows.append(TransmissionWindow(pts[0][0], pts[-1][0], best[1], best[0]))
            current = None

    for i in range(len(fs) - 1):
        f0, f1, a0, a1 = fs[i], fs[i + 1], att[i], att[i + 1]
        in0, in1 = a0 <= threshold, a1 <= threshold
        if in0 and in1:
            seg = [(f0, a0), (f1, a1)]
        elif in0:
            seg = [(f0, a0), (_crossing(f0, f1, a0, a1, threshold), threshold)]
        elif in1:
            seg = [(_crossing(f0, f1, a0, a1, threshold), threshold), (f1, a1)]
        else:
            close()
            continue
        if current is not None and current[-1][0] == seg[0][0]:
            current.extend(seg[1:] if current[-1] == seg[0] else seg)
        else:
            close()
            current = list(seg)
        if not in1:
            close()
    close()
    return windows


def _crossing(f0, f1, a0, a1, level):
    return f0 + (level - a0) / (a1 - a0) * (f1 - f0)
