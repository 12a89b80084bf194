"""Shannon capacity and the path-loss / capacity sweep engines."""
import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidArgumentError
from .linkbudget import DEFAULT_BANDWIDTH, friis_received_power, fspl_db
from .units import _finite, _positive

PAPER_SNR_DB = 20.0


@dataclass(frozen=True)
class CapacityQuery:
    bandwidth: float = DEFAULT_BANDWIDTH
    snr: float | None = PAPER_SNR_DB  # dB; None means derive from the link
    center_frequency: float = 300e9

    def __post_init__(self):
        _positive(self.bandwidth, "bandwidth")
        _positive(self.center_frequency, "center_frequency")


def _axis(values, name):
    values = tuple(float(v) for v in values)
    if not values:
        raise InvalidArgumentError(f"{name} axis is empty")
    for v in values:
        _positive(v, name)
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InvalidArgumentError(f"{name} axis must be strictly increasing")
    return values


@dataclass(frozen=True)
class SweepGrid:
    distances: tuple
    frequencies: tuple

    def __post_init__(self):
        object.__setattr__(self, "distances", _axis(self.distances, "distance"))
        object.__setattr__(self, "frequencies", _axis(self.frequencies, "frequency"))

    @classmethod
    def from_ranges(cls, d_start, d_stop, d_num, f_start, f_stop, f_num):
        """Log-spaced distances and linearly spaced frequencies, endpoints inclusive."""
        return cls(_logspace(d_start, d_stop, d_num), _linspace(f_start, f_stop, f_num))

    @classmethod
    def default(cls, center_frequency=300e9, bandwidth=DEFAULT_BANDWIDTH):
        """0.1-10 m over 21 log-spaced points x the 40 GHz window in 5 GHz steps."""
        half = bandwidth / 2
        return cls.from_ranges(0.1, 10.0, 21, center_frequency - half, center_frequency + half, 9)

    def cells(self):
        return [(d, f) for d in self.distances for f in self.frequencies]


def _linspace(start, stop, num):
    num = int(num)
    if num < 1:
        raise InvalidArgumentError("need at least one point")
    if num == 1:
        return (float(start),)
    step = (stop - start) / (num - 1)
    return tuple(start + i * step for i in range(num - 1)) + (float(stop),)


def _logspace(start, stop, num):
    start, stop = _positive(start, "start"), _positive(stop, "stop")
    exps = _linspace(math.log10(start), math.log10(stop), num)
    pts = [10.0**e for e in exps]
    pts[0] = start
    pts[-1] = stop
    return tuple(pts)


class GridRow(NamedTuple):
    distance: float
    frequency: float
    value: float


def shannon_capacity(bandwidth, snr):
    """B * log2(1 + SNR) in bit/s with ``snr`` in dB (``-inf`` gives 0)."""
    bandwidth = _positive(bandwidth, "bandwidth")
    snr = float(snr)
    if math.isnan(snr) or snr == math.inf:
        raise InvalidArgumentError(f"snr must be finite or -inf, got {snr!r}")
    return bandwidth * math.log2(1.0 + 10.0 ** (snr / 10.0))


def capacity_from_link(budget, bandwidth=DEFAULT_BANDWIDTH):
    result = friis_received_power(budget, bandwidth)
    return result, shannon_capacity(bandwidth, result.snr)


def _run(fn, cells, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # map() yields in submission order, so rows stay row-major
            return list(pool.map(fn, cells))
    return [fn(c) for c in cells]


def path_loss_grid(grid, workers=None):
    """FSPL for every (distance, frequency) cell; distances outer, frequencies inner."""
    return _run(lambda c: GridRow(c[0], c[1], fspl_db(*c)), grid.cells(), workers)


def capacity_sweep(budget, grid, bandwidth=DEFAULT_BANDWIDTH, snr_db=PAPER_SNR_DB, workers=None):
    """Capacity per grid cell.

    With ``snr_db`` set, every cell uses that fixed SNR. With
    ``snr_db=None`` the SNR is derived from ``budget`` with its distance
    and frequency replaced by the cell's.
    """
    _positive(bandwidth, "bandwidth")
    if snr_db is not None:
        fixed = shannon_capacity(bandwidth, _finite(snr_db, "snr_db"))
        return [GridRow(d, f, fixed) for d, f in grid.cells()]

    def cell(c):
        b = dataclasses.replace(budget, distance=c[0], frequency=c[1])
        return GridRow(c[0], c[1], capacity_from_link(b, bandwidth)[1])

    return _run(cell, grid.cells(), workers)
