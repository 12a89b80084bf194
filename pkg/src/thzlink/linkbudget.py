"""Free-space path loss, Friis received power, thermal noise and SNR."""
import math
from dataclasses import dataclass

from .errors import InvalidArgumentError
from .units import BOLTZMANN, SPEED_OF_LIGHT, _finite, _positive, dbm_to_watts, watts_to_dbm

DEFAULT_BANDWIDTH = 40e9
DEFAULT_NOISE_TEMPERATURE = 290.0

_FSPL_CONSTANT_DB = 20.0 * math.log10(4.0 * math.pi / SPEED_OF_LIGHT)


@dataclass(frozen=True)
class LinkBudget:
    tx_power: float  # dBm
    tx_gain: float  # dBi
    rx_gain: float  # dBi
    distance: float  # m
    frequency: float  # Hz
    noise_figure: float = 0.0  # dB
    noise_temperature: float = DEFAULT_NOISE_TEMPERATURE  # K

    def __post_init__(self):
        for name in ("tx_power", "tx_gain", "rx_gain"):
            _finite(getattr(self, name), name)
        _positive(self.distance, "distance")
        _positive(self.frequency, "frequency")
        _positive(self.noise_temperature, "noise_temperature")
        if not _finite(self.noise_figure, "noise_figure") >= 0:
            raise InvalidArgumentError(f"noise_figure must be >= 0, got {self.noise_figure!r}")


# 0 dBm, 20 dBi each side, 1 m (printed as 100 cm), 300 GHz
TABLE1_BUDGET = LinkBudget(tx_power=0.0, tx_gain=20.0, rx_gain=20.0, distance=1.0, frequency=300e9)


@dataclass(frozen=True)
class LinkResult:
    path_loss: float  # dB
    received_power: float  # dBm
    noise_power: float  # dBm
    snr: float  # dB


def fspl_db(d, f):
    """Free-space path loss in dB between isotropic antennas."""
    d = _positive(d, "distance")
    f = _positive(f, "frequency")
    return 20.0 * math.log10(d) + 20.0 * math.log10(f) + _FSPL_CONSTANT_DB


def received_power_watts(budget):
    """Friis equation evaluated in linear watts."""
    spread = SPEED_OF_LIGHT / (4.0 * math.pi * budget.distance * budget.frequency)
    return (
        dbm_to_watts(budget.tx_power)
        * 10.0 ** (budget.tx_gain / 10.0)
        * 10.0 ** (budget.rx_gain / 10.0)
        * spread**2
    )


def friis_received_power(budget, bandwidth=DEFAULT_BANDWIDTH):
    """Received power, noise floor over ``bandwidth`` and the resulting SNR."""
    prx = watts_to_dbm(received_power_watts(budget))
    noise = noise_power(bandwidth, budget.noise_temperature, budget.noise_figure)
    return LinkResult(
        path_loss=fspl_db(budget.distance, budget.frequency),
        received_power=prx,
        noise_power=noise,
        snr=snr_from_link(prx, noise),
    )


def noise_power(bandwidth, noise_temperature=DEFAULT_NOISE_TEMPERATURE, noise_figure=0.0):
    """Thermal noise k*T*B in dBm plus the receiver noise figure."""
    bandwidth = _positive(bandwidth, "bandwidth")
    noise_temperature = _positive(noise_temperature, "noise_temperature")
    noise_figure = _finite(noise_figure, "noise_figure")
    if noise_figure < 0:
        raise InvalidArgumentError(f"noise_figure must be >= 0, got {noise_figure!r}")
    return 10.0 * math.log10(BOLTZMANN * noise_temperature * bandwidth / 1e-3) + noise_figure


def snr_from_link(received_power, noise):
    return _finite(received_power, "received_power") - _finite(noise, "noise")
