"""Machine parameters and the two foundational formulas.

Everything here is SI: Hz, bits, metres, square metres, watts, amperes,
volts, seconds. A machine is ``Q`` processor/memory nodes on the surface of
a sphere, wired through a multistage network of diameter ``D ~ log2 Q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import ConfigError

SPEED_OF_LIGHT = 3.0e8
PAPER_MEAN_DISTANCE_COEFF = 2.0 / math.pi

PAPER_TRAFFIC_FACTOR = 1.0
EXACT_TRAFFIC_FACTOR = 1.1


class Variant(str, Enum):
    """Which prefactors to keep.

    ``paper_simplified`` drops the constants the worked TVHC numbers drop
    (traffic factor 1.0, packing ``L = sqrt(sigma N)``); ``exact`` keeps them.
    """

    PAPER_SIMPLIFIED = "paper_simplified"
    EXACT = "exact"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        try:
            return cls(text.replace("-", "_"))
        except ValueError:
            raise ConfigError("variant", f"unknown variant {text!r}") from None


class Medium(str, Enum):
    GUIDED_VOLUME = "guided_volume"
    OPEN_SPACE = "open_space"


class DriverForm(str, Enum):
    CURRENT_VOLTAGE = "current_voltage"
    FIXED_POWER = "fixed_power"


def _positive(name: str, value: float) -> None:
    if not (value > 0 and math.isfinite(value)):
        raise ConfigError(name, f"must be a finite value > 0, got {value!r}")


def _non_negative(name: str, value: float) -> None:
    if not (value >= 0 and math.isfinite(value)):
        raise ConfigError(name, f"must be a finite value >= 0, got {value!r}")


@dataclass(frozen=True)
class MachineConfig:
    node_count: float  # Q; may be non-integer inside sweeps
    clock_frequency: float  # f0 [Hz]
    word_width: float  # W [bits]
    reference_word_width: float = 128  # W0 [bits]
    hop_processing_cycles: float = 10  # C [cycles/hop]
    memory_response_time: float = 1e-9  # tau_m [s]
    network_diameter_override: int | None = None

    def __post_init__(self):
        if not (self.node_count >= 2 and math.isfinite(self.node_count)):
            raise ConfigError("node_count", f"must be >= 2, got {self.node_count!r}")
        _positive("clock_frequency", self.clock_frequency)
        if not self.word_width >= 1:
            raise ConfigError("word_width", f"must be >= 1, got {self.word_width!r}")
        if not self.reference_word_width >= 1:
            raise ConfigError(
                "reference_word_width", f"must be >= 1, got {self.reference_word_width!r}"
            )
        _non_negative("hop_processing_cycles", self.hop_processing_cycles)
        _non_negative("memory_response_time", self.memory_response_time)
        if self.network_diameter_override is not None and self.network_diameter_override < 1:
            raise ConfigError(
                "network_diameter_override",
                f"must be >= 1 hop, got {self.network_diameter_override!r}",
            )

    @property
    def diameter(self) -> int:
        """Effective network diameter in hops."""
        if self.network_diameter_override is not None:
            return self.network_diameter_override
        return network_diameter(self.node_count)

    def with_(self, **changes) -> "MachineConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class TrafficModel:
    load_rate: float = 1.32
    store_rate: float = 0.78
    saturation_load: float = 0.6  # alpha
    # None -> resolved from the formula variant (1.0 simplified, 1.1 exact)
    traffic_factor: float | None = None

    def __post_init__(self):
        _non_negative("load_rate", self.load_rate)
        _non_negative("store_rate", self.store_rate)
        if not (0 < self.saturation_load <= 1):
            raise ConfigError(
                "saturation_load", f"must lie in (0, 1], got {self.saturation_load!r}"
            )
        if self.traffic_factor is not None:
            _positive("traffic_factor", self.traffic_factor)

    def factor(self, variant: Variant = Variant.PAPER_SIMPLIFIED) -> float:
        if self.traffic_factor is not None:
            return self.traffic_factor
        if variant is Variant.EXACT:
            return EXACT_TRAFFIC_FACTOR
        return PAPER_TRAFFIC_FACTOR


@dataclass(frozen=True)
class CoolingModel:
    surface_power_density: float = 5e5  # p_s [W/m^2]
    vertical_pitch: float = 5e-3  # h [m]

    def __post_init__(self):
        _positive("surface_power_density", self.surface_power_density)
        _positive("vertical_pitch", self.vertical_pitch)

    @property
    def volumetric_power_density(self) -> float:
        """p_v = p_s / h [W/m^3]."""
        return self.surface_power_density / self.vertical_pitch


@dataclass(frozen=True)
class DriverModel:
    form: DriverForm = DriverForm.CURRENT_VOLTAGE
    signal_current: float | None = None  # I [A]
    drive_voltage: float | None = None  # U (also written V) [V]
    per_driver_power: float | None = None  # P1 [W], fixed_power form

    def __post_init__(self):
        if self.form is DriverForm.CURRENT_VOLTAGE:
            if self.signal_current is None:
                raise ConfigError("signal_current", "required for current_voltage drivers")
            if self.drive_voltage is None:
                raise ConfigError("drive_voltage", "required for current_voltage drivers")
            _positive("signal_current", self.signal_current)
            _positive("drive_voltage", self.drive_voltage)
        else:
            if self.per_driver_power is None:
                raise ConfigError("per_driver_power", "required for fixed_power drivers")
            _positive("per_driver_power", self.per_driver_power)

    @property
    def power(self) -> float:
        """Effective per-driver power P1 [W]."""
        if self.form is DriverForm.CURRENT_VOLTAGE:
            return self.signal_current * self.drive_voltage
        return self.per_driver_power


@dataclass(frozen=True)
class InterconnectTech:
    """One interconnect technology.

    Guided media (copper, HTSC) carry a resistivity and two cross-sections:
    the electrical one (conductor only) and the packing one (conductor plus
    insulation, cooling and support). Open-space optics only need the emitter
    footprint. A resistivity of 0 models a superconductor.
    """

    name: str
    medium: Medium
    link_bandwidth: float  # B_w [bit/s]
    signal_speed: float  # c_s [m/s]
    driver: DriverModel
    resistivity: float | None = None  # rho [ohm m]
    electrical_cross_section: float | None = None  # sigma_w [m^2]
    packing_cross_section: float | None = None  # sigma [m^2]
    emitter_footprint: float | None = None  # sigma_LE [m^2]

    def __post_init__(self):
        _positive("link_bandwidth", self.link_bandwidth)
        _positive("signal_speed", self.signal_speed)
        if self.signal_speed > SPEED_OF_LIGHT:
            raise ConfigError(
                "signal_speed", f"must not exceed {SPEED_OF_LIGHT:g} m/s, got {self.signal_speed!r}"
            )
        if self.medium is Medium.GUIDED_VOLUME:
            for name in ("resistivity", "electrical_cross_section", "packing_cross_section"):
                if getattr(self, name) is None:
                    raise ConfigError(name, "required for guided_volume media")
            _non_negative("resistivity", self.resistivity)
            _positive("electrical_cross_section", self.electrical_cross_section)
            _positive("packing_cross_section", self.packing_cross_section)
        else:
            if self.emitter_footprint is None:
                raise ConfigError("emitter_footprint", "required for open_space media")
            _positive("emitter_footprint", self.emitter_footprint)

    @property
    def guided(self) -> bool:
        return self.medium is Medium.GUIDED_VOLUME

    def with_(self, **changes) -> "InterconnectTech":
        return replace(self, **changes)


def network_diameter(node_count: float) -> int:
    """Hops across a delta/banyan network of ``node_count`` nodes: ceil(log2 Q)."""
    if not node_count >= 2:
        raise ConfigError("node_count", f"must be >= 2, got {node_count!r}")
    d = math.ceil(math.log2(node_count))
    # float log2 can land a hair off an integer near powers of two
    if d > 1 and 2 ** (d - 1) >= node_count:
        d -= 1
    elif 2**d < node_count:
        d += 1
    return d


def wire_count(
    cfg: MachineConfig,
    tech: InterconnectTech,
    traffic: TrafficModel,
    variant: Variant = Variant.PAPER_SIMPLIFIED,
) -> float:
    """Number of links N = k f0 W Q D / (B_w alpha); real-valued."""
    k = traffic.factor(variant)
    return (
        k * cfg.clock_frequency * cfg.word_width * cfg.node_count * cfg.diameter
        / (tech.link_bandwidth * traffic.saturation_load)
    )


def peak_performance(cfg: MachineConfig) -> float:
    """Aggregate peak rate in ops/s, counting a W-bit PE as W/W0 standard ones."""
    return cfg.node_count * cfg.clock_frequency * (cfg.word_width / cfg.reference_word_width)


def mean_component_distance(diameter: float, coefficient: float = PAPER_MEAN_DISTANCE_COEFF) -> float:
    return coefficient * diameter
