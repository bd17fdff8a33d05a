"""Installation diameter from thermal and wiring-volume limits.

Four candidate sphere diameters are computed and the largest one sets the
size of the machine:

* static core:  resistive heat in the wiring must leave through the volume
* dynamic core: switching heat of PEs, memories and network switches must
  leave through the active surface
* driver core:  line-driver heat, also through the surface
* packing core: the wires (or, for open-space optics, the emitters) must fit

Every one of them grows as sqrt(Theta) at fixed network diameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ConfigError
from .model import (
    PAPER_MEAN_DISTANCE_COEFF,
    CoolingModel,
    DriverForm,
    DriverModel,
    InterconnectTech,
    MachineConfig,
    Medium,
    TrafficModel,
    Variant,
    peak_performance,
    wire_count,
)


class Binding(str, Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"
    DRIVER = "driver"
    PACKING = "packing"


@dataclass(frozen=True)
class EnergyModel:
    energy_per_op: float = 1e-10  # w [J/op]

    def __post_init__(self):
        if not (self.energy_per_op > 0 and math.isfinite(self.energy_per_op)):
            raise ConfigError("energy_per_op", f"must be > 0, got {self.energy_per_op!r}")

    @staticmethod
    def switch_factor(diameter: int) -> float:
        """2Q PEs and memories plus QD/2 switches, per unit of Theta."""
        return 2 + diameter / 2


@dataclass(frozen=True)
class SizingReport:
    wire_count: float
    performance: float
    static_core: float
    dynamic_core: float
    driver_core: float
    power_core: float
    packing_core: float
    installation_diameter: float
    binding: Binding
    variant: Variant
    network_diameter: int

    def as_dict(self) -> dict:
        return {
            "n_wires": self.wire_count,
            "theta_ops": self.performance,
            "l_static_m": self.static_core,
            "l_dynamic_m": self.dynamic_core,
            "l_driver_m": self.driver_core,
            "l_power_m": self.power_core,
            "l_packing_m": self.packing_core,
            "l_installation_m": self.installation_diameter,
            "binding": self.binding.value,
            "variant": self.variant.value,
        }


REPORT_FIELDS = (
    "n_wires",
    "theta_ops",
    "l_static_m",
    "l_dynamic_m",
    "l_driver_m",
    "l_power_m",
    "l_packing_m",
    "l_installation_m",
    "binding",
    "variant",
)


def _signal_current(tech: InterconnectTech) -> float:
    if tech.driver.form is not DriverForm.CURRENT_VOLTAGE:
        raise ConfigError(
            "driver.form",
            "resistive wiring needs a current_voltage driver to define the signal current",
        )
    return tech.driver.signal_current


def static_power(
    n_wires: float,
    diameter: float,
    tech: InterconnectTech,
    mean_coeff: float = PAPER_MEAN_DISTANCE_COEFF,
) -> float:
    """Ohmic loss of N wires of mean length ``mean_coeff * diameter``.

    Zero for open-space links and for superconducting (rho = 0) wiring.
    """
    if tech.medium is Medium.OPEN_SPACE or tech.resistivity == 0:
        return 0.0
    current = _signal_current(tech)
    return current**2 * tech.resistivity * n_wires * (mean_coeff * diameter) / tech.electrical_cross_section


def static_core_diameter(
    theta: float,
    cfg: MachineConfig,
    tech: InterconnectTech,
    traffic: TrafficModel,
    cooling: CoolingModel,
    variant: Variant = Variant.PAPER_SIMPLIFIED,
    mean_coeff: float = PAPER_MEAN_DISTANCE_COEFF,
) -> float:
    """Smallest sphere whose volume can shed the static wiring loss.

    ``paper_simplified`` is the closed form sqrt(Theta W0 rho I^2 D /
    (sigma_w p_v B_w alpha)) with every constant dropped; ``exact`` solves
    P_s(L) = p_v pi L^3 / 6 with the mean wire length kept.
    """
    if tech.medium is Medium.OPEN_SPACE or tech.resistivity == 0:
        return 0.0
    current = _signal_current(tech)
    p_v = cooling.volumetric_power_density
    d = cfg.diameter
    k = traffic.factor(variant)
    if variant is Variant.PAPER_SIMPLIFIED:
        return math.sqrt(
            k * theta * cfg.reference_word_width * tech.resistivity * current**2 * d
            / (tech.electrical_cross_section * p_v * tech.link_bandwidth * traffic.saturation_load)
        )
    n_wires = k * theta * cfg.reference_word_width * d / (tech.link_bandwidth * traffic.saturation_load)
    return math.sqrt(
        6 * mean_coeff * current**2 * tech.resistivity * n_wires
        / (math.pi * tech.electrical_cross_section * p_v)
    )


def dynamic_core_diameter(theta: float, diameter: int, energy: EnergyModel, cooling: CoolingModel) -> float:
    # the heat budget is the full sphere surface, pi L^2 p_s
    if theta <= 0:
        raise ConfigError("theta", f"must be > 0, got {theta!r}")
    heat = theta * energy.energy_per_op * energy.switch_factor(diameter)
    return math.sqrt(heat / (math.pi * cooling.surface_power_density))


def driver_core_diameter(n_wires: float, driver: DriverModel, cooling: CoolingModel) -> float:
    """Sphere whose surface sheds the heat of 2N line drivers."""
    p1 = driver.power
    if not p1 > 0:
        raise ConfigError("per_driver_power", f"must be > 0, got {p1!r}")
    return math.sqrt(2 * n_wires * p1 / (math.pi * cooling.surface_power_density))


def power_core_diameter(static: float, dynamic: float, driver: float) -> tuple[float, Binding]:
    return _argmax([(static, Binding.STATIC), (dynamic, Binding.DYNAMIC), (driver, Binding.DRIVER)])


def _argmax(candidates: list[tuple[float, Binding]]) -> tuple[float, Binding]:
    # strict > keeps the earliest entry on ties
    best, which = candidates[0]
    for value, name in candidates[1:]:
        if value > best:
            best, which = value, name
    return best, which


def packing_diameter(n_wires: float, tech: InterconnectTech, variant: Variant = Variant.PAPER_SIMPLIFIED) -> float:
    """Sphere large enough to hold the interconnect.

    Guided wires fill the volume: sigma N (2L/pi) <= pi L^3 / 6, i.e.
    L = sqrt(12 sigma N) / pi, which the simplified variant writes as
    sqrt(sigma N). Open-space emitters tile the inner surface instead,
    because light paths may cross: L = sqrt(4 N sigma_LE / pi).
    """
    if n_wires <= 0:
        raise ConfigError("n_wires", f"must be > 0, got {n_wires!r}")
    if tech.medium is Medium.OPEN_SPACE:
        return math.sqrt(4 * n_wires * tech.emitter_footprint / math.pi)
    if variant is Variant.EXACT:
        return math.sqrt(12 * tech.packing_cross_section * n_wires) / math.pi
    return math.sqrt(tech.packing_cross_section * n_wires)


def size_installation(
    cfg: MachineConfig,
    tech: InterconnectTech,
    traffic: TrafficModel,
    cooling: CoolingModel,
    energy: EnergyModel,
    variant: Variant = Variant.PAPER_SIMPLIFIED,
    mean_coeff: float = PAPER_MEAN_DISTANCE_COEFF,
) -> SizingReport:
    n = wire_count(cfg, tech, traffic, variant)
    theta = peak_performance(cfg)
    d = cfg.diameter

    l_st = static_core_diameter(theta, cfg, tech, traffic, cooling, variant, mean_coeff)
    l_dyn = dynamic_core_diameter(theta, d, energy, cooling)
    l_dr = driver_core_diameter(n, tech.driver, cooling)
    l_g = packing_diameter(n, tech, variant)

    l_pow, _ = power_core_diameter(l_st, l_dyn, l_dr)
    l_inst, binding = _argmax(
        [
            (l_st, Binding.STATIC),
            (l_dyn, Binding.DYNAMIC),
            (l_dr, Binding.DRIVER),
            (l_g, Binding.PACKING),
        ]
    )
    return SizingReport(
        wire_count=n,
        performance=theta,
        static_core=l_st,
        dynamic_core=l_dyn,
        driver_core=l_dr,
        power_core=l_pow,
        packing_core=l_g,
        installation_diameter=l_inst,
        binding=binding,
        variant=variant,
        network_diameter=d,
    )
