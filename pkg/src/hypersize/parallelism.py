"""Round-trip memory latency and the thread count needed to hide it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import UnsupportedCompositionError
from .model import (
    PAPER_MEAN_DISTANCE_COEFF,
    InterconnectTech,
    MachineConfig,
    Medium,
    TrafficModel,
    Variant,
)


class DistanceModel(str, Enum):
    """Path length used for propagation delay.

    ``diameter`` takes the full installation diameter L per hop leg;
    ``mean_chord`` takes the mean component distance 2L/pi.
    """

    DIAMETER = "diameter"
    MEAN_CHORD = "mean_chord"

    @classmethod
    def parse(cls, text: str) -> "DistanceModel":
        return cls(text.replace("-", "_"))

    def effective_length(self, diameter: float) -> float:
        if self is DistanceModel.MEAN_CHORD:
            return PAPER_MEAN_DISTANCE_COEFF * diameter
        return diameter


@dataclass(frozen=True)
class LatencyBreakdown:
    propagation: float  # tau_p [s]
    network_processing: float  # tau_n [s]
    memory: float  # tau_m [s]
    total: float
    required_threads: float
    distance_model: DistanceModel

    @property
    def thread_count(self) -> int:
        return math.ceil(self.required_threads)

    def as_dict(self) -> dict:
        return {
            "tau_p_s": self.propagation,
            "tau_n_s": self.network_processing,
            "tau_m_s": self.memory,
            "total_s": self.total,
            "threads": self.required_threads,
        }


def latency_breakdown(
    diameter: float,
    cfg: MachineConfig,
    tech: InterconnectTech,
    distance: DistanceModel = DistanceModel.DIAMETER,
) -> LatencyBreakdown:
    if diameter < 0:
        raise ValueError(f"installation diameter must be >= 0, got {diameter!r}")
    d = cfg.diameter
    tau_p = 2 * distance.effective_length(diameter) * d / tech.signal_speed
    tau_n = d * cfg.hop_processing_cycles / cfg.clock_frequency
    tau_m = cfg.memory_response_time
    total = tau_p + tau_n + tau_m
    return LatencyBreakdown(
        propagation=tau_p,
        network_processing=tau_n,
        memory=tau_m,
        total=total,
        required_threads=total * cfg.clock_frequency,
        distance_model=distance,
    )


def required_threads(diameter: float, cfg: MachineConfig, tech: InterconnectTech) -> float:
    """Propagation-only thread count T = L f0 (2D / c_s)."""
    return diameter * cfg.clock_frequency * (2 * cfg.diameter / tech.signal_speed)


def threads_from_performance(
    theta: float,
    cfg: MachineConfig,
    tech: InterconnectTech,
    traffic: TrafficModel,
    variant: Variant = Variant.PAPER_SIMPLIFIED,
) -> float:
    """Thread count of a wiring-bound machine straight from its performance.

    T = f0 sqrt(Theta) (2/c_s) sqrt(sigma D^3 W0 / (B_w alpha)), scaled by the
    traffic factor and, for the exact variant, the sqrt(12)/pi packing
    constant, so that it always equals ``required_threads`` evaluated at
    the packing diameter.
    """
    if tech.medium is Medium.OPEN_SPACE:
        raise UnsupportedCompositionError(
            "open-space links are surface-bound, not volume-bound; "
            "use required_threads with the open-space packing diameter"
        )
    d = cfg.diameter
    t = (
        cfg.clock_frequency
        * math.sqrt(theta)
        * (2 / tech.signal_speed)
        * math.sqrt(
            traffic.factor(variant) * tech.packing_cross_section * d**3 * cfg.reference_word_width
            / (tech.link_bandwidth * traffic.saturation_load)
        )
    )
    if variant is Variant.EXACT:
        t *= math.sqrt(12) / math.pi
    return t
