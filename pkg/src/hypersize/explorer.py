"""Parameter sweeps, technology comparison and break-even solving."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, NoCrossingError, SweepError
from .model import (
    PAPER_MEAN_DISTANCE_COEFF,
    CoolingModel,
    DriverForm,
    DriverModel,
    InterconnectTech,
    MachineConfig,
    TrafficModel,
    Variant,
)
from .parallelism import DistanceModel, LatencyBreakdown, latency_breakdown, required_threads
from .sizing import REPORT_FIELDS, EnergyModel, SizingReport, size_installation


@dataclass(frozen=True)
class Scenario:
    """Everything needed to size one machine."""

    machine: MachineConfig
    technology: InterconnectTech
    traffic: TrafficModel = field(default_factory=TrafficModel)
    cooling: CoolingModel = field(default_factory=CoolingModel)
    energy: EnergyModel = field(default_factory=EnergyModel)
    variant: Variant = Variant.PAPER_SIMPLIFIED
    distance: DistanceModel = DistanceModel.DIAMETER
    mean_coeff: float = PAPER_MEAN_DISTANCE_COEFF

    def size(self) -> SizingReport:
        return size_installation(
            self.machine, self.technology, self.traffic, self.cooling, self.energy,
            self.variant, self.mean_coeff,
        )

    def evaluate(self) -> "Evaluation":
        report = self.size()
        return Evaluation(
            report=report,
            latency=latency_breakdown(report.installation_diameter, self.machine, self.technology, self.distance),
            threads=required_threads(report.installation_diameter, self.machine, self.technology),
        )

    def with_(self, **changes) -> "Scenario":
        return replace(self, **changes)


@dataclass(frozen=True)
class Evaluation:
    report: SizingReport
    latency: LatencyBreakdown
    threads: float  # propagation-only T at the installation diameter

    def row(self) -> dict:
        return {**self.report.as_dict(), "threads": self.threads}


ROW_FIELDS = REPORT_FIELDS + ("threads",)


# -- sweeps ------------------------------------------------------------------


class SweepParameter(str, Enum):
    THETA = "theta"
    CLOCK = "clock"
    NODE_COUNT = "node_count"

    @classmethod
    def parse(cls, text: str) -> "SweepParameter":
        aliases = {"performance": "theta", "f0": "clock", "q": "node_count", "nodes": "node_count"}
        key = text.lower().replace("-", "_")
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ConfigError("param", f"unknown sweep parameter {text!r}") from None


@dataclass(frozen=True)
class SweepSpec:
    parameter: SweepParameter
    lo: float
    hi: float
    points: int
    base: Scenario
    log: bool = False
    pin_diameter: bool = False
    outputs: tuple[str, ...] = ROW_FIELDS

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ConfigError("min", f"must be < max, got {self.lo!r} >= {self.hi!r}")
        if self.points < 2:
            raise ConfigError("points", f"must be >= 2, got {self.points!r}")
        if self.log and self.lo <= 0:
            raise ConfigError("min", "log spacing needs a positive lower bound")
        unknown = [f for f in self.outputs if f not in ROW_FIELDS]
        if unknown:
            raise ConfigError("outputs", f"unknown output fields {unknown}")

    def values(self) -> np.ndarray:
        if self.log:
            return np.logspace(math.log10(self.lo), math.log10(self.hi), self.points)
        return np.linspace(self.lo, self.hi, self.points)


def _machine_at(spec: SweepSpec, value: float) -> MachineConfig:
    base = spec.base.machine
    pinned = base.diameter if spec.pin_diameter else base.network_diameter_override
    if spec.parameter is SweepParameter.THETA:
        # Theta moves through Q at fixed f0, W, W0
        q = value * base.reference_word_width / (base.clock_frequency * base.word_width)
        return base.with_(node_count=q, network_diameter_override=pinned)
    if spec.parameter is SweepParameter.CLOCK:
        return base.with_(clock_frequency=value, network_diameter_override=pinned)
    return base.with_(node_count=value, network_diameter_override=pinned)


def run_sweep(spec: SweepSpec) -> list[dict]:
    rows = []
    for i, value in enumerate(spec.values()):
        value = float(value)
        try:
            row = spec.base.with_(machine=_machine_at(spec, value)).evaluate().row()
        except (ConfigError, ValueError, ZeroDivisionError) as exc:
            raise SweepError(i, value, exc) from exc
        rows.append({spec.parameter.value: value, **{k: row[k] for k in spec.outputs}})
    return rows


# -- technology comparison ------------------------------------------------------


RATIO_FIELDS = (
    "n_wires",
    "l_static_m",
    "l_dynamic_m",
    "l_driver_m",
    "l_power_m",
    "l_packing_m",
    "l_installation_m",
    "threads",
)

COMPARISON_FIELDS = ("technology", "status") + ROW_FIELDS + tuple(f"ratio_{f}" for f in RATIO_FIELDS)


def _ratio(value: float, baseline: float) -> float:
    if baseline == 0:
        return 1.0 if value == 0 else math.inf
    return value / baseline


def compare_technologies(base: Scenario, technologies: Sequence[InterconnectTech]) -> list[dict]:
    """One row per technology; ratios are against the first one.

    A technology that cannot be sized keeps its row with ``status`` set to
    the error and empty values; if the baseline fails, no ratios are given.
    """
    if len(technologies) < 2:
        raise ConfigError("technologies", "need at least two technologies to compare")
    rows = []
    for tech in technologies:
        try:
            row = {"technology": tech.name, "status": "ok", **base.with_(technology=tech).evaluate().row()}
        except (ConfigError, ValueError, ZeroDivisionError) as exc:
            row = {"technology": tech.name, "status": f"failed: {exc}", **{k: None for k in ROW_FIELDS}}
        rows.append(row)

    baseline = rows[0]
    for row in rows:
        for f in RATIO_FIELDS:
            ok = row["status"] == "ok" and baseline["status"] == "ok"
            row[f"ratio_{f}"] = _ratio(row[f], baseline[f]) if ok else None
    return rows


# -- break-even ---------------------------------------------------------------


class Metric(str, Enum):
    PACKING_CORE = "packing_core"
    INSTALLATION_DIAMETER = "installation_diameter"
    REQUIRED_THREADS = "required_threads"

    @classmethod
    def parse(cls, text: str) -> "Metric":
        aliases = {"packing": "packing_core", "installation": "installation_diameter", "threads": "required_threads"}
        key = text.lower().replace("-", "_")
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ConfigError("metric", f"unknown metric {text!r}") from None

    def of(self, scenario: Scenario) -> float:
        if self is Metric.PACKING_CORE:
            return scenario.size().packing_core
        if self is Metric.INSTALLATION_DIAMETER:
            return scenario.size().installation_diameter
        return scenario.evaluate().threads


def _set_fixed_power(tech: InterconnectTech, value: float) -> InterconnectTech:
    return tech.with_(driver=DriverModel(form=DriverForm.FIXED_POWER, per_driver_power=value))


FREE_PARAMETERS: dict[str, Callable[[InterconnectTech, float], InterconnectTech]] = {
    "sigma": lambda t, v: t.with_(packing_cross_section=v),
    "sigma_le": lambda t, v: t.with_(emitter_footprint=v),
    "link_bandwidth": lambda t, v: t.with_(link_bandwidth=v),
    "signal_speed": lambda t, v: t.with_(signal_speed=v),
    "per_driver_power": _set_fixed_power,
}


@dataclass(frozen=True)
class BreakEvenQuery:
    baseline: Scenario
    candidate: Scenario
    free_parameter: str
    metric: Metric
    lo: float
    hi: float
    rtol: float = 1e-6

    def __post_init__(self):
        if self.free_parameter not in FREE_PARAMETERS:
            raise ConfigError(
                "free", f"unknown free parameter {self.free_parameter!r}; choose from {sorted(FREE_PARAMETERS)}"
            )
        if not 0 < self.lo < self.hi:
            raise ConfigError("lo", f"need 0 < lo < hi, got lo={self.lo!r}, hi={self.hi!r}")

    def candidate_at(self, value: float) -> Scenario:
        tech = FREE_PARAMETERS[self.free_parameter](self.candidate.technology, value)
        return self.candidate.with_(technology=tech)

    def candidate_metric(self, value: float) -> float:
        return self.metric.of(self.candidate_at(value))

    def target(self) -> float:
        return self.metric.of(self.baseline)


def break_even(query: BreakEvenQuery, max_iter: int = 200) -> float:
    """Free-parameter value at which the candidate matches the baseline metric.

    Plain bisection; the endpoints must bracket the baseline value.
    """
    target = query.target()
    lo, hi = query.lo, query.hi
    m_lo, m_hi = query.candidate_metric(lo), query.candidate_metric(hi)
    f_lo, f_hi = m_lo - target, m_hi - target
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo < 0) == (f_hi < 0):
        raise NoCrossingError(target, m_lo, m_hi)

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = query.candidate_metric(mid) - target
        if f_mid == 0 or (hi - lo) <= query.rtol * abs(mid):
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
