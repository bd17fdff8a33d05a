"""Published TVHC figures that the formulas do not reproduce.

Each entry pairs the published number with the value the model computes for
the run at hand, so a reader can see both. Entries are attached to a run
only when it evaluates the quantity in question.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .explorer import BreakEvenQuery, Evaluation, Metric, Scenario, break_even
from .model import DriverForm, Medium
from .parallelism import DistanceModel, latency_breakdown

LEDGER_FIELDS = ("id", "quantity", "unit", "published", "computed", "note")


@dataclass(frozen=True)
class Discrepancy:
    id: str
    quantity: str
    unit: str
    published: float
    computed: float
    note: str

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "quantity": self.quantity,
            "unit": self.unit,
            "published": self.published,
            "computed": self.computed,
            "note": self.note,
        }


def _superconducting(scenario: Scenario) -> bool:
    tech = scenario.technology
    return tech.medium is Medium.GUIDED_VOLUME and tech.resistivity == 0


@lru_cache(maxsize=None)
def _htsc_break_even(baseline: Scenario, candidate: Scenario) -> tuple[float, float]:
    values = []
    for metric in (Metric.PACKING_CORE, Metric.REQUIRED_THREADS):
        query = BreakEvenQuery(baseline, candidate, "sigma", metric, 1e-9, 1e-3)
        values.append(break_even(query))
    return values[0], values[1]


def _copper_baseline(scenario: Scenario) -> Scenario:
    from .config import load_preset

    return scenario.with_(technology=load_preset("tvhc-copper").scenario.technology)


def discrepancies_for(scenario: Scenario, evaluation: Evaluation) -> list[Discrepancy]:
    tech = scenario.technology
    report = evaluation.report
    entries = []

    resistive = (
        tech.medium is Medium.GUIDED_VOLUME
        and tech.resistivity > 0
        and tech.driver.form is DriverForm.CURRENT_VOLTAGE
    )
    if resistive:
        entries.append(Discrepancy(
            "static_core", "static thermal core diameter", "m", 0.008, report.static_core,
            "published value does not follow from the closed form with the listed constants; "
            "never binding, so the sizing conclusion is unchanged",
        ))

    entries.append(Discrepancy(
        "tau_n", "network processing delay", "s", 5e-9, evaluation.latency.network_processing,
        "computed as D*C/f0 with the configured D and C",
    ))

    chord = latency_breakdown(report.installation_diameter, scenario.machine, tech, DistanceModel.MEAN_CHORD)
    full = latency_breakdown(report.installation_diameter, scenario.machine, tech, DistanceModel.DIAMETER)
    entries.append(Discrepancy(
        "tau_p", "signal propagation delay", "s", 2.25e-6, evaluation.latency.propagation,
        f"{evaluation.latency.distance_model.value} distance model; "
        f"diameter gives {full.propagation:.5e} s, mean_chord gives {chord.propagation:.5e} s; "
        "the published thread count needs the diameter model",
    ))

    if tech.medium is Medium.OPEN_SPACE and tech.driver.form is DriverForm.FIXED_POWER:
        entries.append(Discrepancy(
            "optical_emitter_power", "per-emitter power", "W", 1e-4, tech.driver.power,
            "published emitter power is 0.1 mW, but the published 3.3 m driver core needs 0.1 W",
        ))

    if _superconducting(scenario):
        entries.append(Discrepancy(
            "htsc_driver_core", "HTSC driver core diameter", "m", 0.5, report.driver_core,
            "10 uW drivers give this diameter; the published 0.5 m is not reproducible",
        ))
        baseline = _copper_baseline(scenario)
        base_eval = baseline.evaluate()
        entries.append(Discrepancy(
            "htsc_thread_reduction", "thread count reduction vs copper", "fraction", 0.6,
            1 - evaluation.threads / base_eval.threads,
            "bandwidth and signal speed together cut T by this fraction, not the published 60%",
        ))
        packing, threads = _htsc_break_even(baseline, scenario)
        entries.append(Discrepancy(
            "htsc_break_even_packing", "HTSC break-even packing cross-section (packing parity)", "m^2",
            6e-7, packing, "cross-section at which the HTSC packing core equals copper's",
        ))
        entries.append(Discrepancy(
            "htsc_break_even_threads", "HTSC break-even packing cross-section (thread parity)", "m^2",
            6e-7, threads, "cross-section at which the HTSC thread count equals copper's",
        ))
    return entries


def merge(*groups: list[Discrepancy]) -> list[Discrepancy]:
    """Concatenate ledgers, keeping the first entry per id."""
    seen = set()
    out = []
    for group in groups:
        for entry in group:
            if entry.id not in seen:
                seen.add(entry.id)
                out.append(entry)
    return out
