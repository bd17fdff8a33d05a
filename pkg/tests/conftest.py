from __future__ import annotations

import numpy as np
import pytest

from hypersize.config import load_preset
from hypersize.explorer import Scenario
from hypersize.model import (
    CoolingModel,
    DriverForm,
    DriverModel,
    InterconnectTech,
    MachineConfig,
    Medium,
    TrafficModel,
)
from hypersize.sizing import EnergyModel

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def copper() -> Scenario:
    return load_preset("tvhc-copper").scenario


@pytest.fixture(scope="session")
def optical() -> Scenario:
    return load_preset("tvhc-optical").scenario


@pytest.fixture(scope="session")
def htsc() -> Scenario:
    return load_preset("tvhc-htsc").scenario


def random_guided_scenario(rng: np.random.Generator) -> Scenario:
    """A valid copper-like scenario with every parameter drawn log-uniformly."""

    def lu(lo, hi):
        return float(10 ** rng.uniform(np.log10(lo), np.log10(hi)))

    machine = MachineConfig(
        node_count=lu(2, 1e7),
        clock_frequency=lu(1e8, 1e11),
        word_width=float(rng.choice([16, 32, 64, 128, 256])),
        reference_word_width=float(rng.choice([32, 64, 128])),
        hop_processing_cycles=lu(1, 50),
        memory_response_time=lu(1e-10, 1e-7),
    )
    tech = InterconnectTech(
        name="random",
        medium=Medium.GUIDED_VOLUME,
        link_bandwidth=lu(1e8, 1e11),
        signal_speed=lu(1e7, 3e8),
        resistivity=lu(1e-9, 1e-6),
        electrical_cross_section=lu(1e-10, 1e-6),
        packing_cross_section=lu(1e-9, 1e-5),
        driver=DriverModel(form=DriverForm.CURRENT_VOLTAGE, signal_current=lu(1e-4, 0.1), drive_voltage=lu(0.1, 5)),
    )
    return Scenario(
        machine=machine,
        technology=tech,
        traffic=TrafficModel(saturation_load=float(rng.uniform(0.05, 1.0))),
        cooling=CoolingModel(surface_power_density=lu(1e3, 1e7), vertical_pitch=lu(1e-4, 1e-1)),
        energy=EnergyModel(energy_per_op=lu(1e-13, 1e-8)),
    )


def record_acceptance(name: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((name, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
