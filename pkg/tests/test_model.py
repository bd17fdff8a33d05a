import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypersize.errors import ConfigError
from hypersize.model import (
    DriverForm,
    DriverModel,
    InterconnectTech,
    MachineConfig,
    Medium,
    TrafficModel,
    Variant,
    mean_component_distance,
    network_diameter,
    peak_performance,
    wire_count,
)


@pytest.mark.parametrize("q, d", [(50_000, 16), (2, 1), (1024, 10), (1025, 11), (3, 2)])
def test_network_diameter(q, d):
    assert network_diameter(q) == d


@pytest.mark.parametrize("k", range(1, 31))
def test_network_diameter_powers_of_two(k):
    assert network_diameter(2**k) == k


def test_network_diameter_rejects_tiny_machines():
    with pytest.raises(ConfigError):
        network_diameter(1)
    with pytest.raises(ConfigError, match="node_count"):
        MachineConfig(node_count=1, clock_frequency=1e9, word_width=64)


def test_diameter_override_bypasses_log2():
    cfg = MachineConfig(node_count=50_000, clock_frequency=2e10, word_width=128, network_diameter_override=3)
    assert cfg.diameter == 3


def test_wire_count_tvhc(copper):
    # f0 W Q D / (B_w alpha), direct arithmetic
    expected = 20e9 * 128 * 5e4 * 16 / (3.6e9 * 0.6)
    n = wire_count(copper.machine, copper.technology, copper.traffic)
    assert n == pytest.approx(expected, rel=1e-15)
    assert n == pytest.approx(9.481e8, rel=1e-4)
    exact = wire_count(copper.machine, copper.technology, copper.traffic, Variant.EXACT)
    assert exact == pytest.approx(1.1 * expected, rel=1e-15)
    assert exact == pytest.approx(1.043e9, rel=1e-3)


def test_wire_count_unity():
    cfg = MachineConfig(node_count=2, clock_frequency=3.0, word_width=1, network_diameter_override=1)
    tech = InterconnectTech(
        name="u", medium=Medium.OPEN_SPACE, link_bandwidth=10.0, signal_speed=1.0, emitter_footprint=1.0,
        driver=DriverModel(form=DriverForm.FIXED_POWER, per_driver_power=1.0),
    )
    # f0 W Q D = 6 = B_w alpha
    assert wire_count(cfg, tech, TrafficModel(saturation_load=0.6)) == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("field", ["clock_frequency", "word_width", "node_count"])
def test_wire_count_linear_in_machine_inputs(copper, field):
    cfg = copper.machine.with_(network_diameter_override=16)
    base = wire_count(cfg, copper.technology, copper.traffic)
    doubled = cfg.with_(**{field: 2 * getattr(cfg, field)})
    assert wire_count(doubled, copper.technology, copper.traffic) == pytest.approx(2 * base, rel=1e-14)


def test_wire_count_scaling_in_d_bandwidth_alpha(copper):
    cfg = copper.machine.with_(network_diameter_override=16)
    tech, traffic = copper.technology, copper.traffic
    base = wire_count(cfg, tech, traffic)
    assert wire_count(cfg.with_(network_diameter_override=32), tech, traffic) == pytest.approx(2 * base, rel=1e-14)
    assert wire_count(cfg, tech.with_(link_bandwidth=2 * tech.link_bandwidth), traffic) == pytest.approx(
        0.5 * base, rel=1e-14
    )
    assert wire_count(cfg, tech, TrafficModel(saturation_load=0.3)) == pytest.approx(2 * base, rel=1e-14)


def test_peak_performance():
    tvhc = MachineConfig(node_count=5e4, clock_frequency=20e9, word_width=128, reference_word_width=128)
    assert peak_performance(tvhc) == 1e15
    unit = MachineConfig(node_count=2, clock_frequency=1, word_width=1, reference_word_width=1)
    assert peak_performance(unit) == 2.0


def test_peak_performance_rejects_zero_reference_width():
    with pytest.raises(ConfigError, match="reference_word_width"):
        MachineConfig(node_count=4, clock_frequency=1e9, word_width=64, reference_word_width=0)


@given(k=st.floats(min_value=1.0, max_value=64.0), w=st.integers(1, 512), w0=st.integers(1, 512))
def test_peak_performance_invariant_under_width_scaling(k, w, w0):
    a = MachineConfig(node_count=1000, clock_frequency=1e9, word_width=w, reference_word_width=w0)
    b = a.with_(word_width=k * w, reference_word_width=k * w0)
    assert peak_performance(b) == pytest.approx(peak_performance(a), rel=1e-12)


def test_mean_component_distance():
    assert mean_component_distance(1.0) == pytest.approx(0.6366, abs=1e-4)
    assert mean_component_distance(0.0) == 0.0


def test_mean_chord_monte_carlo_differs_from_paper_coefficient():
    rng = np.random.default_rng(12345)
    n = 1_000_000

    def on_sphere():
        v = rng.normal(size=(n, 3))
        return 0.5 * v / np.linalg.norm(v, axis=1, keepdims=True)

    chords = np.linalg.norm(on_sphere() - on_sphere(), axis=1)
    assert chords.mean() == pytest.approx(2 / 3, abs=2e-3)
    # the closed-form coefficient 2/pi sits about 4.5% below the true mean chord
    assert abs(mean_component_distance(1.0) - chords.mean()) > 0.02


def test_invalid_traffic_and_tech():
    with pytest.raises(ConfigError, match="saturation_load"):
        TrafficModel(saturation_load=0)
    with pytest.raises(ConfigError, match="signal_speed"):
        InterconnectTech(
            name="x", medium=Medium.OPEN_SPACE, link_bandwidth=1e9, signal_speed=4e8, emitter_footprint=1e-8,
            driver=DriverModel(form=DriverForm.FIXED_POWER, per_driver_power=1.0),
        )
    with pytest.raises(ConfigError, match="packing_cross_section"):
        InterconnectTech(
            name="x", medium=Medium.GUIDED_VOLUME, link_bandwidth=1e9, signal_speed=1e8,
            resistivity=1e-8, electrical_cross_section=1e-8,
            driver=DriverModel(signal_current=0.02, drive_voltage=1.0),
        )


def test_driver_power():
    assert DriverModel(signal_current=0.02, drive_voltage=1.0).power == pytest.approx(0.02)
    assert DriverModel(form=DriverForm.FIXED_POWER, per_driver_power=0.1).power == 0.1
    with pytest.raises(ConfigError):
        DriverModel(form=DriverForm.FIXED_POWER, per_driver_power=0.0)


def test_cooling_volumetric_density(copper):
    assert copper.cooling.volumetric_power_density == pytest.approx(1e8, rel=1e-15)
    assert math.isclose(copper.cooling.volumetric_power_density, 5e5 / 5e-3)
