import math

import numpy as np
import pytest

from conftest import random_guided_scenario
from hypersize.errors import UnsupportedCompositionError
from hypersize.model import Variant, peak_performance, wire_count
from hypersize.parallelism import DistanceModel, latency_breakdown, required_threads, threads_from_performance
from hypersize.sizing import packing_diameter

L_COPPER = math.sqrt(1e-7 * 20e9 * 128 * 5e4 * 16 / (3.6e9 * 0.6))


def test_latency_tvhc_diameter_mode(copper):
    lat = latency_breakdown(9.74, copper.machine, copper.technology)
    assert lat.propagation == pytest.approx(2 * 9.74 * 16 / 9e7, rel=1e-14)
    assert lat.propagation == pytest.approx(3.46e-6, rel=1e-3)
    assert lat.network_processing == pytest.approx(16 * 10 / 20e9, rel=1e-14)
    assert lat.memory == 1e-9
    assert lat.total == pytest.approx(lat.propagation + lat.network_processing + lat.memory, rel=1e-15)
    assert lat.required_threads == pytest.approx(lat.total * 20e9, rel=1e-15)
    assert lat.thread_count == math.ceil(lat.required_threads)


def test_latency_tvhc_mean_chord_mode(copper):
    lat = latency_breakdown(9.74, copper.machine, copper.technology, DistanceModel.MEAN_CHORD)
    assert lat.propagation == pytest.approx(2 * (2 * 9.74 / math.pi) * 16 / 9e7, rel=1e-14)
    assert lat.propagation == pytest.approx(2.20e-6, rel=5e-3)


def test_latency_degenerate(copper):
    cfg = copper.machine.with_(hop_processing_cycles=0, memory_response_time=0)
    lat = latency_breakdown(0.0, cfg, copper.technology)
    assert lat.total == 0.0 and lat.required_threads == 0.0


def test_propagation_dominates_for_tvhc(copper):
    lat = latency_breakdown(copper.size().installation_diameter, copper.machine, copper.technology)
    assert lat.propagation > 100 * (lat.network_processing + lat.memory)


def test_latency_decreases_with_signal_speed(copper):
    totals = [
        latency_breakdown(9.74, copper.machine, copper.technology.with_(signal_speed=c)).total
        for c in (5e7, 9e7, 2e8, 3e8)
    ]
    assert all(b < a for a, b in zip(totals, totals[1:]))


def test_distance_modes_differ_by_half_pi():
    rng = np.random.default_rng(3)
    for _ in range(20):
        s = random_guided_scenario(rng)
        length = float(rng.uniform(0.1, 50))
        full = latency_breakdown(length, s.machine, s.technology, DistanceModel.DIAMETER).propagation
        chord = latency_breakdown(length, s.machine, s.technology, DistanceModel.MEAN_CHORD).propagation
        assert full == pytest.approx(math.pi / 2 * chord, rel=1e-14)


def test_required_threads_tvhc(copper):
    t = required_threads(9.74, copper.machine, copper.technology)
    assert t == pytest.approx(9.74 * 20e9 * 32 / 9e7, rel=1e-14)
    assert t == pytest.approx(69_240, rel=1e-3)
    doubled = copper.machine.with_(clock_frequency=40e9)
    assert required_threads(9.74, doubled, copper.technology) == pytest.approx(2 * t, rel=1e-14)


def test_required_threads_htsc(htsc):
    t = required_threads(5.84, htsc.machine, htsc.technology)
    assert t == pytest.approx(5.84 * 20e9 * 32 / 2e8, rel=1e-14)
    assert t == pytest.approx(18_690, rel=1e-3)


def test_threads_from_performance_tvhc(copper):
    s = copper
    t = threads_from_performance(1e15, s.machine, s.technology, s.traffic)
    oracle = 20e9 * math.sqrt(1e15) * (2 / 9e7) * math.sqrt(1e-7 * 16**3 * 128 / (3.6e9 * 0.6))
    assert t == pytest.approx(oracle, rel=1e-14)
    assert t == pytest.approx(L_COPPER * 20e9 * 32 / 9e7, rel=1e-12)
    assert t == pytest.approx(69_240, rel=1e-3)
    assert threads_from_performance(4e15, s.machine, s.technology, s.traffic) == pytest.approx(2 * t, rel=1e-14)


def test_threads_from_performance_linear_in_clock(copper):
    s = copper
    a = threads_from_performance(1e15, s.machine, s.technology, s.traffic)
    b = threads_from_performance(1e15, s.machine.with_(clock_frequency=40e9), s.technology, s.traffic)
    assert b == pytest.approx(2 * a, rel=1e-14)


def test_threads_from_performance_rejects_open_space(optical):
    with pytest.raises(UnsupportedCompositionError):
        threads_from_performance(1e15, optical.machine, optical.technology, optical.traffic)


@pytest.mark.parametrize("variant", list(Variant))
def test_composition_identity(variant):
    rng = np.random.default_rng(2024)
    for _ in range(100):
        s = random_guided_scenario(rng)
        theta = peak_performance(s.machine)
        direct = threads_from_performance(theta, s.machine, s.technology, s.traffic, variant)
        l_g = packing_diameter(wire_count(s.machine, s.technology, s.traffic, variant), s.technology, variant)
        composed = required_threads(l_g, s.machine, s.technology)
        assert abs(direct - composed) / composed < 1e-12
