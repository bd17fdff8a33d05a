"""Cycle-level model of one multithreaded PE hiding memory latency.

Each cycle the scheduler issues one operation from a ready thread, searching
round-robin from the thread after the last one that issued. A memory
operation blocks its thread for a sampled round-trip latency: a thread
issuing at cycle t with latency l is ready again at cycle t + 1 + l. With no
ready thread the cycle is a stall.

A PE with T contexts and fixed latency l therefore sustains
min(1, T / (1 + l)) operations per cycle.
"""

from __future__ import annotations

import bisect
import heapq
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import ConfigError

KNEE_FRACTION = 0.95


@dataclass(frozen=True)
class SimConfig:
    thread_contexts: int
    round_trip_cycles: int
    latency_jitter: float = 0.0
    memory_op_probability: float = 1.0
    warmup_cycles: int | None = None  # None -> 10 * round_trip_cycles
    measured_cycles: int | None = None  # None -> 100 * (1 + round_trip_cycles)
    seed: int = 0

    def __post_init__(self):
        if self.thread_contexts < 1:
            raise ConfigError("thread_contexts", f"must be >= 1, got {self.thread_contexts!r}")
        if self.round_trip_cycles < 1:
            raise ConfigError("round_trip_cycles", f"must be >= 1, got {self.round_trip_cycles!r}")
        if not (0 <= self.latency_jitter < 1):
            raise ConfigError("latency_jitter", f"must lie in [0, 1), got {self.latency_jitter!r}")
        if not (0 <= self.memory_op_probability <= 1):
            raise ConfigError(
                "memory_op_probability", f"must lie in [0, 1], got {self.memory_op_probability!r}"
            )
        if self.warmup_cycles is not None and self.warmup_cycles < 0:
            raise ConfigError("warmup_cycles", f"must be >= 0, got {self.warmup_cycles!r}")
        if self.measured_cycles is not None and self.measured_cycles < 1:
            raise ConfigError("measured_cycles", f"must be >= 1, got {self.measured_cycles!r}")
        if not (0 <= self.seed < 2**64):
            raise ConfigError("seed", f"must be a 64-bit unsigned integer, got {self.seed!r}")

    @property
    def warmup(self) -> int:
        return 10 * self.round_trip_cycles if self.warmup_cycles is None else self.warmup_cycles

    @property
    def measured(self) -> int:
        if self.measured_cycles is None:
            return 100 * (1 + self.round_trip_cycles)
        return self.measured_cycles

    def latency_bounds(self) -> tuple[int, int]:
        lo = math.ceil(self.round_trip_cycles * (1 - self.latency_jitter))
        hi = math.floor(self.round_trip_cycles * (1 + self.latency_jitter))
        return max(lo, 1), max(hi, 1)


@dataclass(frozen=True)
class SimResult:
    issued_ops: int
    utilization: float
    per_thread_issue: list[int] = field(hash=False)
    stall_cycles: int = 0


def run_simulation(sim: SimConfig) -> SimResult:
    rng = random.Random(sim.seed)
    n = sim.thread_contexts
    p = sim.memory_op_probability
    lat_lo, lat_hi = sim.latency_bounds()
    start = sim.warmup
    end = start + sim.measured

    ready = list(range(n))  # sorted thread indices
    blocked: list[tuple[int, int]] = []  # (ready_at_cycle, thread)
    issued = [0] * n
    pointer = 0  # next thread to consider
    now = 0

    while now < end:
        while blocked and blocked[0][0] <= now:
            _, t = heapq.heappop(blocked)
            bisect.insort(ready, t)
        if not ready:
            # stall until the earliest reply arrives
            now = min(blocked[0][0], end)
            continue

        i = bisect.bisect_left(ready, pointer)
        if i == len(ready):
            i = 0
        t = ready[i]
        pointer = t + 1 if t + 1 < n else 0
        if now >= start:
            issued[t] += 1

        if p > 0 and (p >= 1 or rng.random() < p):
            latency = lat_lo if lat_lo == lat_hi else rng.randint(lat_lo, lat_hi)
            del ready[i]
            heapq.heappush(blocked, (now + 1 + latency, t))
        now += 1

    total = sum(issued)
    measured = sim.measured
    return SimResult(
        issued_ops=total,
        utilization=total / measured,
        per_thread_issue=issued,
        stall_cycles=measured - total,
    )


def utilization_curve(
    base: SimConfig, thread_range: Sequence[int], workers: int = 1
) -> list[tuple[int, float]]:
    """Utilization for each thread count; point ``i`` runs with seed ``base.seed + i``."""
    threads = list(thread_range)
    if not threads:
        raise ConfigError("thread_range", "must not be empty")
    if any(b <= a for a, b in zip(threads, threads[1:])):
        raise ConfigError("thread_range", "must be strictly increasing")
    configs = [
        replace(base, thread_contexts=t, seed=(base.seed + i) % 2**64) for i, t in enumerate(threads)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_simulation, configs))
    else:
        results = [run_simulation(c) for c in configs]
    return [(t, r.utilization) for t, r in zip(threads, results)]


def find_knee(curve: Sequence[tuple[int, float]], fraction: float = KNEE_FRACTION) -> int:
    """Smallest thread count reaching ``fraction`` of the best utilization seen."""
    if not curve:
        raise ValueError("empty utilization curve")
    peak = max(u for _, u in curve)
    return min(t for t, u in curve if u >= fraction * peak)


def analytic_utilization(threads: int, round_trip_cycles: int) -> float:
    return min(1.0, threads / (1 + round_trip_cycles))
