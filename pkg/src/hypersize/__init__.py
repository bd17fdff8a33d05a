"""Parametric sizing of petaops-scale machines.

Power, wiring volume and signal latency bound how small a machine of a
given performance can be, and that size fixes how many threads each
processor needs to stay busy.
"""

from .errors import ConfigError, NoCrossingError, SweepError, UnsupportedCompositionError
from .explorer import Scenario
from .model import (
    CoolingModel,
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
from .parallelism import DistanceModel, latency_breakdown, required_threads, threads_from_performance
from .sizing import Binding, EnergyModel, SizingReport, size_installation

__version__ = "0.1.0"
