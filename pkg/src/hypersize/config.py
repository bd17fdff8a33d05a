"""JSON configuration files and the bundled presets.

All values are plain SI numbers (``2.0e10``, never ``"20 GHz"``). Unknown
keys are rejected, and every error names the offending ``section.key``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import ConfigError
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
)
from .simulator import SimConfig
from .sizing import EnergyModel

PRESET_NAMES = ("tvhc-copper", "tvhc-optical", "tvhc-htsc")

_TOP_KEYS = {"meta", "variant", "machine", "traffic", "cooling", "energy", "technology", "simulation"}

_NUMBER = (int, float)

_SECTIONS: dict[str, dict[str, tuple]] = {
    "machine": {
        "node_count": _NUMBER,
        "clock_frequency": _NUMBER,
        "word_width": _NUMBER,
        "reference_word_width": _NUMBER,
        "hop_processing_cycles": _NUMBER,
        "memory_response_time": _NUMBER,
        "network_diameter_override": (int, type(None)),
    },
    "traffic": {
        "load_rate": _NUMBER,
        "store_rate": _NUMBER,
        "saturation_load": _NUMBER,
        "traffic_factor": (int, float, type(None)),
    },
    "cooling": {"surface_power_density": _NUMBER, "vertical_pitch": _NUMBER},
    "energy": {"energy_per_op": _NUMBER},
    "technology": {
        "name": (str,),
        "medium": (str,),
        "link_bandwidth": _NUMBER,
        "signal_speed": _NUMBER,
        "resistivity": _NUMBER,
        "electrical_cross_section": _NUMBER,
        "packing_cross_section": _NUMBER,
        "emitter_footprint": _NUMBER,
        "driver": (dict,),
    },
    "technology.driver": {
        "form": (str,),
        "signal_current": _NUMBER,
        "drive_voltage": _NUMBER,
        "per_driver_power": _NUMBER,
    },
    "simulation": {
        "thread_contexts": (int,),
        "round_trip_cycles": (int,),
        "latency_jitter": _NUMBER,
        "memory_op_probability": _NUMBER,
        "warmup_cycles": (int,),
        "measured_cycles": (int,),
        "seed": (int,),
    },
}

_REQUIRED = {
    "machine": ("node_count", "clock_frequency", "word_width"),
    "technology": ("name", "medium", "link_bandwidth", "signal_speed", "driver"),
    "technology.driver": ("form",),
    "simulation": ("thread_contexts", "round_trip_cycles"),
}


@dataclass(frozen=True)
class ConfigFile:
    scenario: Scenario
    simulation: SimConfig | None = None
    meta: dict = field(default_factory=dict, hash=False, compare=False)
    source: str = ""


def _section(raw: dict, name: str) -> dict:
    schema = _SECTIONS[name]
    if not isinstance(raw, dict):
        raise ConfigError(name, "must be a JSON object")
    for key, value in raw.items():
        if key not in schema:
            raise ConfigError(f"{name}.{key}", "unknown key")
        # bool is an int subclass; never a valid number here
        if isinstance(value, bool) or not isinstance(value, schema[key]):
            raise ConfigError(f"{name}.{key}", f"wrong type {type(value).__name__}")
    for key in _REQUIRED.get(name, ()):
        if key not in raw:
            raise ConfigError(f"{name}.{key}", "missing required key")
    return raw


def _build(name: str, factory, kwargs: dict):
    try:
        return factory(**kwargs)
    except ConfigError as exc:
        raise exc.prefixed(name) from None


def _enum(section: str, key: str, enum_cls, text: str):
    try:
        return enum_cls(text)
    except ValueError:
        choices = ", ".join(e.value for e in enum_cls)
        raise ConfigError(f"{section}.{key}", f"{text!r} is not one of: {choices}") from None


def parse_config(raw: Any, source: str = "") -> ConfigFile:
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "configuration must be a JSON object")
    for key in raw:
        if key not in _TOP_KEYS:
            raise ConfigError(key, "unknown key")
    for key in ("machine", "technology"):
        if key not in raw:
            raise ConfigError(key, "missing required section")

    variant = Variant.PAPER_SIMPLIFIED
    if "variant" in raw:
        if not isinstance(raw["variant"], str):
            raise ConfigError("variant", "must be a string")
        variant = Variant.parse(raw["variant"])

    machine = _build("machine", MachineConfig, _section(raw["machine"], "machine"))
    traffic = _build("traffic", TrafficModel, _section(raw.get("traffic", {}), "traffic"))
    cooling = _build("cooling", CoolingModel, _section(raw.get("cooling", {}), "cooling"))
    energy = _build("energy", EnergyModel, _section(raw.get("energy", {}), "energy"))

    tech_raw = dict(_section(raw["technology"], "technology"))
    driver_raw = dict(_section(tech_raw.pop("driver"), "technology.driver"))
    driver_raw["form"] = _enum("technology.driver", "form", DriverForm, driver_raw["form"])
    driver = _build("technology.driver", DriverModel, driver_raw)
    tech_raw["medium"] = _enum("technology", "medium", Medium, tech_raw["medium"])
    tech = _build("technology", InterconnectTech, {**tech_raw, "driver": driver})

    simulation = None
    if "simulation" in raw:
        simulation = _build("simulation", SimConfig, _section(raw["simulation"], "simulation"))

    meta = raw.get("meta", {})
    if not isinstance(meta, dict):
        raise ConfigError("meta", "must be a JSON object")

    scenario = Scenario(
        machine=machine, technology=tech, traffic=traffic, cooling=cooling, energy=energy, variant=variant
    )
    return ConfigFile(scenario=scenario, simulation=simulation, meta=meta, source=source)


def preset_path(name: str) -> Path:
    stem = Path(name).name.removesuffix(".json")
    if stem not in PRESET_NAMES:
        raise ConfigError("<preset>", f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    return Path(str(resources.files("hypersize") / "presets" / f"{stem}.json"))


def load_config(path: str | Path) -> ConfigFile:
    """Load a config file; a missing path falls back to a bundled preset of the same name."""
    p = Path(path)
    if not p.exists():
        try:
            p = preset_path(str(path))
        except ConfigError:
            raise ConfigError("<file>", f"cannot read {str(path)!r}: no such file or preset") from None
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"{p}: invalid JSON ({exc})") from None
    return parse_config(raw, source=str(path))


def load_preset(name: str) -> ConfigFile:
    return load_config(preset_path(name))
