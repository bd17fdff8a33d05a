from __future__ import annotations


class ConfigError(ValueError):
    """Invalid configuration value. ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")

    def prefixed(self, section: str) -> "ConfigError":
        return ConfigError(f"{section}.{self.field}", self.message)


class UnsupportedCompositionError(ValueError):
    pass


class NoCrossingError(ValueError):
    def __init__(self, target: float, lo_value: float, hi_value: float):
        self.target = target
        self.lo_value = lo_value
        self.hi_value = hi_value
        super().__init__(
            f"no crossing of target {target:.6g} in interval: "
            f"metric(lo)={lo_value:.6g}, metric(hi)={hi_value:.6g}"
        )


class SweepError(RuntimeError):
    def __init__(self, index: int, value: float, cause: Exception):
        self.index = index
        self.value = value
        self.cause = cause
        super().__init__(f"sweep point {index} (value={value:.6g}) failed: {cause}")
