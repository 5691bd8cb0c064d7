"""Run configuration for the command-line front end.

A run is described by a RunConfig built from an optional key=value file
and the command-line flags, flags taking precedence. There is no
environment variable configuration.
"""

import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from .errors import ConfigError

logger = logging.getLogger(__name__)

COMMANDS = ("bound", "count", "fsup", "shc", "selftest")
FAMILIES = ("full", "gamma0", "gamma1", "principal")
CONSTANTS_MODES = ("paper", "computed")
OUTPUT_FORMATS = ("text", "json")
EXTENSIONS = ("coarse", "widths", "sharp")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
MAX_GRID_STEP = 0.05

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass
class RunConfig:
    """Configuration of one command-line run"""

    command: str = "bound"

    # Group
    family: str = "gamma0"
    level: int = 11

    # Bound pipeline
    constants_mode: str = "paper"
    extension: str = "coarse"
    use_genus: bool = False
    A: float = -3.00e4
    B: float = 1.58e4
    a: float = 1.44
    delta: float = 2.0

    # Counting
    b: float = 17.0
    grid_step: float = 0.01
    workers: int = 1
    oracle_samples: int = 0

    # Transform
    s: float = 0.0
    k: float = 2.0
    quad_tol: float = 1e-10
    series_tol: float = 1e-15

    # Output
    output_format: str = "text"
    output: Optional[str] = None
    log_level: str = "INFO"

    def __post_init__(self):
        self.log_level = str(self.log_level).upper()
        choices = {
            "command": COMMANDS,
            "family": FAMILIES,
            "constants_mode": CONSTANTS_MODES,
            "extension": EXTENSIONS,
            "output_format": OUTPUT_FORMATS,
            "log_level": LOG_LEVELS,
        }
        for name, allowed in choices.items():
            if getattr(self, name) not in allowed:
                raise ConfigError(f"{name} must be one of {', '.join(allowed)}, got {getattr(self, name)!r}")
        if self.level < 1:
            raise ConfigError(f"level must be >= 1, got {self.level}")
        if not 0.0 < self.grid_step <= MAX_GRID_STEP:
            raise ConfigError(f"grid_step must lie in (0, {MAX_GRID_STEP}], got {self.grid_step}")
        if not (self.quad_tol > 0.0 and self.series_tol > 0.0):
            raise ConfigError("tolerances must be positive")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.oracle_samples < 0:
            raise ConfigError(f"oracle_samples must be >= 0, got {self.oracle_samples}")

    @classmethod
    def from_file(cls, path: Union[str, Path], **overrides: Any) -> "RunConfig":
        """Load a key=value file; '#' starts a comment, blank lines are ignored."""
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config file {path}: {e}") from e

        values: Dict[str, Any] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key] = value
        logger.debug("Loaded %d keys from %s", len(values), path)
        return cls.from_mapping(values).merged(overrides)

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "RunConfig":
        types = _field_types()
        unknown = sorted(set(values) - set(types))
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        return cls(**{key: _coerce(key, value, types[key]) for key, value in values.items()})

    def merged(self, overrides: Mapping[str, Any]) -> "RunConfig":
        """Copy with every non-None override applied."""
        types = _field_types()
        unknown = sorted(set(overrides) - set(types))
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        changes = {k: _coerce(k, v, types[k]) for k, v in overrides.items() if v is not None}
        return replace(self, **changes)


def _field_types() -> Dict[str, str]:
    return {f.name: f.type if isinstance(f.type, str) else getattr(f.type, "__name__", str(f.type))
            for f in fields(RunConfig)}


def _coerce(key: str, value: Any, type_name: str) -> Any:
    if not isinstance(value, str):
        return value
    try:
        if type_name == "int":
            return int(value)
        if type_name == "float":
            return float(value)
        if type_name == "bool":
            lowered = value.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(value)
    except ValueError as e:
        raise ConfigError(f"invalid value for {key}: {value!r}") from e
    return value
