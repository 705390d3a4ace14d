"""
Settings Loader - YAML configuration for witnesskit

Merges built-in defaults, an optional YAML file and command-line overrides
(flag > file > default) into one Settings object.

Configuration file: ~/.witnesskit/config.yaml (or --config PATH)

Example:
```yaml
tolerances:
  report: 1.0e-9
  certification: 1.0e-4
  max_truncation: 40

optimizer:
  restarts: 64
  seed: 7
  workers: 4

search:
  box_bound: 100
  max_rounds: 150
```
"""

import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from core.errors import ConfigError
from core.tolerances import Tolerances
from hyperplane.search import SearchConfig
from optimizer.config import OptimizerConfig

logger = logging.getLogger(__name__)

# Default config location
DEFAULT_CONFIG_PATH = Path.home() / ".witnesskit" / "config.yaml"

# Sections of the file and the dataclass each one fills
SECTIONS = {
    "tolerances": Tolerances,
    "optimizer": OptimizerConfig,
    "search": SearchConfig,
}


@dataclass(frozen=True)
class Settings:
    """Everything a command needs to know about numerics."""
    tolerances: Tolerances = field(default_factory=Tolerances)
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    source: Optional[str] = None

    def search_config(self) -> SearchConfig:
        """Search settings sharing the top-level optimizer and tolerances."""
        return replace(self.search, optimizer=self.optimizer, tolerances=self.tolerances,
                       seed=self.optimizer.seed)

    def describe(self) -> Dict[str, Any]:
        """Flat summary for report metadata."""
        return {
            "tolerance": self.tolerances.report,
            "restarts": self.optimizer.restarts,
            "seed": self.optimizer.seed,
            "config_file": self.source,
        }


def load_yaml_config(config_path: Optional[Path] = None) -> Tuple[bool, Any]:
    """
    Load the YAML settings file.

    Args:
        config_path: Path to config file (defaults to ~/.witnesskit/config.yaml)

    Returns:
        Tuple of (success: bool, config_dict or error_message)
    """
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    if not path.exists():
        return False, f"Config file not found: {path}"
    try:
        with open(path, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f)
    except (yaml.YAMLError, OSError) as e:
        return False, f"Could not read {path}: {e}"
    if config is None:
        config = {}
    if not isinstance(config, dict):
        return False, f"{path}: top level must be a mapping"
    return True, config


def _coerce(current: Any, value: Any) -> Any:
    """Convert a file or flag value to the type of the default it replaces."""
    if current is None:
        return value
    if isinstance(current, bool):
        if not isinstance(value, bool):
            raise TypeError(f"expected true or false, got {value!r}")
        return value
    if isinstance(current, int):
        if isinstance(value, bool):
            raise TypeError("expected an integer")
        if isinstance(value, float):
            if not value.is_integer():
                raise ValueError(f"expected an integer, got {value!r}")
            return int(value)
        return int(value)
    return type(current)(value)


def _build_section(name: str, values: Any, base):
    if not isinstance(values, dict):
        raise ConfigError(f"section '{name}' must be a mapping", key=name)
    known = {f.name: f for f in fields(base)}
    updates = {}
    for key, value in values.items():
        if key not in known or key in ("optimizer", "tolerances"):
            raise ConfigError(f"unknown setting '{name}.{key}'", key=f"{name}.{key}")
        try:
            updates[key] = _coerce(getattr(base, key), value)
        except (TypeError, ValueError):
            raise ConfigError(f"bad value for '{name}.{key}': {value!r}", key=f"{name}.{key}")
    return replace(base, **updates)


def load_settings(config_path: Optional[Path] = None,
                  overrides: Optional[Dict[str, Any]] = None) -> Settings:
    """
    Build Settings from defaults, the YAML file and flag overrides.

    Args:
        config_path: explicit file; a missing explicit file is an error,
            a missing default file is not
        overrides: dotted keys such as {"optimizer.seed": 3, "tolerances.report": 1e-6};
            None values are ignored

    Returns:
        Validated Settings
    """
    settings = Settings()
    success, loaded = load_yaml_config(config_path)
    if success:
        for name, values in loaded.items():
            if name not in SECTIONS:
                raise ConfigError(f"unknown section '{name}'", key=name)
            settings = replace(settings, **{name: _build_section(name, values,
                                                                 getattr(settings, name))})
        settings = replace(settings, source=str(config_path or DEFAULT_CONFIG_PATH))
        logger.info(f"loaded settings from {settings.source}")
    elif config_path is not None or DEFAULT_CONFIG_PATH.exists():
        raise ConfigError(loaded, key="config")

    grouped: Dict[str, Dict[str, Any]] = {}
    for dotted, value in (overrides or {}).items():
        if value is None:
            continue
        section, _, key = dotted.partition(".")
        if section not in SECTIONS or not key:
            raise ConfigError(f"unknown override '{dotted}'", key=dotted)
        grouped.setdefault(section, {})[key] = value
    for section, values in grouped.items():
        settings = replace(settings, **{section: _build_section(section, values,
                                                                getattr(settings, section))})
    return settings
