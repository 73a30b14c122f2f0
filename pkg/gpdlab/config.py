"""Configuration management for gpdlab.

Manages ~/.gpdlab/config.toml (search budget, default seed, suite sizes).
Only the search budget reads an environment variable, GPDLAB_BUDGET, which
overrides the config file.
"""

import os
from pathlib import Path

from gpdlab.exceptions import ConfigError
from gpdlab.models import SuiteConfig

_CONFIG_DIR = Path.home() / ".gpdlab"
_CONFIG_FILE = _CONFIG_DIR / "config.toml"

# Valid config keys and their env var equivalents
_KEY_MAP: dict[str, str | None] = {
    "search_budget": "GPDLAB_BUDGET",
    "default_seed": None,
    "bang_bound": None,
    "instance_count": None,
}

_DEFAULTS = {
    "search_budget": 1_000_000,
    "default_seed": 42,
    "bang_bound": 3,
    "instance_count": 5,
}


def _ensure_config_dir() -> None:
    _CONFIG_DIR.mkdir(parents=True, exist_ok=True)


def _parse_toml(text: str) -> dict[str, str]:
    """Minimal TOML parser for flat key-value pairs.

    Only supports `key = "value"` and `key = 123` lines.
    """
    result: dict[str, str] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line.startswith("["):
            continue
        if "=" not in line:
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if (value.startswith('"') and value.endswith('"')) or (
            value.startswith("'") and value.endswith("'")
        ):
            value = value[1:-1]
        result[key] = value
    return result


def _write_toml(data: dict[str, str]) -> None:
    _ensure_config_dir()
    lines = ["# gpdlab configuration", ""]
    for key, value in sorted(data.items()):
        lines.append(f'{key} = "{value}"')
    lines.append("")
    _CONFIG_FILE.write_text("\n".join(lines))
    try:
        _CONFIG_FILE.chmod(0o600)
    except OSError:
        pass  # no POSIX permissions on Windows


def load_config() -> dict[str, str]:
    """Load configuration from file.

    Returns:
        Dictionary of config key-value pairs.
    """
    if not _CONFIG_FILE.exists():
        return {}
    try:
        return _parse_toml(_CONFIG_FILE.read_text())
    except Exception as e:
        raise ConfigError(f"Failed to read config: {e}")


def get_config_value(key: str) -> str | None:
    """Get a config value with fallback chain.

    Resolution order:
    1. Environment variable, where one is mapped
    2. Config file (~/.gpdlab/config.toml)

    Returns:
        The config value, or None if not found.
    """
    env_var = _KEY_MAP.get(key)
    if env_var:
        value = os.environ.get(env_var)
        if value:
            return value

    return load_config().get(key)


def _positive_int(key: str, raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
    if value <= 0 and key != "default_seed":
        raise ConfigError(f"{key} must be positive, got {value}")
    if value < 0:
        raise ConfigError(f"{key} must be non-negative, got {value}")
    return value


def get_int_setting(key: str, explicit: int | None = None) -> int:
    """Resolve an integer setting: explicit argument, then env/file, then default."""
    if explicit is not None:
        return _positive_int(key, str(explicit))
    raw = get_config_value(key)
    if raw is None:
        return _DEFAULTS[key]
    return _positive_int(key, raw)


def get_search_budget(explicit: int | None = None) -> int:
    """Candidate-step budget for equivalence and canonical-form searches."""
    return get_int_setting("search_budget", explicit)


def set_config_value(key: str, value: str) -> None:
    """Set a config value in the config file."""
    if key not in _KEY_MAP:
        raise ConfigError(f"Unknown config key: {key}. Valid keys: {', '.join(_KEY_MAP)}")
    _positive_int(key, value)

    config = load_config()
    config[key] = value
    _write_toml(config)


def list_config() -> dict[str, str | None]:
    """List all config values with their sources."""
    result: dict[str, str | None] = {}
    config = load_config()

    for key, env_var in _KEY_MAP.items():
        if env_var and os.environ.get(env_var):
            result[key] = f"{os.environ[env_var]} (env: {env_var})"
        elif key in config:
            result[key] = f"{config[key]} (config file)"
        else:
            result[key] = f"{_DEFAULTS[key]} (default)"

    return result


def load_suite_config(**overrides: int | None) -> SuiteConfig:
    """Build a SuiteConfig from settings, letting non-None overrides win."""
    values: dict[str, int] = {
        "seed": get_int_setting("default_seed", overrides.pop("seed", None)),
        "bang_bound": get_int_setting("bang_bound", overrides.pop("bang_bound", None)),
        "instance_count": get_int_setting("instance_count", overrides.pop("instance_count", None)),
        "search_budget": get_search_budget(overrides.pop("search_budget", None)),
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    return SuiteConfig(**values)


__all__ = [
    "get_config_value",
    "get_int_setting",
    "get_search_budget",
    "list_config",
    "load_config",
    "load_suite_config",
    "set_config_value",
]
