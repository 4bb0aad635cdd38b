"""
config.py

Run configuration for wsym.

Settings come from three layers, later ones winning:
    1. DEFAULT_CONFIG below
    2. wsym_config.json in the working directory, or the file named by --config
    3. the WSYM_SEED environment variable (seed only); an explicit --seed beats it
"""
from copy import deepcopy
from pathlib import Path
from typing import Any, Dict, Mapping, Optional
import json
import logging
import os

from errors import InputError

logger = logging.getLogger(__name__)

CONFIG_FILE_NAME = "wsym_config.json"
SEED_ENV_VAR = "WSYM_SEED"

DEFAULT_CONFIG: Dict[str, Any] = {
    "survey": {"seed": 0, "samples": 100, "entry_bound": 3},
    "weak_symmetry": {"metric_grid": [-2, -1, 1, 2], "samples": 100},
    "expdemo": {"tolerance": 1e-9, "exp_residual_tolerance": 1e-12},
    "report": {"indent": 2},
}


def deep_merge(base: Mapping[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    merged = deepcopy(dict(base))
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = deepcopy(value)
    return merged


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Defaults merged with the JSON configuration file.

    An explicit path must exist; the default file in the working directory is optional.

    Raises:
        InputError: the file is missing (explicit path only) or is not a JSON object.
    """
    if path is not None:
        config_path = Path(path)
        if not config_path.exists():
            raise InputError(f"Configuration file not found: {path}")
    else:
        config_path = Path(CONFIG_FILE_NAME)
        if not config_path.exists():
            return deepcopy(DEFAULT_CONFIG)

    try:
        with open(config_path, "r") as config_file:
            loaded = json.loads(config_file.read() or "{}")
    except json.JSONDecodeError as exc:
        raise InputError(f"Malformed configuration file {config_path}: {exc}") from exc
    if not isinstance(loaded, dict):
        raise InputError(f"Configuration file {config_path} must hold a JSON object")
    logger.debug("Loaded configuration from %s", config_path)
    return deep_merge(DEFAULT_CONFIG, loaded)


def resolve_seed(config: Mapping[str, Any], cli_seed: Optional[int] = None,
                 environ: Optional[Mapping[str, str]] = None) -> int:
    """--seed, else WSYM_SEED, else survey.seed from the configuration."""
    if cli_seed is not None:
        return int(cli_seed)
    environ = os.environ if environ is None else environ
    raw = environ.get(SEED_ENV_VAR)
    if raw is not None and raw.strip():
        try:
            return int(raw.strip())
        except ValueError as exc:
            raise InputError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from exc
    return int(config["survey"]["seed"])
