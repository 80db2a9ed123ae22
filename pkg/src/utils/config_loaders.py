"""Access to the YAML defaults shipped with the package."""

from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml

DEFAULTS_PATH = Path(__file__).resolve().parent.parent / "configs" / "defaults.yml"


@lru_cache(maxsize=4)
def _load(config_path: str) -> dict:
    with open(config_path, encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def get_default(section: str, key: str | None = None, config_path: str | Path = DEFAULTS_PATH) -> Any:
    """
    Retrieve a default from the configuration using a two-layer design.

    Parameters
    ----------
    section : str
        The top-level section (e.g., 'lemma1', 'sweep').
    key : str, optional
        The entry within the section. When omitted the whole section is returned.
    config_path : str or Path, optional
        The YAML file to read; the packaged ``defaults.yml`` by default.

    Returns
    -------
    Any
        The configured value.

    Raises
    ------
    KeyError
        If the file is malformed or the section or key is missing.
    """
    config = _load(str(config_path))

    if "defaults" not in config:
        raise KeyError("Malformed configuration file. Expecting `defaults` top-level key.")

    if section not in config["defaults"]:
        raise KeyError(f"Cannot find entries for section {section} in defaults configuration.")

    if key is None:
        return dict(config["defaults"][section])

    if key not in config["defaults"][section]:
        raise KeyError(f"Cannot find entry for key {key} within section {section}")

    return config["defaults"][section][key]
