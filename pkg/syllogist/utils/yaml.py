from pathlib import Path
from typing import Any

import yaml


def read_yaml(path: str | Path) -> Any:
    """Parsed content of a YAML file; read and parse failures surface as ValueError."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ValueError(f"cannot read YAML file {path}: {e}") from e
