"""Custom Encoder for serializing run records to JSON format.

This encoder extends the standard JSONEncoder to handle the additional types that run records
carry: NumPy scalars and arrays, paths, Enum values, Pydantic models and dataclasses.
"""

import dataclasses
import enum
import json
import math
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger
from pydantic import BaseModel


class ArtifactJSONEncoder(json.JSONEncoder):
    """
    JSON encoder for experiment artifacts.

    Non-finite floats are written as ``null`` so the output stays valid JSON. Unrecognized types are
    logged and converted to a ``<TypeName>`` placeholder.

    Examples
    --------
    >>> json.dumps({"rho": np.float64(3.0), "path": Path("out/report.csv")}, cls=ArtifactJSONEncoder)
    '{"rho": 3.0, "path": "out/report.csv"}'
    """

    def default(self, obj: Any) -> Any:
        """
        Convert Python objects to JSON-serializable types.

        Parameters
        ----------
        obj : Any
            The Python object to convert to a JSON-serializable type

        Returns
        -------
        Any
            A JSON-serializable representation of the input object
        """
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return _finite_or_none(float(obj))
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.ndarray):
            return _sanitize(obj.tolist())
        if isinstance(obj, Path):
            return obj.as_posix()
        if isinstance(obj, enum.Enum):
            return obj.value
        if isinstance(obj, BaseModel):
            return _sanitize(obj.model_dump(mode="json"))
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return _sanitize({field.name: getattr(obj, field.name) for field in dataclasses.fields(obj)})

        logger.debug(f"Encountered non-serializable type: {type(obj).__name__}")
        return f"<{type(obj).__name__}>"

    def iterencode(self, o: Any, _one_shot: bool = False) -> Any:
        """Encode ``o``, replacing non-finite floats anywhere in the structure by ``null``."""
        return super().iterencode(_sanitize(o), _one_shot)


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _sanitize(obj: Any) -> Any:
    if isinstance(obj, float):
        return _finite_or_none(obj)
    if isinstance(obj, dict):
        return {key: _sanitize(value) for key, value in obj.items()}
    if isinstance(obj, list | tuple):
        return [_sanitize(value) for value in obj]
    return obj
