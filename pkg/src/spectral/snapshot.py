"""
Binary field snapshots.

Layout (little-endian): a 32-byte header ``magic "AQGF" | version u32 | n1 u32 | n2 u32 | l1 f64 |
l2 f64`` followed by ``n1·n2`` float64 physical values in row-major order (``x2`` fastest).
"""

import struct
from pathlib import Path

import numpy as np
from loguru import logger

from src.spectral.fields import PhysicalField, SpectralField, to_physical
from src.spectral.grid import build_grid

MAGIC = b"AQGF"
VERSION = 1
HEADER = struct.Struct("<4sIIIdd")


def encode_snapshot(field: PhysicalField | SpectralField) -> bytes:
    """Serialize a field; spectral fields are written through their physical values."""
    physical = to_physical(field) if isinstance(field, SpectralField) else field
    grid = physical.grid
    header = HEADER.pack(MAGIC, VERSION, grid.n1, grid.n2, grid.l1, grid.l2)
    return header + physical.values.astype("<f8", copy=False).tobytes(order="C")


def decode_snapshot(payload: bytes) -> PhysicalField:
    """
    Parse a snapshot payload.

    Raises
    ------
    ValueError
        If the magic, version or payload length does not match the format.
    """
    if len(payload) < HEADER.size:
        raise ValueError(f"snapshot is {len(payload)} bytes, shorter than the {HEADER.size}-byte header")
    magic, version, n1, n2, l1, l2 = HEADER.unpack_from(payload)
    if magic != MAGIC:
        raise ValueError(f"not a field snapshot (magic {magic!r})")
    if version != VERSION:
        raise ValueError(f"unsupported snapshot version {version}")
    expected = HEADER.size + 8 * n1 * n2
    if len(payload) != expected:
        raise ValueError(f"snapshot body has {len(payload)} bytes, expected {expected} for a {n1}x{n2} grid")
    values = np.frombuffer(payload, dtype="<f8", offset=HEADER.size).reshape(n1, n2)
    return PhysicalField(grid=build_grid(n1, n2, l1, l2), values=values)


def write_snapshot(path: str | Path, field: PhysicalField | SpectralField) -> Path:
    """Write ``field`` to ``path`` and return the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_snapshot(field))
    logger.debug(f"Wrote field snapshot to {path}")
    return path


def read_snapshot(path: str | Path) -> PhysicalField:
    """Read a snapshot written by ``write_snapshot``."""
    return decode_snapshot(Path(path).read_bytes())
