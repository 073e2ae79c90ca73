"""Complex sample files.

Binary layout (little endian): 4-byte magic ``b"CYCS"``, ``u32`` version,
``u64`` sample count, then interleaved ``float64`` (re, im) pairs.  Plain
text files with two whitespace- or comma-separated columns (re, im) are
accepted on read.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from ..errors import ConfigurationError

MAGIC = b"CYCS"
VERSION = 1
HEADER = struct.Struct("<4sIQ")


def write_samples(path: str | Path, samples, text: bool = False) -> None:
    samples = np.asarray(samples, dtype=np.complex128).ravel()
    if text:
        np.savetxt(path, np.column_stack([samples.real, samples.imag]), fmt="%.17g")
        return
    with open(path, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, VERSION, samples.size))
        fh.write(samples.astype("<c16").tobytes())


def read_samples(path: str | Path) -> np.ndarray:
    """Load a binary ``CYCS`` file, falling back to two-column text."""
    raw = Path(path).read_bytes()
    if raw[:4] == MAGIC:
        if len(raw) < HEADER.size:
            raise ConfigurationError(f"{path}: truncated header")
        _, version, count = HEADER.unpack_from(raw)
        if version != VERSION:
            raise ConfigurationError(f"{path}: unsupported sample file version {version}")
        body = raw[HEADER.size :]
        if len(body) != 16 * count:
            raise ConfigurationError(f"{path}: header declares {count} samples, found {len(body) / 16:g}")
        return np.frombuffer(body, dtype="<c16").astype(np.complex128)
    try:
        table = np.loadtxt(path, delimiter=None if b"," not in raw else ",", ndmin=2)
    except ValueError as exc:
        raise ConfigurationError(f"{path}: not a CYCS file or two-column text: {exc}") from exc
    if table.shape[1] != 2 or table.shape[0] < 1:
        raise ConfigurationError(f"{path}: expected two columns (re, im), got shape {table.shape}")
    return table[:, 0] + 1j * table[:, 1]
