"""Versioned binary containers for corpora and trained models.

Layout (all integers little-endian):

    bytes 0-3    magic (b"TSCO" corpus, b"TSMD" model)
    bytes 4-7    uint32 format version
    bytes 8-11   uint32 header length in bytes
    then         header: UTF-8 JSON, canonical form (sorted keys, no spaces)
    then         payload sections, back to back, in the order and with the
                 dtypes named by the caller

Canonical JSON plus fixed dtype ordering makes save(load(x)) reproduce the
file bit for bit, which the determinism tests rely on.
"""

from __future__ import annotations

import json

import numpy as np

FORMAT_VERSION = 1


def _canonical_json(header: dict) -> bytes:
    return json.dumps(
        header, ensure_ascii=False, sort_keys=True, separators=(",", ":")
    ).encode("utf-8")


def write_container(path, magic: bytes, header: dict, arrays: list[np.ndarray]) -> None:
    if len(magic) != 4:
        raise ValueError("magic must be 4 bytes")
    blob = _canonical_json(header)
    with open(path, "wb") as fh:
        fh.write(magic)
        fh.write(np.uint32(FORMAT_VERSION).tobytes())
        fh.write(np.uint32(len(blob)).tobytes())
        fh.write(blob)
        for arr in arrays:
            fh.write(np.ascontiguousarray(arr).tobytes())


def read_container(path, magic: bytes) -> tuple[dict, bytes]:
    """Return (header, payload bytes); caller slices payload by its schema."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[:4] != magic:
        raise ValueError(f"{path}: bad magic {raw[:4]!r}, expected {magic!r}")
    version = int(np.frombuffer(raw[4:8], dtype=np.uint32)[0])
    if version != FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported format version {version}")
    header_len = int(np.frombuffer(raw[8:12], dtype=np.uint32)[0])
    header = json.loads(raw[12 : 12 + header_len].decode("utf-8"))
    return header, raw[12 + header_len :]


def take(payload: bytes, offset: int, dtype, count: int) -> tuple[np.ndarray, int]:
    """Slice `count` items of `dtype` from payload starting at offset."""
    dt = np.dtype(dtype).newbyteorder("<")
    nbytes = dt.itemsize * count
    arr = np.frombuffer(payload[offset : offset + nbytes], dtype=dt)
    if arr.size != count:
        raise ValueError("container payload truncated")
    return arr, offset + nbytes
