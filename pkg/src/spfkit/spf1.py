"""Reader/writer for the SPF1 embedding exchange format.

Layout, all little-endian:

    bytes 0..3   magic "SPF1" (0x53 0x50 0x46 0x31)
    u32          version, currently 1
    u32          T (frame count)
    u32          d (embedding dimension)
    u8           normalized flag (0 or 1)
    3 bytes      reserved, zero
    T*d float32  row-major embedding payload
    u32          metadata length in bytes
    bytes        UTF-8 JSON metadata object {"fps": ..., "source_tag": ...}

Vectors are stored as float32; in-memory sequences hold float64, so a
write rounds to float32 once and a read returns exactly those values.
Write-then-read-then-write is byte identical.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path
from typing import Union

import numpy as np

from .errors import DomainError, FormatError, TruncatedFileError
from .types import EmbeddingSequence

MAGIC = b"SPF1"
VERSION = 1
_HEADER = struct.Struct("<4sIIIB3x")

PathLike = Union[str, Path]


def _metadata_bytes(seq: EmbeddingSequence) -> bytes:
    meta = {"fps": seq.fps, "source_tag": seq.source_tag}
    return json.dumps(meta, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def write_embedding_file(seq: EmbeddingSequence, path: PathLike) -> None:
    """Write ``seq`` to ``path`` in SPF1 form (float32 payload)."""
    payload = np.ascontiguousarray(seq.vectors, dtype="<f4").tobytes()
    meta = _metadata_bytes(seq)
    with open(path, "wb") as fh:
        fh.write(
            _HEADER.pack(MAGIC, VERSION, seq.frame_count, seq.dim, 1 if seq.normalized else 0)
        )
        fh.write(payload)
        fh.write(struct.pack("<I", len(meta)))
        fh.write(meta)


def _read_exact(fh, n: int, what: str) -> bytes:
    data = fh.read(n)
    if len(data) != n:
        raise TruncatedFileError(f"file ended while reading {what} ({len(data)}/{n} bytes)")
    return data


def read_embedding_file(path: PathLike) -> EmbeddingSequence:
    """Read an SPF1 file back into an EmbeddingSequence."""
    with open(path, "rb") as fh:
        header = _read_exact(fh, _HEADER.size, "header")
        magic, version, frames, dim, flag = _HEADER.unpack(header)
        if magic != MAGIC:
            raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
        if version != VERSION:
            raise FormatError(f"unsupported SPF1 version {version}")
        if frames < 2:
            raise DomainError(f"SPF1 file declares T = {frames}, need at least 2 frames")
        if dim < 1:
            raise DomainError(f"SPF1 file declares d = {dim}, need at least 1")
        payload = _read_exact(fh, 4 * frames * dim, "embedding payload")
        (meta_len,) = struct.unpack("<I", _read_exact(fh, 4, "metadata length"))
        meta_raw = _read_exact(fh, meta_len, "metadata")
    try:
        meta = json.loads(meta_raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"metadata is not valid UTF-8 JSON: {exc}") from exc
    if not isinstance(meta, dict):
        raise FormatError("metadata must be a JSON object")
    vectors = np.frombuffer(payload, dtype="<f4").reshape(frames, dim).astype(np.float64)
    fps = meta.get("fps")
    if fps is not None:
        fps = float(fps)
    return EmbeddingSequence(
        vectors=vectors,
        fps=fps,
        source_tag=str(meta.get("source_tag", "")),
        normalized=bool(flag),
    )
