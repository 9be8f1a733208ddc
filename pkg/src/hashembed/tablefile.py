"""Embedding-table export: a self-describing binary format plus a TSV twin.

Binary layout (everything little-endian):

    magic "EELB" | u32 version | u32 d | u32 V | u64 random_state
    | u32 N | u64 B | u32 rolling_base | V*d float32 payload, row-major

The header reproduces the generating hash parameters, so a table can be
re-verified bit for bit with no side channel. Token policies (pad zeroing,
prefix stripping) are not recorded; verification assumes the defaults.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .embedder import Embedder
from .errors import FormatError, InvalidConfig, VocabMismatch
from .hashcore import HashConfig
from .vocab import VocabFile

MAGIC = b"EELB"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sIIIQIQI")
_U32_MAX = 2**32 - 1
_U64_MAX = 2**64 - 1

_CHUNK_ROWS = 1024


@dataclass(frozen=True)
class TableHeader:
    version: int
    d: int
    V: int
    random_state: int
    N: int
    B: int
    rolling_base: int

    def to_config(self) -> HashConfig:
        return HashConfig(d=self.d, N=self.N, B=self.B, random_state=self.random_state,
                          rolling_base=self.rolling_base)


def _pack_header(config: HashConfig, V: int) -> bytes:
    if config.B > _U64_MAX:
        raise InvalidConfig("bucket size does not fit the table header (64 bits)")
    for name, value in (("d", config.d), ("V", V), ("N", config.N),
                        ("rolling_base", config.rolling_base)):
        if value > _U32_MAX:
            raise InvalidConfig(f"{name}={value} does not fit the table header (32 bits)")
    return _HEADER.pack(MAGIC, FORMAT_VERSION, config.d, V, config.random_state,
                        config.N, config.B, config.rolling_base)


def _read_header(f, path) -> TableHeader:
    raw = f.read(_HEADER.size)
    if len(raw) != _HEADER.size:
        raise FormatError(f"{path}: truncated header")
    magic, version, d, V, random_state, N, B, rolling_base = _HEADER.unpack(raw)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise FormatError(f"{path}: unsupported format version {version}")
    return TableHeader(version, d, V, random_state, N, B, rolling_base)


def _chunks(tokens, size):
    for start in range(0, len(tokens), size):
        yield start, tokens[start:start + size]


def export_table(vocab: VocabFile, config: HashConfig, out_path,
                 n_workers: int | None = None) -> dict:
    """Write the V x d table for a vocabulary; row v is embed_token(vocab[v]).

    Output is byte-identical across runs and machines for equal inputs.
    Returns {"V", "d", "parameter_count", "path"}.
    """
    embedder = Embedder(config)
    header = _pack_header(config, len(vocab))
    with open(out_path, "wb") as f:
        f.write(header)
        for _, chunk in _chunks(vocab.tokens, _CHUNK_ROWS):
            rows = embedder.embed_batch(chunk, n_workers=n_workers)
            f.write(rows.astype("<f4").tobytes())
    return {"V": len(vocab), "d": config.d,
            "parameter_count": len(vocab) * config.d, "path": str(out_path)}


def export_text(vocab: VocabFile, config: HashConfig, out_path) -> dict:
    """TSV twin of export_table: token, then d floats at 9 significant digits.

    Values are the float32-cast embeddings, so parsing a line back and
    casting to float32 reproduces the binary payload exactly.
    """
    embedder = Embedder(config)
    with open(out_path, "w", encoding="utf-8") as f:
        for _, chunk in _chunks(vocab.tokens, _CHUNK_ROWS):
            rows = embedder.embed_batch(chunk).astype(np.float32)
            for tok, row in zip(chunk, rows):
                f.write(tok + "\t" + format_row(row) + "\n")
    return {"V": len(vocab), "d": config.d,
            "parameter_count": len(vocab) * config.d, "path": str(out_path)}


def format_row(row) -> str:
    return "\t".join(format(float(v), ".9g") for v in row)


def read_table(path) -> tuple[TableHeader, np.ndarray]:
    """Load header and payload; the payload comes back as a V x d float32 array."""
    with open(path, "rb") as f:
        header = _read_header(f, path)
        payload = f.read()
    expected = header.V * header.d * 4
    if len(payload) != expected:
        raise FormatError(f"{path}: payload is {len(payload)} bytes, expected {expected}")
    rows = np.frombuffer(payload, dtype="<f4").reshape(header.V, header.d)
    return header, rows


def verify_table(table_path, vocab: VocabFile) -> dict:
    """Recompute every row from the header's config and compare bit-exactly.

    Returns {"rows_checked", "mismatches"} where mismatches lists offending
    row indices. Raises VocabMismatch when the vocabulary length differs.
    """
    header, stored = read_table(table_path)
    if header.V != len(vocab):
        raise VocabMismatch(
            f"table has {header.V} rows, vocabulary has {len(vocab)} tokens")
    embedder = Embedder(header.to_config())
    stored_bits = stored.view("<u4")
    mismatches = []
    for start, chunk in _chunks(vocab.tokens, _CHUNK_ROWS):
        expected = embedder.embed_batch(chunk).astype("<f4").view("<u4")
        bad = np.nonzero(np.any(stored_bits[start:start + len(chunk)] != expected, axis=1))[0]
        mismatches.extend(int(start + r) for r in bad)
    return {"rows_checked": len(vocab), "mismatches": mismatches}
