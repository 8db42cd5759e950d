"""On-disk shard layout: one binary chunk file per node plus a JSON manifest.

Chunk file layout (7-byte header, then payload):

    bytes 0-3   magic "SPXC"
    byte  4     format version (1)
    bytes 5-6   node id, big-endian
    bytes 7..   payload: block_count chunks of chunk_len bytes, concatenated

The source file is split into consecutive blocks of k * chunk_len bytes
(zero-padded at the end); block b contributes chunk b of every node's
payload. The manifest is UTF-8 JSON with fields ``format_version``, ``k``,
``n``, ``chunk_len``, ``original_file_length``, ``block_count`` and a
``chunks`` array of ``{node, filename, crc32}`` records, where ``crc32`` is
the CRC-32 (polynomial 0xEDB88320, as in zlib) of the payload bytes only.

A chunk file that is missing, unreadable, or fails any header/length/CRC
check is treated as an erased node, never as a hard error.
"""

from __future__ import annotations

import json
import os
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .chunks import xor_chunks
from .codec import decode_plan, encode
from .errors import ManifestError
from .repair import RepairStep, plan_repairs
from .simplex import MIN_K, build_generator, correctable

MAGIC = b"SPXC"
FORMAT_VERSION = 1
_HEADER = struct.Struct(">4sBH")

# the header stores the node id in two bytes, so n = 2**k - 1 <= 65535
MAX_STORE_K = 16

MANIFEST_NAME = "manifest.json"

Pathish = Union[str, os.PathLike]


def chunk_filename(node: int) -> str:
    return f"node_{node:03d}.spxc"


@dataclass(frozen=True)
class ChunkEntry:
    node: int
    filename: str
    crc32: int


@dataclass(frozen=True)
class Manifest:
    format_version: int
    k: int
    n: int
    chunk_len: int
    original_file_length: int
    block_count: int
    chunks: tuple[ChunkEntry, ...]

    @property
    def payload_length(self) -> int:
        return self.block_count * self.chunk_len

    def entry(self, node: int) -> ChunkEntry:
        return self.chunks[node - 1]

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "k": self.k,
            "n": self.n,
            "chunk_len": self.chunk_len,
            "original_file_length": self.original_file_length,
            "block_count": self.block_count,
            "chunks": [
                {"node": e.node, "filename": e.filename, "crc32": e.crc32}
                for e in self.chunks
            ],
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "Manifest":
        if not isinstance(raw, dict):
            raise ManifestError("manifest must be a JSON object")
        required = (
            "format_version", "k", "n", "chunk_len",
            "original_file_length", "block_count", "chunks",
        )
        for name in required:
            if name not in raw:
                raise ManifestError(f"manifest field {name!r} is missing")
        unknown = set(raw) - set(required)
        if unknown:
            raise ManifestError(f"unknown manifest field(s): {', '.join(sorted(unknown))}")
        for name in required[:-1]:
            if not isinstance(raw[name], int):
                raise ManifestError(f"manifest field {name!r} must be an integer")
        if raw["format_version"] != FORMAT_VERSION:
            raise ManifestError(f"unsupported manifest format_version {raw['format_version']}")
        k, n = raw["k"], raw["n"]
        if not MIN_K <= k <= MAX_STORE_K:
            raise ManifestError(f"k must be in [{MIN_K}, {MAX_STORE_K}], got {k}")
        if n != (1 << k) - 1:
            raise ManifestError(f"n must be 2**k - 1 = {(1 << k) - 1}, got {n}")
        if raw["chunk_len"] < 1 or raw["block_count"] < 0:
            raise ManifestError("chunk_len must be >= 1 and block_count >= 0")
        if not 0 <= raw["original_file_length"] <= raw["block_count"] * k * raw["chunk_len"]:
            raise ManifestError("original_file_length is inconsistent with block_count")
        entries = []
        if not isinstance(raw["chunks"], list) or len(raw["chunks"]) != n:
            raise ManifestError(f"chunks must list exactly {n} entries")
        for idx, item in enumerate(raw["chunks"]):
            if not isinstance(item, dict) or set(item) != {"node", "filename", "crc32"}:
                raise ManifestError(f"chunk entry {idx} must have node/filename/crc32")
            node, filename, crc = item["node"], item["filename"], item["crc32"]
            if node != idx + 1:
                raise ManifestError(f"chunk entry {idx} has node {node}, expected {idx + 1}")
            if not isinstance(filename, str) or os.sep in filename or "/" in filename:
                raise ManifestError(f"chunk entry {idx} has an invalid filename")
            if not isinstance(crc, int) or not 0 <= crc < (1 << 32):
                raise ManifestError(f"chunk entry {idx} has an invalid crc32")
            entries.append(ChunkEntry(node, filename, crc))
        return cls(
            raw["format_version"], k, n, raw["chunk_len"],
            raw["original_file_length"], raw["block_count"], tuple(entries),
        )

    def save(self, path: Pathish) -> None:
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
        Path(path).write_text(text, encoding="utf-8")

    @classmethod
    def load(cls, path: Pathish) -> "Manifest":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ManifestError(f"manifest is not valid JSON: {exc}") from exc
        return cls.from_dict(raw)


def write_chunk_file(path: Pathish, node: int, payload: bytes) -> None:
    """Write header + payload atomically (temp file, then rename)."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(_HEADER.pack(MAGIC, FORMAT_VERSION, node) + payload)
    os.replace(tmp, path)


def read_chunk_payload(path: Pathish, entry: ChunkEntry, payload_length: int) -> Optional[bytes]:
    """Payload of a chunk file, or None if it is missing or fails validation."""
    try:
        blob = Path(path).read_bytes()
    except OSError:
        return None
    if len(blob) != _HEADER.size + payload_length:
        return None
    magic, version, node = _HEADER.unpack_from(blob)
    if magic != MAGIC or version != FORMAT_VERSION or node != entry.node:
        return None
    payload = blob[_HEADER.size:]
    if zlib.crc32(payload) != entry.crc32:
        return None
    return payload


def load_shards(manifest: Manifest, directory: Pathish) -> tuple[dict[int, bytes], list[int]]:
    """Read every chunk file; returns valid payloads by node id and the erased list."""
    directory = Path(directory)
    live: dict[int, bytes] = {}
    erased: list[int] = []
    for entry in manifest.chunks:
        payload = read_chunk_payload(directory / entry.filename, entry, manifest.payload_length)
        if payload is None:
            erased.append(entry.node)
        else:
            live[entry.node] = payload
    return live, erased


def encode_file(input_path: Pathish, out_dir: Pathish, k: int, chunk_len: int) -> Manifest:
    """Shard a file into n chunk files plus a manifest under ``out_dir``."""
    if not isinstance(k, int) or not MIN_K <= k <= MAX_STORE_K:
        raise ValueError(f"k must be an integer in [{MIN_K}, {MAX_STORE_K}], got {k!r}")
    if not isinstance(chunk_len, int) or chunk_len < 1:
        raise ValueError(f"chunk_len must be a positive integer, got {chunk_len!r}")
    data = Path(input_path).read_bytes()
    g = build_generator(k, chunk_len)
    n = g.params.n
    block_bytes = k * chunk_len
    block_count = -(-len(data) // block_bytes)
    padded = data.ljust(block_count * block_bytes, b"\x00")

    payloads = [bytearray() for _ in range(n)]
    for b in range(block_count):
        base = b * block_bytes
        symbols = [padded[base + r * chunk_len : base + (r + 1) * chunk_len] for r in range(k)]
        state = encode(g, symbols)
        for idx, chunk in enumerate(state.slots):
            payloads[idx] += chunk

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for node in range(1, n + 1):
        payload = bytes(payloads[node - 1])
        filename = chunk_filename(node)
        write_chunk_file(out / filename, node, payload)
        entries.append(ChunkEntry(node, filename, zlib.crc32(payload)))
    manifest = Manifest(
        FORMAT_VERSION, k, n, chunk_len, len(data), block_count, tuple(entries)
    )
    manifest.save(out / MANIFEST_NAME)
    return manifest


def decode_file(manifest_path: Pathish, out_path: Pathish) -> bytes:
    """Rebuild the original file from any correctable set of shard files.

    Raises UncorrectableError (naming the erased nodes) when too few valid
    shards remain.
    """
    manifest = Manifest.load(manifest_path)
    directory = Path(manifest_path).parent
    live, _ = load_shards(manifest, directory)
    g = build_generator(manifest.k, manifest.chunk_len)
    plan = decode_plan(g, sorted(live))

    payload_length = manifest.payload_length
    rows = []
    for ids in plan:
        acc = bytes(payload_length)
        for i in ids:
            acc = xor_chunks(acc, live[i])
        rows.append(acc)

    chunk_len = manifest.chunk_len
    out = bytearray()
    for b in range(manifest.block_count):
        for r in range(manifest.k):
            out += rows[r][b * chunk_len : (b + 1) * chunk_len]
    data = bytes(out[: manifest.original_file_length])
    Path(out_path).write_bytes(data)
    return data


def repair_shards(manifest_path: Pathish) -> list[RepairStep]:
    """Regenerate missing or corrupt shard files in place.

    The step plan depends only on the erasure pattern, so each step is
    executed once against whole payloads. Regenerated payloads must match
    the manifest checksums, and nothing is written unless every erased node
    was rebuilt. Returns the executed steps ([] when nothing was wrong).
    """
    manifest = Manifest.load(manifest_path)
    directory = Path(manifest_path).parent
    live, erased = load_shards(manifest, directory)
    if not erased:
        return []
    g = build_generator(manifest.k, manifest.chunk_len)
    steps = plan_repairs(g, erased)

    payloads = dict(live)
    for step in steps:
        payloads[step.target] = xor_chunks(payloads[step.src_a], payloads[step.src_b])
    for node in erased:
        if zlib.crc32(payloads[node]) != manifest.entry(node).crc32:
            raise ManifestError(
                f"regenerated node {node} does not match the manifest checksum"
            )
    for node in erased:
        entry = manifest.entry(node)
        write_chunk_file(directory / entry.filename, node, payloads[node])
    return steps


@dataclass(frozen=True)
class ShardStatus:
    """Health summary of a shard directory."""

    k: int
    n: int
    live: tuple[int, ...]
    erased: tuple[int, ...]
    correctable: bool
    within_parallel_guarantee: bool


def check_shards(manifest_path: Pathish) -> ShardStatus:
    """Report which nodes are live/erased and what recovery is possible."""
    manifest = Manifest.load(manifest_path)
    directory = Path(manifest_path).parent
    live, erased = load_shards(manifest, directory)
    g = build_generator(manifest.k, manifest.chunk_len)
    return ShardStatus(
        k=manifest.k,
        n=manifest.n,
        live=tuple(sorted(live)),
        erased=tuple(erased),
        correctable=correctable(g, erased),
        within_parallel_guarantee=len(erased) <= g.params.parallel_guarantee,
    )
