"""XOR arithmetic on fixed-length byte chunks.

A stored symbol is an opaque byte string; the only arithmetic the code
construction ever needs is addition, which is bytewise XOR.
"""

from __future__ import annotations

from .errors import ChunkLengthError


def xor_chunks(a: bytes, b: bytes) -> bytes:
    """Bytewise XOR of two equal-length chunks."""
    if len(a) != len(b):
        raise ChunkLengthError(f"chunk lengths differ: {len(a)} != {len(b)}")
    # big-int conversion XORs the whole chunk in one C-level pass
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).to_bytes(len(a), "big")


def zero_chunk(length: int) -> bytes:
    """All-zero chunk of the given length (the XOR identity)."""
    if length < 1:
        raise ValueError(f"chunk length must be >= 1, got {length}")
    return bytes(length)
