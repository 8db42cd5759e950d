"""Full encode/decode of a k-symbol object across the n nodes.

Encoding is one XOR pass per node; decoding solves the live-columns linear
system over GF(2) and is the non-local fallback: it always reads exactly k
live chunks, whereas the repair module reads two per erased node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .chunks import xor_chunks, zero_chunk
from .errors import ChunkLengthError, UncorrectableError
from .simplex import CodeParams, GeneratorMatrix


@dataclass(frozen=True)
class ClusterState:
    """Snapshot of the n node slots; ``None`` marks an erased node."""

    params: CodeParams
    slots: tuple[Optional[bytes], ...]

    def __post_init__(self):
        if len(self.slots) != self.params.n:
            raise ValueError(f"expected {self.params.n} slots, got {len(self.slots)}")
        for idx, chunk in enumerate(self.slots):
            if chunk is not None and len(chunk) != self.params.chunk_len:
                raise ChunkLengthError(
                    f"node {idx + 1} chunk has length {len(chunk)}, "
                    f"expected {self.params.chunk_len}"
                )

    def _check_node_id(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.params.n:
            raise ValueError(f"node id must be in [1, {self.params.n}], got {i!r}")

    def chunk(self, i: int) -> Optional[bytes]:
        """Chunk stored at node i, or None if erased."""
        self._check_node_id(i)
        return self.slots[i - 1]

    def is_live(self, i: int) -> bool:
        self._check_node_id(i)
        return self.slots[i - 1] is not None

    def live_ids(self) -> list[int]:
        return [i + 1 for i, chunk in enumerate(self.slots) if chunk is not None]

    def erased_ids(self) -> list[int]:
        return [i + 1 for i, chunk in enumerate(self.slots) if chunk is None]

    def with_chunk(self, i: int, chunk: bytes) -> "ClusterState":
        """New state with node i holding ``chunk``."""
        self._check_node_id(i)
        slots = list(self.slots)
        slots[i - 1] = chunk
        return ClusterState(self.params, tuple(slots))

    def erase(self, ids: Sequence[int]) -> "ClusterState":
        """New state with the given nodes erased."""
        for i in ids:
            self._check_node_id(i)
        doomed = set(ids)
        slots = tuple(
            None if (i + 1) in doomed else chunk for i, chunk in enumerate(self.slots)
        )
        return ClusterState(self.params, slots)


def encode(g: GeneratorMatrix, symbols: Sequence[bytes]) -> ClusterState:
    """Spread k equal-length symbols across all n nodes.

    Node i stores the XOR of the symbols selected by the bits of its column,
    so systematic nodes 1..k hold the symbols verbatim.
    """
    k, chunk_len = g.params.k, g.params.chunk_len
    if len(symbols) != k:
        raise ValueError(f"expected {k} symbols, got {len(symbols)}")
    for idx, symbol in enumerate(symbols):
        if len(symbol) != chunk_len:
            raise ChunkLengthError(
                f"symbol {idx + 1} has length {len(symbol)}, expected {chunk_len}"
            )
    slots = []
    for value in g.columns:
        acc = None
        for r in range(k):
            if value >> r & 1:
                acc = symbols[r] if acc is None else xor_chunks(acc, symbols[r])
        slots.append(acc)
    return ClusterState(g.params, tuple(slots))


def decode_plan(g: GeneratorMatrix, live_ids: Sequence[int]) -> list[tuple[int, ...]]:
    """For each message row, the live node ids whose chunks XOR to that symbol.

    Live columns are scanned in ascending node order and the first subset
    reaching full rank is kept, so the plan is deterministic and touches
    exactly k nodes. Raises UncorrectableError when the live columns do not
    span the message space.
    """
    k = g.params.k
    live = sorted(set(live_ids))
    for i in live:
        g.check_node_id(i)
    # pivots: highest set bit -> (reduced column, XOR-combination of node ids as bitmask)
    pivots: dict[int, tuple[int, int]] = {}
    for i in live:
        v = g.columns[i - 1]
        combo = 1 << (i - 1)
        while v:
            high = v.bit_length() - 1
            if high not in pivots:
                pivots[high] = (v, combo)
                break
            pv, pc = pivots[high]
            v ^= pv
            combo ^= pc
        if len(pivots) == k:
            break
    if len(pivots) < k:
        live_set = set(live)
        raise UncorrectableError(i for i in range(1, g.n + 1) if i not in live_set)
    plan = []
    for r in range(k):
        target = 1 << r
        combo = 0
        while target:
            pv, pc = pivots[target.bit_length() - 1]
            target ^= pv
            combo ^= pc
        plan.append(tuple(i + 1 for i in range(g.n) if combo >> i & 1))
    return plan


def decode(g: GeneratorMatrix, cluster: ClusterState) -> tuple[bytes, ...]:
    """Recover the original k symbols from any correctable live set.

    Never returns a wrong answer: an unsolvable pattern raises
    UncorrectableError instead.
    """
    if cluster.params != g.params:
        raise ValueError("cluster parameters do not match the generator matrix")
    plan = decode_plan(g, cluster.live_ids())
    chunk_len = g.params.chunk_len
    symbols = []
    for ids in plan:
        acc = zero_chunk(chunk_len)
        for i in ids:
            acc = xor_chunks(acc, cluster.slots[i - 1])
        symbols.append(acc)
    return tuple(symbols)
