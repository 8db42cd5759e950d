"""Construction and combinatorics of the simplex code family.

Conventions used throughout the package:

* Node ids are 1-based: nodes 1..n with n = 2**k - 1.
* A generator-matrix column is stored as a single integer whose bit (r - 1)
  is the entry in row r, so the columns of a dimension-k code are exactly
  the values 1 .. 2**k - 1.
* The canonical column order is systematic-first: the standard basis
  (1, 2, 4, ..., 2**(k-1)) followed by the remaining values ascending.
* The parity-check matrix is (n-k) x n and annihilates codewords on the
  right (H . c^T = 0); row j is stored as an integer whose bit (i - 1)
  selects node i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

MIN_K = 2
MAX_K = 30  # columns are materialized; beyond this the node count is absurd


def _check_k(k: int) -> None:
    if not isinstance(k, int) or not MIN_K <= k <= MAX_K:
        raise ValueError(f"k must be an integer in [{MIN_K}, {MAX_K}], got {k!r}")


@dataclass(frozen=True)
class CodeParams:
    """Code dimension plus the byte width of one stored symbol."""

    k: int
    chunk_len: int = 1

    def __post_init__(self):
        _check_k(self.k)
        if not isinstance(self.chunk_len, int) or self.chunk_len < 1:
            raise ValueError(f"chunk_len must be a positive integer, got {self.chunk_len!r}")

    @property
    def n(self) -> int:
        """Number of storage nodes."""
        return (1 << self.k) - 1

    @property
    def parallel_guarantee(self) -> int:
        """Largest erasure count for which one round of pairwise XOR repairs
        is guaranteed to fix every erased node simultaneously."""
        return (self.n - 1) // 2


@lru_cache(maxsize=None)
def simplex_columns(k: int) -> tuple[int, ...]:
    """Column values in canonical order: standard basis, then the rest ascending."""
    _check_k(k)
    basis = [1 << r for r in range(k)]
    rest = [v for v in range(1, 1 << k) if v & (v - 1)]
    return tuple(basis + rest)


@dataclass(frozen=True)
class GeneratorMatrix:
    """The k x n generator matrix, held column-wise.

    ``columns[i - 1]`` is the column for node i. Columns enumerate every
    nonzero k-bit value exactly once, which makes the column set closed
    under XOR: the XOR of two distinct columns is always a third column.
    """

    params: CodeParams
    columns: tuple[int, ...]
    _node_by_value: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.params.n
        if len(self.columns) != n or set(self.columns) != set(range(1, n + 1)):
            raise ValueError("columns must enumerate every nonzero k-bit value exactly once")
        inverse = [0] * (n + 1)
        for idx, value in enumerate(self.columns):
            inverse[value] = idx + 1
        object.__setattr__(self, "_node_by_value", tuple(inverse))

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def n(self) -> int:
        return self.params.n

    def check_node_id(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.n:
            raise ValueError(f"node id must be in [1, {self.n}], got {i!r}")

    def column(self, i: int) -> int:
        """Column value of node i (1-based)."""
        self.check_node_id(i)
        return self.columns[i - 1]


@dataclass(frozen=True)
class ParityCheckMatrix:
    """The (n-k) x n parity-check matrix; row j annihilates codewords (H.c^T = 0)."""

    params: CodeParams
    rows: tuple[int, ...]


def build_generator(k: int, chunk_len: int = 1) -> GeneratorMatrix:
    """Generator matrix for the (2**k - 1, k) simplex code in canonical column order."""
    return GeneratorMatrix(CodeParams(k, chunk_len), simplex_columns(k))


def build_parity_check(params: CodeParams) -> ParityCheckMatrix:
    """Parity-check matrix H = [P^T | I] for the canonical order G = [I | P].

    Row j pairs the non-systematic column value v_j with the identity bit of
    node k + j; XOR-ing the columns selected by the row always cancels.
    """
    cols = simplex_columns(params.k)
    k = params.k
    rows = tuple(value | (1 << (k + j)) for j, value in enumerate(cols[k:]))
    return ParityCheckMatrix(params, rows)


def node_of_value(g: GeneratorMatrix, value: int) -> int:
    """The unique node id whose column equals ``value``."""
    if not isinstance(value, int) or not 1 <= value <= g.n:
        raise ValueError(f"column value must be in [1, {g.n}], got {value!r}")
    return g._node_by_value[value]


def is_related(g: GeneratorMatrix, i: int, pair: tuple[int, int]) -> bool:
    """True iff node i's column is the XOR of the pair's columns.

    When this holds, node i's chunk can be rebuilt by XOR-ing the pair's
    chunks; the relation is symmetric in all three participants.
    """
    a, b = pair
    for node in (i, a, b):
        g.check_node_id(node)
    if len({i, a, b}) != 3:
        raise ValueError(f"node ids must be pairwise distinct, got i={i}, pair=({a}, {b})")
    return g.column(i) == g.column(a) ^ g.column(b)


def related_pairs(g: GeneratorMatrix, i: int) -> list[tuple[int, int]]:
    """The (n-1)/2 disjoint pairs whose XOR rebuilds node i.

    Every node other than i appears in exactly one pair. Pairs are returned
    ascending by their smaller node id, with the smaller id first.
    """
    value = g.column(i)
    used = {i}
    pairs = []
    for j in range(1, g.n + 1):
        if j in used:
            continue
        partner = g._node_by_value[g.columns[j - 1] ^ value]
        used.add(j)
        used.add(partner)
        pairs.append((j, partner))
    return pairs


def rank_f2(values: Iterable[int], k: int) -> int:
    """Rank over GF(2) of a collection of k-bit vectors, via bitset elimination."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    pivots: dict[int, int] = {}
    for v in values:
        if not isinstance(v, int) or not 0 <= v < (1 << k):
            raise ValueError(f"values must be in [0, 2**{k} - 1], got {v!r}")
        while v:
            high = v.bit_length() - 1
            if high not in pivots:
                pivots[high] = v
                break
            v ^= pivots[high]
    return len(pivots)


def correctable(g: GeneratorMatrix, erased: Iterable[int]) -> bool:
    """Whether the data survives losing the given nodes.

    Equivalent to the live columns spanning the full k-dimensional space.
    """
    erased_set = set(erased)
    for i in erased_set:
        g.check_node_id(i)
    live = [g.columns[i - 1] for i in range(1, g.n + 1) if i not in erased_set]
    return rank_f2(live, g.k) == g.k


def min_distance(k: int) -> int:
    """Minimum distance of the dimension-k simplex code: 2**(k-1)."""
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    return 1 << (k - 1)


def locality_bound_slack(n: int, k: int, d: int, r: int) -> int:
    """Slack in the redundancy/locality/distance trade-off bound.

    Returns (n - k + 1 - d) - floor((k - 1) / r); any linear (n, k) code of
    minimum distance d and locality r satisfies slack >= 0, and equality
    means the code spends its entire distance gap on locality.
    """
    for name, value in (("n", n), ("k", k), ("d", d), ("r", r)):
        if not isinstance(value, int) or value < 1:
            raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return (n - k + 1 - d) - (k - 1) // r
