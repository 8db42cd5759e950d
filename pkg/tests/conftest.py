"""Shared brute-force oracles, kept independent of the library's own
rank/repair machinery so they can arbitrate it."""

from __future__ import annotations

from itertools import combinations

import pytest

from spxstore import GeneratorMatrix


def one_bit_codewords(g: GeneratorMatrix) -> list[int]:
    """All 2**k codewords of the underlying binary code, node i at bit (i-1)."""
    words = []
    for u in range(1 << g.k):
        cw = 0
        for idx, col in enumerate(g.columns):
            if (u & col).bit_count() & 1:
                cw |= 1 << idx
        words.append(cw)
    return words


def brute_correctable(codewords: list[int], n: int, erased: set[int]) -> bool:
    """Correctable iff no two codewords agree on every live position, i.e.
    no nonzero codeword is supported entirely on the erased positions."""
    live_mask = 0
    for i in range(1, n + 1):
        if i not in erased:
            live_mask |= 1 << (i - 1)
    return all(cw & live_mask for cw in codewords if cw)


def all_patterns(n: int):
    """Every erasure pattern of an n-node cluster, as sets of node ids."""
    for mask in range(1 << n):
        yield {i + 1 for i in range(n) if mask >> i & 1}


def patterns_up_to(n: int, max_erasures: int):
    for size in range(max_erasures + 1):
        for combo in combinations(range(1, n + 1), size):
            yield set(combo)


@pytest.fixture(scope="session")
def oracles():
    class Oracles:
        one_bit_codewords = staticmethod(one_bit_codewords)
        brute_correctable = staticmethod(brute_correctable)
        all_patterns = staticmethod(all_patterns)
        patterns_up_to = staticmethod(patterns_up_to)

    return Oracles
