"""Easy repair: rebuild erased nodes as the XOR of exactly two live nodes.

One scan order drives everything. Live node pairs (j_a, j_b) are visited
with a < b, advancing b first and a only when b is exhausted; the first pair
whose column XOR lands on an erased node wins. Repeating the scan until the
cluster is whole repairs any correctable pattern, because a correctable
pattern with erasures always admits at least one such pair.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Optional

from .chunks import xor_chunks
from .codec import ClusterState
from .errors import LocalityExceededError, RepairPreconditionError, UncorrectableError
from .simplex import GeneratorMatrix, related_pairs, simplex_columns


@dataclass(frozen=True)
class RepairStep:
    """Rebuild ``target`` as chunk(src_a) XOR chunk(src_b)."""

    target: int
    src_a: int
    src_b: int

    def __post_init__(self):
        ids = (self.target, self.src_a, self.src_b)
        if any(not isinstance(i, int) or i < 1 for i in ids):
            raise ValueError(f"node ids must be positive integers, got {ids}")
        if len(set(ids)) != 3:
            raise ValueError(f"target and sources must be pairwise distinct, got {ids}")

    @property
    def sources(self) -> tuple[int, int]:
        return (self.src_a, self.src_b)


@dataclass(frozen=True)
class RepairPlan:
    """Batches of repair steps; steps within one batch are mutually independent
    and may run concurrently."""

    batches: tuple[tuple[RepairStep, ...], ...]

    def __post_init__(self):
        for batch in self.batches:
            targets = {step.target for step in batch}
            if len(targets) != len(batch):
                raise ValueError("batch repairs the same node twice")
            sources = {i for step in batch for i in step.sources}
            if targets & sources:
                raise ValueError("batch uses a repaired node as a source")

    def steps(self) -> list[RepairStep]:
        return [step for batch in self.batches for step in batch]


def _scan(g: GeneratorMatrix, live: list[int], erased: set[int]) -> Optional[RepairStep]:
    """First live pair (in scan order) whose XOR column is an erased node."""
    columns = g.columns
    by_value = g._node_by_value
    values = [columns[i - 1] for i in live]
    for a in range(len(live)):
        va = values[a]
        for b in range(a + 1, len(live)):
            target = by_value[va ^ values[b]]
            if target in erased:
                return RepairStep(target, live[a], live[b])
    return None


def find_easy_repair(g: GeneratorMatrix, cluster: ClusterState) -> Optional[RepairStep]:
    """Locate one erased node repairable from two live nodes, or None.

    None means no easy repair exists right now — either nothing is erased,
    fewer than two nodes are live, or every live-pair XOR lands on a live
    node (which implies the pattern is uncorrectable).
    """
    if cluster.params != g.params:
        raise ValueError("cluster parameters do not match the generator matrix")
    erased = set(cluster.erased_ids())
    if not erased:
        return None
    return _scan(g, cluster.live_ids(), erased)


def plan_repairs(g: GeneratorMatrix, erased: Iterable[int]) -> list[RepairStep]:
    """Ordered steps that repair every erased node, two reads per step.

    The plan depends only on which nodes are erased, never on chunk
    contents, so one plan can be replayed across many codewords sharing the
    same pattern. Raises UncorrectableError if the scan gets stuck while
    erasures remain.
    """
    remaining = set(erased)
    for i in remaining:
        g.check_node_id(i)
    live = [i for i in range(1, g.n + 1) if i not in remaining]
    steps = []
    while remaining:
        step = _scan(g, live, remaining)
        if step is None:
            raise UncorrectableError(remaining)
        steps.append(step)
        remaining.discard(step.target)
        bisect.insort(live, step.target)
    return steps


def apply_repair(cluster: ClusterState, step: RepairStep) -> ClusterState:
    """Execute one step, returning the cluster with the target rebuilt.

    Preconditions are checked explicitly and violations name the failed
    condition; the step's XOR relation is validated against the code itself.
    """
    for i in (step.target, step.src_a, step.src_b):
        cluster._check_node_id(i)
    columns = simplex_columns(cluster.params.k)
    if columns[step.target - 1] != columns[step.src_a - 1] ^ columns[step.src_b - 1]:
        raise RepairPreconditionError(
            f"node {step.target} is not related to the pair ({step.src_a}, {step.src_b})"
        )
    for src in step.sources:
        if not cluster.is_live(src):
            raise RepairPreconditionError(f"source node {src} is erased")
    if cluster.is_live(step.target):
        raise RepairPreconditionError(f"target node {step.target} is already live")
    rebuilt = xor_chunks(cluster.slots[step.src_a - 1], cluster.slots[step.src_b - 1])
    return cluster.with_chunk(step.target, rebuilt)


def repair_all(
    g: GeneratorMatrix, cluster: ClusterState
) -> tuple[ClusterState, list[RepairStep]]:
    """Repair every erased node by repeated easy repairs.

    Returns the fully live cluster and the ordered step trace (empty when
    nothing was erased). Raises UncorrectableError when the pattern cannot
    be repaired; every chunk it does write equals the encode-time value.
    """
    if cluster.params != g.params:
        raise ValueError("cluster parameters do not match the generator matrix")
    steps = plan_repairs(g, cluster.erased_ids())
    repaired = cluster
    for step in steps:
        repaired = apply_repair(repaired, step)
    return repaired, steps


def parallel_plan(g: GeneratorMatrix, cluster: ClusterState) -> RepairPlan:
    """One batch repairing every erased node from originally-live pairs.

    Within the (n-1)/2 erasure guarantee every erased node still has a fully
    live related pair, so all repairs can run in a single concurrent round.
    Beyond that guarantee the caller should fall back to repair_all.
    """
    if cluster.params != g.params:
        raise ValueError("cluster parameters do not match the generator matrix")
    erased = cluster.erased_ids()
    limit = g.params.parallel_guarantee
    if len(erased) > limit:
        raise LocalityExceededError(
            f"{len(erased)} erasures exceed the {limit}-erasure single-round "
            f"guarantee; use repair_all"
        )
    if not erased:
        return RepairPlan(())
    live = set(cluster.live_ids())
    steps = []
    for i in erased:
        for a, b in related_pairs(g, i):
            if a in live and b in live:
                steps.append(RepairStep(i, a, b))
                break
        else:
            raise RuntimeError(f"no live pair for node {i}; internal invariant violated")
    return RepairPlan((tuple(steps),))
