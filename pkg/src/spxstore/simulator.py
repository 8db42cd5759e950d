"""Deterministic failure-injection scenarios with repair-bandwidth accounting.

Each round erases some live nodes, then repairs with the configured
strategy: ``easy-repair`` rebuilds every erased node from two live nodes,
``full-decode-baseline`` re-solves the whole object from k live nodes and
re-encodes the missing ones. An uncorrectable round is recorded as a data
loss and the scenario continues with a fresh object.

Randomness comes from a self-contained xorshift64* generator so reports are
reproducible bit-for-bit from the seed alone, in any implementation:

    state update:  x ^= x >> 12;  x ^= (x << 25) mod 2**64;  x ^= x >> 27
    output:        (x * 0x2545F4914F6CDD1D) mod 2**64
    seeding:       state = splitmix64(seed), where splitmix64 adds
                   0x9E3779B97F4A7C15 then mixes with 0xBF58476D1CE4E5B9 and
                   0x94D049BB133111EB (shifts 30/27/31); a zero state is
                   replaced by 0x9E3779B97F4A7C15

Derived draws (in stream order, so runs can be replayed elsewhere):

    below(m):  rejection-sample r = next() until r < 2**64 - (2**64 % m),
               then return r % m
    chance(p): next() < floor(p * 2**64)
    chunk(L):  successive outputs as 8-byte big-endian words, truncated to L

Failure injection draws, per round: with ``failures_per_round`` f, repeat
min(f, live) times: pick below(len(live)) from the ascending live list and
erase it. With ``failure_prob`` p: visit live nodes in ascending id order
and erase each for which chance(p) holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .codec import ClusterState, decode, encode
from .errors import ConfigError, UncorrectableError
from .repair import RepairStep, repair_all
from .simplex import MAX_K, MIN_K, build_generator

STRATEGY_EASY = "easy-repair"
STRATEGY_BASELINE = "full-decode-baseline"
STRATEGIES = (STRATEGY_EASY, STRATEGY_BASELINE)

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class Xorshift64Star:
    """xorshift64* generator; see the module docstring for the exact spec."""

    def __init__(self, seed: int):
        if not isinstance(seed, int) or not 0 <= seed < (1 << 64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        self._state = _splitmix64(seed) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK64
        x ^= x >> 27
        self._state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK64

    def below(self, m: int) -> int:
        """Unbiased integer in [0, m)."""
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        threshold = (1 << 64) - ((1 << 64) % m)
        while True:
            r = self.next_u64()
            if r < threshold:
                return r % m

    def chance(self, p: float) -> bool:
        """True with probability p."""
        return self.next_u64() < int(p * (1 << 64))

    def chunk(self, length: int) -> bytes:
        """``length`` pseudo-random bytes."""
        words = (length + 7) // 8
        buf = b"".join(self.next_u64().to_bytes(8, "big") for _ in range(words))
        return buf[:length]


@dataclass(frozen=True)
class ScenarioConfig:
    """Scenario parameters; exactly one of the failure fields must be set."""

    k: int
    chunk_len: int
    rounds: int
    seed: int
    strategy: str = STRATEGY_EASY
    failures_per_round: Optional[int] = None
    failure_prob: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.k, int) or not MIN_K <= self.k <= MAX_K:
            raise ConfigError(f"k: must be an integer in [{MIN_K}, {MAX_K}], got {self.k!r}")
        if not isinstance(self.chunk_len, int) or self.chunk_len < 1:
            raise ConfigError(f"chunk_len: must be a positive integer, got {self.chunk_len!r}")
        if not isinstance(self.rounds, int) or self.rounds < 1:
            raise ConfigError(f"rounds: must be an integer >= 1, got {self.rounds!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < (1 << 64):
            raise ConfigError(f"seed: must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"strategy: must be one of {STRATEGIES}, got {self.strategy!r}")
        if (self.failures_per_round is None) == (self.failure_prob is None):
            raise ConfigError(
                "failures_per_round/failure_prob: exactly one must be set"
            )
        if self.failures_per_round is not None:
            if not isinstance(self.failures_per_round, int) or self.failures_per_round < 0:
                raise ConfigError(
                    f"failures_per_round: must be an integer >= 0, got {self.failures_per_round!r}"
                )
        if self.failure_prob is not None:
            if not isinstance(self.failure_prob, (int, float)) or not 0.0 <= self.failure_prob <= 1.0:
                raise ConfigError(
                    f"failure_prob: must be a number in [0, 1], got {self.failure_prob!r}"
                )

    _FIELDS = ("k", "chunk_len", "rounds", "seed", "strategy",
               "failures_per_round", "failure_prob")

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioConfig":
        if not isinstance(raw, dict):
            raise ConfigError(f"config: must be a JSON object, got {type(raw).__name__}")
        unknown = set(raw) - set(cls._FIELDS)
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        for required in ("k", "chunk_len", "rounds", "seed"):
            if required not in raw:
                raise ConfigError(f"{required}: required field is missing")
        return cls(**raw)

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "chunk_len": self.chunk_len,
            "rounds": self.rounds,
            "seed": self.seed,
            "strategy": self.strategy,
        }
        if self.failures_per_round is not None:
            out["failures_per_round"] = self.failures_per_round
        if self.failure_prob is not None:
            out["failure_prob"] = self.failure_prob
        return out


@dataclass(frozen=True)
class RoundRecord:
    """What one round erased, repaired, and read."""

    number: int
    erased: tuple[int, ...]
    steps: tuple[RepairStep, ...]
    restored: tuple[int, ...]
    chunks_read: int
    data_loss: bool

    def to_dict(self) -> dict:
        return {
            "round": self.number,
            "erased": list(self.erased),
            "steps": [[s.target, s.src_a, s.src_b] for s in self.steps],
            "restored": list(self.restored),
            "chunks_read": self.chunks_read,
            "data_loss": self.data_loss,
        }


@dataclass
class ScenarioReport:
    """Accumulated counters plus the per-round records."""

    config: ScenarioConfig
    rounds_run: int = 0
    repairs_total: int = 0
    easy_repairs: int = 0
    fallback_decodes: int = 0
    chunks_read_total: int = 0
    data_loss_events: int = 0
    rounds: list[RoundRecord] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "rounds_run": self.rounds_run,
            "repairs_total": self.repairs_total,
            "easy_repairs": self.easy_repairs,
            "fallback_decodes": self.fallback_decodes,
            "chunks_read_total": self.chunks_read_total,
            "data_loss_events": self.data_loss_events,
            "rounds": [record.to_dict() for record in self.rounds],
        }


def inject_failures(
    cluster: ClusterState, rng: Xorshift64Star, config: ScenarioConfig
) -> ClusterState:
    """Erase this round's victims, advancing ``rng`` in place.

    Asking for more failures than there are live nodes erases them all.
    """
    if config.failures_per_round is not None:
        live = cluster.live_ids()
        count = min(config.failures_per_round, len(live))
        doomed = []
        for _ in range(count):
            doomed.append(live.pop(rng.below(len(live))))
        return cluster.erase(doomed)
    p = config.failure_prob
    doomed = [i for i in cluster.live_ids() if rng.chance(p)]
    return cluster.erase(doomed)


def run_scenario(config: ScenarioConfig) -> ScenarioReport:
    """Run the configured scenario and return its report.

    The run self-checks: after every successful repair the cluster must be
    byte-identical to the encode-time cluster, otherwise a RuntimeError is
    raised rather than silently reporting corrupted results.
    """
    g = build_generator(config.k, config.chunk_len)
    rng = Xorshift64Star(config.seed)

    def fresh_cluster() -> ClusterState:
        symbols = tuple(rng.chunk(config.chunk_len) for _ in range(config.k))
        return encode(g, symbols)

    pristine = fresh_cluster()
    cluster = pristine
    report = ScenarioReport(config=config)

    for number in range(1, config.rounds + 1):
        damaged = inject_failures(cluster, rng, config)
        erased = tuple(damaged.erased_ids())
        steps: tuple[RepairStep, ...] = ()
        restored: tuple[int, ...] = ()
        reads = 0
        loss = False

        if not erased:
            cluster = damaged
        elif config.strategy == STRATEGY_EASY:
            try:
                cluster, step_list = repair_all(g, damaged)
                steps = tuple(step_list)
                restored = tuple(sorted(s.target for s in step_list))
                reads = 2 * len(step_list)
                report.easy_repairs += len(step_list)
                report.repairs_total += len(step_list)
            except UncorrectableError:
                loss = True
        else:
            try:
                recovered = decode(g, damaged)
                reads = config.k
                restored = erased
                report.fallback_decodes += 1
                report.repairs_total += len(erased)
                cluster = encode(g, recovered)
            except UncorrectableError:
                loss = True

        if loss:
            report.data_loss_events += 1
            pristine = fresh_cluster()
            cluster = pristine
        elif erased and cluster.slots != pristine.slots:
            raise RuntimeError(f"repair corrupted data in round {number}")

        report.chunks_read_total += reads
        report.rounds_run += 1
        report.rounds.append(
            RoundRecord(number, erased, steps, restored, reads, loss)
        )
    return report
