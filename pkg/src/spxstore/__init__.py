"""XOR-only simplex erasure coding for distributed storage.

A file or object is encoded into n = 2**k - 1 node chunks such that every
chunk is an XOR of at most k data symbols, any erased chunk can be rebuilt
by XOR-ing exactly two live chunks, and any correctable erasure pattern can
be repaired entirely by such two-node XOR steps.
"""

from .chunks import xor_chunks, zero_chunk
from .codec import ClusterState, decode, decode_plan, encode
from .errors import (
    ChunkLengthError,
    ConfigError,
    LocalityExceededError,
    ManifestError,
    RepairPreconditionError,
    SpxStoreError,
    UncorrectableError,
)
from .repair import (
    RepairPlan,
    RepairStep,
    apply_repair,
    find_easy_repair,
    parallel_plan,
    plan_repairs,
    repair_all,
)
from .simplex import (
    CodeParams,
    GeneratorMatrix,
    ParityCheckMatrix,
    build_generator,
    build_parity_check,
    correctable,
    is_related,
    locality_bound_slack,
    min_distance,
    node_of_value,
    rank_f2,
    related_pairs,
    simplex_columns,
)
from .simulator import (
    STRATEGY_BASELINE,
    STRATEGY_EASY,
    ScenarioConfig,
    ScenarioReport,
    Xorshift64Star,
    inject_failures,
    run_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "CodeParams",
    "ChunkLengthError",
    "ClusterState",
    "ConfigError",
    "GeneratorMatrix",
    "LocalityExceededError",
    "ManifestError",
    "ParityCheckMatrix",
    "RepairPlan",
    "RepairPreconditionError",
    "RepairStep",
    "STRATEGY_BASELINE",
    "STRATEGY_EASY",
    "ScenarioConfig",
    "ScenarioReport",
    "SpxStoreError",
    "UncorrectableError",
    "Xorshift64Star",
    "apply_repair",
    "build_generator",
    "build_parity_check",
    "correctable",
    "decode",
    "decode_plan",
    "encode",
    "find_easy_repair",
    "inject_failures",
    "is_related",
    "locality_bound_slack",
    "min_distance",
    "node_of_value",
    "parallel_plan",
    "plan_repairs",
    "rank_f2",
    "related_pairs",
    "repair_all",
    "run_scenario",
    "simplex_columns",
    "xor_chunks",
    "zero_chunk",
]
