"""Command-line surface.

Subcommands: encode, decode, repair, check, pairs, simulate. Exit codes:
0 success, 1 operational error, 2 usage error (argparse), 3 uncorrectable
erasure pattern.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import store
from .errors import SpxStoreError, UncorrectableError
from .simplex import build_generator, related_pairs
from .simulator import ScenarioConfig, ScenarioReport, run_scenario

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNCORRECTABLE = 3


def _cmd_encode(args: argparse.Namespace) -> int:
    manifest = store.encode_file(args.input, args.out, args.k, args.chunk_len)
    print(
        f"encoded {manifest.original_file_length} bytes into {manifest.n} shards "
        f"({manifest.block_count} blocks of {manifest.k} x {manifest.chunk_len} bytes)"
    )
    print(f"manifest: {Path(args.out) / store.MANIFEST_NAME}")
    return EXIT_OK


def _cmd_decode(args: argparse.Namespace) -> int:
    data = store.decode_file(args.manifest, args.out)
    print(f"wrote {len(data)} bytes to {args.out}")
    return EXIT_OK


def _cmd_repair(args: argparse.Namespace) -> int:
    steps = store.repair_shards(args.manifest)
    for step in steps:
        print(f"node {step.target} <= node {step.src_a} + node {step.src_b}")
    if steps:
        print(f"repaired {len(steps)} node(s)")
    else:
        print("nothing to repair")
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    status = store.check_shards(args.manifest)
    print(f"nodes: {status.n} total, {len(status.live)} live, {len(status.erased)} erased")
    print("live: " + (" ".join(map(str, status.live)) or "-"))
    print("erased: " + (" ".join(map(str, status.erased)) or "-"))
    print(f"correctable: {'yes' if status.correctable else 'no'}")
    print(f"within parallel guarantee: {'yes' if status.within_parallel_guarantee else 'no'}")
    return EXIT_OK


def _cmd_pairs(args: argparse.Namespace) -> int:
    g = build_generator(args.k)
    print(" ".join(f"({a},{b})" for a, b in related_pairs(g, args.node)))
    return EXIT_OK


def _render_report(report: ScenarioReport) -> str:
    cfg = report.config
    failures = (
        f"failures_per_round={cfg.failures_per_round}"
        if cfg.failures_per_round is not None
        else f"failure_prob={cfg.failure_prob}"
    )
    per_repair = (
        f"{report.chunks_read_total / report.repairs_total:.2f}"
        if report.repairs_total
        else "-"
    )
    lines = [
        f"scenario: k={cfg.k} n={(1 << cfg.k) - 1} chunk_len={cfg.chunk_len} "
        f"strategy={cfg.strategy} {failures} seed={cfg.seed}",
        f"{'rounds run':<20}{report.rounds_run}",
        f"{'repairs total':<20}{report.repairs_total}",
        f"{'easy repairs':<20}{report.easy_repairs}",
        f"{'fallback decodes':<20}{report.fallback_decodes}",
        f"{'chunks read':<20}{report.chunks_read_total}",
        f"{'reads per repair':<20}{per_repair}",
        f"{'data loss events':<20}{report.data_loss_events}",
    ]
    return "\n".join(lines)


def _cmd_simulate(args: argparse.Namespace) -> int:
    try:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_ERROR
    config = ScenarioConfig.from_dict(raw)
    report = run_scenario(config)
    text = json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    Path(args.report).write_text(text, encoding="utf-8")
    print(_render_report(report))
    print(f"report: {args.report}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spxstore",
        description="XOR-only simplex erasure coding: shard, check, repair, simulate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="shard a file into chunk files plus a manifest")
    p.add_argument("--k", type=int, required=True, help="code dimension (number of data symbols per block)")
    p.add_argument("--chunk-len", type=int, required=True, help="bytes per chunk symbol")
    p.add_argument("--out", required=True, help="output directory for shards and manifest")
    p.add_argument("input", help="file to shard")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="rebuild the original file from available shards")
    p.add_argument("--manifest", required=True, help="path to manifest.json")
    p.add_argument("--out", required=True, help="output file path")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("repair", help="regenerate missing or corrupt shard files")
    p.add_argument("--manifest", required=True, help="path to manifest.json")
    p.set_defaults(func=_cmd_repair)

    p = sub.add_parser("check", help="report shard health and recoverability")
    p.add_argument("--manifest", required=True, help="path to manifest.json")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("pairs", help="list the disjoint repair pairs of one node")
    p.add_argument("--k", type=int, required=True, help="code dimension")
    p.add_argument("--node", type=int, required=True, help="node id (1-based)")
    p.set_defaults(func=_cmd_pairs)

    p = sub.add_parser("simulate", help="run a deterministic failure/repair scenario")
    p.add_argument("--config", required=True, help="scenario config JSON")
    p.add_argument("--report", required=True, help="where to write the report JSON")
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UncorrectableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCORRECTABLE
    except (SpxStoreError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
