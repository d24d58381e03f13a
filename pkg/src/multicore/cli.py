"""Command-line front end.

    multicore detect --input karate.edges --replicas 10000 --seed 42 --out out/

Exit codes: 0 success, 1 unreadable or malformed input, 2 no valid
partition, 3 bad flags.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .graph import GraphError, parse_edge_list
from .hclust import TIE_BREAKS, TRANSFORMS
from .null_model import RandomizationConfig
from .optimizer import AnalysisResult, NoValidPartition, find_optimal, partition_agreement
from .report import RunReport, input_digest

EXIT_INPUT, EXIT_NO_PARTITION, EXIT_FLAGS = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAGS, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("must be >= 2")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multicore", description="Multicore-periphery partition of a weighted network.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("detect", help="find the optimal cores/periphery partition")
    p.add_argument("--input", required=True, help="edge list: 'u v [weight]' per line")
    p.add_argument("--input-format", choices=["whitespace", "csv"], default=None,
                   help="default: csv for *.csv files, whitespace otherwise")
    p.add_argument("--transform", choices=TRANSFORMS + ("sweep",), default="sim_complement")
    p.add_argument("--tie-break", choices=TIE_BREAKS, default="high")
    p.add_argument("--replicas", type=_positive_int, default=1000)
    p.add_argument("--swap-factor", type=_positive_float, default=10.0)
    p.add_argument("--seed", type=int, default=0, help="master seed (MCP_SEED overrides)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--independent-ensembles", action="store_true",
                   help="fresh replicas for every cut instead of one shared ensemble")
    p.add_argument("--out", default="out")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--no-timing", action="store_true", help="omit wall times from reports")
    return parser


def _write_outputs(out: Path, g, result: AnalysisResult, digest: str, fmt: str, timing: dict | None):
    out.mkdir(parents=True, exist_ok=True)
    report = RunReport.build(g.vertex_labels, result, digest, timing)
    if fmt == "json":
        (out / "partition.json").write_text(report.to_json())
    else:
        (out / "partition.csv").write_text(report.partition_csv())
    (out / "zcurve.csv").write_text(result.zcurve_csv())
    (out / "dendrogram.csv").write_text(result.dendrogram.to_csv())
    (out / "diagnostics.csv").write_text(result.z_curve.diagnostics_csv())
    (out / "matrix_order.txt").write_text("".join(f"{x}\n" for x in report.matrix_order))
    return report


def _summary_line(name: str, result: AnalysisResult) -> str:
    m = result.optimal_metrics
    return (f"{name}: cut={result.optimal_cut} k={result.optimal_partition.n_cores} "
            f"m={result.optimal_partition.n_periphery} r={m.r:.6g} z={result.optimal_z:.6g}")


def run_detect(args: argparse.Namespace) -> int:
    try:
        text = Path(args.input).read_text(encoding="utf-8")
        fmt = args.input_format or ("csv" if args.input.endswith(".csv") else "whitespace")
        g = parse_edge_list(text, fmt)
    except (OSError, UnicodeDecodeError, GraphError) as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if g.n_vertices < 3 or g.n_edges < 1:
        print("error: need at least 3 vertices and one edge", file=sys.stderr)
        return EXIT_INPUT

    seed = args.seed
    if os.environ.get("MCP_SEED"):
        try:
            seed = int(os.environ["MCP_SEED"])
        except ValueError:
            print("error: MCP_SEED must be an integer", file=sys.stderr)
            return EXIT_FLAGS
    try:
        cfg = RandomizationConfig(n_replicas=args.replicas, swap_factor=args.swap_factor,
                                  master_seed=seed, workers=args.workers,
                                  shared_replicas=not args.independent_ensembles)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    digest = input_digest(text)
    out = Path(args.out)
    transforms = TRANSFORMS if args.transform == "sweep" else (args.transform,)

    results = {}
    for tr in transforms:
        timing = {}
        t0 = time.perf_counter()
        try:
            result = find_optimal(g, tr, cfg, tie_break=args.tie_break, timings=timing)
        except NoValidPartition as exc:
            print(f"{tr}: no valid partition ({exc})")
            continue
        timing["total"] = time.perf_counter() - t0
        target = out / tr if args.transform == "sweep" else out
        _write_outputs(target, g, result, digest, args.format, None if args.no_timing else timing)
        results[tr] = result
        print(_summary_line(tr, result))

    if not results:
        return EXIT_NO_PARTITION
    if args.transform == "sweep":
        names = list(results)
        summary = {
            "schema_version": 1,
            "best_transform": max(names, key=lambda t: (results[t].optimal_z, -names.index(t))),
            "optimal": {t: {"cut": r.optimal_cut, "z": r.optimal_z} for t, r in results.items()},
            "agreement": {f"{a}|{b}": partition_agreement(results[a].optimal_partition,
                                                          results[b].optimal_partition)
                          for i, a in enumerate(names) for b in names[i + 1:]},
        }
        out.mkdir(parents=True, exist_ok=True)
        (out / "sweep.json").write_text(json.dumps(summary, indent=2) + "\n")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "detect":
        return run_detect(args)
    return EXIT_FLAGS


if __name__ == "__main__":
    sys.exit(main())
