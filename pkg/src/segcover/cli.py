"""Command-line front end: solve single instances, generate synthetic ones,
and run benchmark sweeps emitting CSV or JSON records.

Exit codes: 0 success, 2 malformed instance file, 3 usage error.
``SEGCOVER_THREADS`` provides the default for ``--threads``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Cover, Instance, cover_is_feasible
from .grasp import GraspParams, grasp_solve
from .grasp_su import SuParams, grasp_su_solve, rpd, rpd_star
from .greedy import greedy_solve
from .io import ParseError, emit_results_csv, parse_auto, parse_rail, parse_scp
from .io import GeneratorConfig, generate_segmentable, write_scp
from .preprocess import ReductionReport, reduce

EXIT_OK = 0
EXIT_PARSE_ERROR = 2
EXIT_USAGE_ERROR = 3

ALGORITHMS = ("greedy", "grasp", "par-grasp", "grasp-uf", "grasp-mst")


@dataclass
class RunRecord:
    """One benchmark cell; ``rpd`` is present iff ``bks`` is."""

    instance: str
    algorithm: str
    seed: int
    threads: int
    cardinality: Optional[int] = None
    bks: Optional[int] = None
    rpd: Optional[float] = None
    rpd_star: Optional[float] = None
    preprocess_ms: float = 0.0
    segment_ms: float = 0.0
    solve_ms: float = 0.0
    merge_ms: float = 0.0
    wall_ms: float = 0.0
    error: str = ""


class _Parser(argparse.ArgumentParser):
    """argparse flavour whose usage errors exit with code 3, not 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    return int(os.environ.get("SEGCOVER_THREADS", "1"))


def _parse_file(path: Path, fmt: str, rail_layout: str) -> Instance:
    data = path.read_bytes()
    if fmt == "scp":
        return parse_scp(data)
    if fmt == "rail":
        return parse_rail(data, layout=rail_layout)
    return parse_auto(data)


def _solve_reduced(
    work: Instance,
    algorithm: str,
    params: GraspParams,
    threads: int,
    phase: Dict[str, float],
) -> Cover:
    if work.n == 0:
        return Cover.empty(0)
    if algorithm == "greedy":
        return greedy_solve(work)
    if algorithm in ("grasp", "par-grasp"):
        return grasp_solve(work, params)
    source = "union-find" if algorithm == "grasp-uf" else "mst-bipartition"
    su = SuParams(grasp=params, threads=threads, segmentation_source=source)
    return grasp_su_solve(work, su, phase_times=phase)


def run_algorithm(
    inst: Instance,
    name: str,
    algorithm: str,
    *,
    iterations: int = 300,
    max_rm: float = 0.5,
    seed: int = 0,
    threads: int = 1,
    restarts: int = 1,
    bks: Optional[int] = None,
    preprocess: bool = True,
    fixpoint_reduce: bool = False,
    greedy_baseline: Optional[int] = None,
) -> Tuple[RunRecord, Cover]:
    """Solve with independent restarts, validate, and build a run record."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")

    wall_start = time.perf_counter()
    report: Optional[ReductionReport] = None
    t0 = time.perf_counter()
    if preprocess:
        report = reduce(inst, fixpoint=fixpoint_reduce)
        work = report.residual
    else:
        work = inst
    preprocess_ms = (time.perf_counter() - t0) * 1e3

    if algorithm == "greedy":
        restarts = 1  # deterministic; extra restarts change nothing

    best_cover: Optional[Cover] = None
    best_seed = seed
    phase_sums = {"segment_ms": 0.0, "solve_ms": 0.0, "merge_ms": 0.0}
    for k in range(restarts):
        run_seed = seed + k
        params = GraspParams(num_iter=iterations, max_rm=max_rm, seed=run_seed)
        phase: Dict[str, float] = {}
        t1 = time.perf_counter()
        cover = _solve_reduced(work, algorithm, params, threads, phase)
        elapsed_ms = (time.perf_counter() - t1) * 1e3
        if phase:
            for key in phase_sums:
                phase_sums[key] += phase.get(key, 0.0)
        else:
            phase_sums["solve_ms"] += elapsed_ms
        full = report.lift_cover(cover) if report is not None else cover
        if not cover_is_feasible(full, inst):
            raise RuntimeError(f"{algorithm} produced an infeasible cover on {name}")
        if best_cover is None or len(full) < len(best_cover):
            best_cover = full
            best_seed = run_seed

    wall_ms = (time.perf_counter() - wall_start) * 1e3
    cardinality = len(best_cover)
    record = RunRecord(
        instance=name,
        algorithm=algorithm,
        seed=best_seed,
        threads=threads,
        cardinality=cardinality,
        bks=bks,
        rpd=rpd(cardinality, bks) if bks is not None else None,
        rpd_star=(
            rpd_star(cardinality, greedy_baseline)
            if greedy_baseline is not None
            else None
        ),
        preprocess_ms=preprocess_ms,
        segment_ms=phase_sums["segment_ms"],
        solve_ms=phase_sums["solve_ms"],
        merge_ms=phase_sums["merge_ms"],
        wall_ms=wall_ms,
    )
    return record, best_cover


def _emit(records: Sequence[RunRecord], output: str, out=None) -> None:
    out = out if out is not None else sys.stdout
    if output == "csv":
        out.write(emit_results_csv(records).decode())
    else:
        for record in records:
            out.write(json.dumps(asdict(record)) + "\n")


def _cmd_solve(args: argparse.Namespace) -> int:
    path = Path(args.input)
    if not path.is_file():
        raise ValueError(f"input file not found: {path}")
    inst = _parse_file(path, args.format, args.rail_layout)
    record, _ = run_algorithm(
        inst,
        path.name,
        args.algorithm,
        iterations=args.iterations,
        max_rm=args.max_rm,
        seed=args.seed,
        threads=args.threads,
        restarts=args.restarts,
        bks=args.bks,
        preprocess=not args.no_preprocess,
        fixpoint_reduce=args.fixpoint_reduce,
    )
    _emit([record], args.output)
    return EXIT_OK


def _cmd_generate(args: argparse.Namespace) -> int:
    cfg = GeneratorConfig(
        n=args.n, m=args.m, groups=args.groups, density=args.density, seed=args.seed
    )
    inst = generate_segmentable(cfg)
    data = write_scp(inst)
    if args.out == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(args.out).write_bytes(data)
    return EXIT_OK


def _read_manifest(path: Path) -> List[Dict[str, str]]:
    """Lines of ``instance-path [key=value ...]``; '#' starts a comment."""
    entries = []
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        entry = {"path": tokens[0]}
        for token in tokens[1:]:
            if "=" not in token:
                raise ValueError(f"bad manifest token {token!r} in {path}")
            key, value = token.split("=", 1)
            entry[key] = value
        entries.append(entry)
    return entries


def _cmd_bench(args: argparse.Namespace) -> int:
    manifest_path = Path(args.manifest)
    if not manifest_path.is_file():
        raise ValueError(f"manifest file not found: {manifest_path}")
    entries = _read_manifest(manifest_path)
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algorithm!r} in --algorithms")
    thread_counts = [int(t) for t in args.threads.split(",") if t.strip()]
    if not thread_counts:
        raise ValueError("--threads needs at least one value")

    records: List[RunRecord] = []
    for entry in entries:
        inst_path = Path(entry["path"])
        if not inst_path.is_absolute():
            inst_path = manifest_path.parent / inst_path
        name = entry.get("name", inst_path.name)
        bks = int(entry["bks"]) if "bks" in entry else None
        fmt = entry.get("format", args.format)
        try:
            inst = _parse_file(inst_path, fmt, args.rail_layout)
        except (OSError, ParseError) as exc:
            for algorithm in algorithms:
                for threads in thread_counts:
                    records.append(
                        RunRecord(
                            instance=name,
                            algorithm=algorithm,
                            seed=args.seed,
                            threads=threads,
                            error=str(exc),
                        )
                    )
            print(f"warning: skipping {name}: {exc}", file=sys.stderr)
            continue
        baseline_record, _ = run_algorithm(
            inst,
            name,
            "greedy",
            seed=args.seed,
            preprocess=not args.no_preprocess,
            fixpoint_reduce=args.fixpoint_reduce,
        )
        baseline = baseline_record.cardinality
        for algorithm in algorithms:
            for threads in thread_counts:
                record, _ = run_algorithm(
                    inst,
                    name,
                    algorithm,
                    iterations=args.iterations,
                    max_rm=args.max_rm,
                    seed=args.seed,
                    threads=threads,
                    restarts=args.restarts,
                    bks=bks,
                    preprocess=not args.no_preprocess,
                    fixpoint_reduce=args.fixpoint_reduce,
                    greedy_baseline=baseline,
                )
                records.append(record)
    _emit(records, args.output)
    return EXIT_OK


def _add_reduce_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--no-preprocess", action="store_true", help="solve the raw instance"
    )
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--one-pass-reduce",
        action="store_true",
        help="single forcing+dominance pass (the default reduction)",
    )
    group.add_argument(
        "--fixpoint-reduce",
        action="store_true",
        help="alternate forcing and residual-set dominance until stable",
    )


def _add_common_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--iterations", type=int, default=300)
    parser.add_argument("--max-rm", type=float, default=0.5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=1)
    parser.add_argument(
        "--output", choices=("csv", "json"), default="csv", help="record format"
    )
    parser.add_argument(
        "--format", choices=("scp", "rail", "auto"), default="auto",
        help="instance file format",
    )
    parser.add_argument(
        "--rail-layout", choices=("cost-first", "count-first"), default="cost-first",
        help="column record layout for rail files",
    )
    _add_reduce_flags(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="segcover", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[], help="solve one instance file")
    solve.add_argument("--input", required=True)
    solve.add_argument("--algorithm", choices=ALGORITHMS, default="grasp")
    solve.add_argument("--threads", type=int, default=_default_threads())
    solve.add_argument("--bks", type=int, default=None)
    _add_common_solver_flags(solve)
    solve.set_defaults(func=_cmd_solve)

    generate = sub.add_parser("generate", help="write a synthetic instance")
    generate.add_argument("--n", type=int, required=True)
    generate.add_argument("--m", type=int, required=True)
    generate.add_argument("--groups", type=int, required=True)
    generate.add_argument("--density", type=float, default=0.05)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--out", default="-", help="output path, '-' for stdout")
    generate.set_defaults(func=_cmd_generate)

    bench = sub.add_parser("bench", help="sweep algorithms over a manifest")
    bench.add_argument("--manifest", required=True)
    bench.add_argument(
        "--algorithms", default="greedy,grasp-uf", help="comma-separated tags"
    )
    bench.add_argument(
        "--threads", default=str(_default_threads()),
        help="comma-separated worker counts",
    )
    _add_common_solver_flags(bench)
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"segcover: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except (ValueError, OSError) as exc:
        print(f"segcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
