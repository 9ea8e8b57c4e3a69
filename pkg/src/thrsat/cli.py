"""Command-line front end.

Four subcommands: `solve` runs the real solvers, `oracle` runs the
brute-force reference deciders, `gen` prints a generated instance, and
`bench` prints a CSV counter table.  Verdicts use SAT-solver exit codes
(10 satisfiable, 20 unsatisfiable, 1 for any error); the witness goes to
standard output and the work counters to standard error, so pipelines can
consume the verdict without scraping diagnostics.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import bench as bench_mod
from .counters import WorkCounters
from .errors import InputError, ParseError, ResourceGuardError
from .formats import (emit_circuit, emit_ilp, emit_symmetric, emit_witness,
                      parse_circuit, parse_ilp, parse_symmetric)
from .model import Assignment
from .oracle import GenSpec, brute_circuit_sat, brute_ilp, generate
from .sparse_sat import solve
from .splitlist import solve_ilp
from .symsat import solve_symmetric

SAT_EXIT = 10
UNSAT_EXIT = 20
ERROR_EXIT = 1


def _print_verdict(witness: Optional[Assignment]) -> int:
    if witness is None:
        print("UNSAT")
        return UNSAT_EXIT
    print(f"SAT {emit_witness(witness)}")
    return SAT_EXIT


def _print_counters(cnt: WorkCounters) -> None:
    print(f"counters: assignments={cnt.assignments} vectors={cnt.vectors} "
          f"comparisons={cnt.comparisons} guesses={cnt.guesses} "
          f"eq_solves={cnt.eq_solves} total={cnt.total()}", file=sys.stderr)


def _run_instance(args, use_oracle: bool) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    cnt = WorkCounters()
    if args.kind == "circuit":
        circuit = parse_circuit(text)
        if use_oracle:
            witness = brute_circuit_sat(circuit, counters=cnt)
        else:
            kwargs = {}
            if args.max_assigned is not None:
                kwargs["max_branch_bits"] = args.max_assigned
            outcome = solve(circuit, seed=args.seed,
                            force_restriction=args.force_restriction,
                            threads=args.threads, counters=cnt, **kwargs)
            witness = outcome.witness
    elif args.kind == "symmetric":
        circuit = parse_symmetric(text)
        if use_oracle:
            witness = brute_circuit_sat(circuit, counters=cnt)
        else:
            kwargs = {}
            if args.max_assigned is not None:
                kwargs["max_branch_bits"] = args.max_assigned
            outcome = solve_symmetric(circuit, seed=args.seed,
                                      force_restriction=args.force_restriction,
                                      counters=cnt, **kwargs)
            witness = outcome.witness
    else:
        system = parse_ilp(text)
        if use_oracle:
            witness = brute_ilp(system, counters=cnt)
        else:
            kwargs = {}
            if args.max_assigned is not None:
                kwargs["max_half_vars"] = args.max_assigned
            witness, _ = solve_ilp(system, counters=cnt, **kwargs)
    code = _print_verdict(witness)
    _print_counters(cnt)
    return code


def _cmd_solve(args) -> int:
    return _run_instance(args, use_oracle=False)


def _cmd_oracle(args) -> int:
    return _run_instance(args, use_oracle=True)


_GEN_KINDS = {"circuit": "threshold_circuit",
              "symmetric": "symmetric_circuit",
              "ilp": "ilp"}


def _cmd_gen(args) -> int:
    spec = GenSpec(kind=_GEN_KINDS[args.kind], n=args.n, seed=args.seed,
                   c=args.c, rows=args.rows, weight_bound=args.weight_bound,
                   arity=args.arity, distribution=args.distribution,
                   fan_in=args.fan_in)
    instance = generate(spec)
    if args.kind == "circuit":
        sys.stdout.write(emit_circuit(instance))
    elif args.kind == "symmetric":
        sys.stdout.write(emit_symmetric(instance))
    else:
        sys.stdout.write(emit_ilp(instance))
    return 0


def _cmd_bench(args) -> int:
    if args.suite == "circuit":
        records = bench_mod.bench_circuits(
            args.count, args.n, args.c, seed=args.seed, fan_in=args.fan_in,
            force_restriction=args.force_restriction, threads=args.threads)
    elif args.suite == "symmetric":
        records = bench_mod.bench_symmetric(
            args.count, args.n, args.c, seed=args.seed,
            force_restriction=args.force_restriction)
    elif args.suite == "ilp":
        records = bench_mod.bench_ilp(args.count, args.n, args.rows,
                                      arity=args.arity, seed=args.seed)
    else:
        records = bench_mod.bench_speedup(args.count, seed=args.seed)
    sys.stdout.write(bench_mod.format_table(records))
    return 0


def _add_instance_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("kind", choices=("circuit", "symmetric", "ilp"))
    sub.add_argument("file", help="instance file")
    sub.add_argument("--seed", type=int, default=None,
                     help="restriction seed (default: derived from the instance)")
    sub.add_argument("--force-restriction", action="store_true",
                     help="skip the small-instance scan and restrict anyway")
    sub.add_argument("--max-assigned", type=int, default=None,
                     help="branch-bit guard (half-size guard for ilp)")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker threads for branch scans (circuit only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thrsat",
        description="Satisfiability for sparse depth-two threshold circuits.")
    subs = parser.add_subparsers(dest="command", required=True)

    solve_p = subs.add_parser("solve", help="run the restriction solvers")
    _add_instance_args(solve_p)
    solve_p.set_defaults(func=_cmd_solve)

    oracle_p = subs.add_parser("oracle", help="run the brute-force reference")
    _add_instance_args(oracle_p)
    oracle_p.set_defaults(func=_cmd_oracle)

    gen_p = subs.add_parser("gen", help="print a generated instance")
    gen_p.add_argument("kind", choices=("circuit", "symmetric", "ilp"))
    gen_p.add_argument("--n", type=int, required=True)
    gen_p.add_argument("--c", type=int, default=None,
                       help="wire-density budget (circuits)")
    gen_p.add_argument("--rows", type=int, default=None,
                       help="row count (ilp)")
    gen_p.add_argument("--arity", type=int, default=2)
    gen_p.add_argument("--seed", type=int, default=0)
    gen_p.add_argument("--weight-bound", type=int, default=8)
    gen_p.add_argument("--distribution", default="uniform_fanin",
                       choices=("uniform_fanin", "fixed_fanin",
                                "adversarial_pow2"))
    gen_p.add_argument("--fan-in", type=int, default=None)
    gen_p.set_defaults(func=_cmd_gen)

    bench_p = subs.add_parser("bench", help="print a CSV counter table")
    bench_p.add_argument("--suite", default="speedup",
                         choices=("circuit", "symmetric", "ilp", "speedup"))
    bench_p.add_argument("--count", type=int, default=3)
    bench_p.add_argument("--n", type=int, default=24)
    bench_p.add_argument("--c", type=int, default=1)
    bench_p.add_argument("--rows", type=int, default=8)
    bench_p.add_argument("--arity", type=int, default=2)
    bench_p.add_argument("--seed", type=int, default=0)
    bench_p.add_argument("--fan-in", type=int, default=None)
    bench_p.add_argument("--force-restriction", action="store_true")
    bench_p.add_argument("--threads", type=int, default=1)
    bench_p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError, ResourceGuardError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR_EXIT
