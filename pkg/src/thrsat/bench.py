"""Benchmark harness: run solvers on generated suites and report counters.

Records come out as comma-separated lines so the output can be piped into
any spreadsheet or plotting tool.  The headline column is the empirical
exponent log2(total basic operations) / n: a full cube scan sits at 1.0 and
anything the restriction pipeline saves shows up as a smaller value.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

from .counters import WorkCounters
from .oracle import GenSpec, generate
from .sparse_sat import solve
from .splitlist import solve_ilp
from .symsat import solve_symmetric

CSV_HEADER = ("instance,n,c,solver,verdict,wall_time_ns,assignments,vectors,"
              "comparisons,guesses,eq_solves,empirical_exponent")


def empirical_exponent(total_ops: int, n: int) -> float:
    return math.log2(max(total_ops, 1)) / max(n, 1)


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark run; one CSV row."""

    instance: str
    n: int
    c: int
    solver: str
    verdict: str
    wall_time_ns: int
    assignments: int
    vectors: int
    comparisons: int
    guesses: int
    eq_solves: int
    empirical_exponent: float

    def __post_init__(self):
        for field_name in ("wall_time_ns", "assignments", "vectors",
                           "comparisons", "guesses", "eq_solves"):
            if getattr(self, field_name) < 0:
                raise ValueError(f"{field_name} must be nonnegative")
        if not math.isfinite(self.empirical_exponent):
            raise ValueError("empirical exponent must be finite")

    def to_csv(self) -> str:
        return (f"{self.instance},{self.n},{self.c},{self.solver},"
                f"{self.verdict},{self.wall_time_ns},{self.assignments},"
                f"{self.vectors},{self.comparisons},{self.guesses},"
                f"{self.eq_solves},{self.empirical_exponent:.6f}")


def _record(instance: str, n: int, c: int, solver: str, satisfiable: bool,
            elapsed_ns: int, cnt: WorkCounters) -> BenchRecord:
    return BenchRecord(
        instance=instance, n=n, c=c, solver=solver,
        verdict="SAT" if satisfiable else "UNSAT",
        wall_time_ns=elapsed_ns,
        assignments=cnt.assignments, vectors=cnt.vectors,
        comparisons=cnt.comparisons, guesses=cnt.guesses,
        eq_solves=cnt.eq_solves,
        empirical_exponent=empirical_exponent(cnt.total(), n),
    )


def _timed(fn):
    start = time.perf_counter_ns()
    result = fn()
    return result, time.perf_counter_ns() - start


def bench_circuits(count: int, n: int, c: int, *, seed: int = 0,
                   fan_in: Optional[int] = None,
                   weight_bound: int = 8,
                   force_restriction: bool = False,
                   threads: int = 1) -> list[BenchRecord]:
    """Threshold-circuit suite through the restriction solver."""
    out = []
    dist = "fixed_fanin" if fan_in is not None else "uniform_fanin"
    for i in range(count):
        spec = GenSpec(kind="threshold_circuit", n=n, c=c, seed=seed + i,
                       weight_bound=weight_bound, distribution=dist,
                       fan_in=fan_in)
        circuit = generate(spec)
        cnt = WorkCounters()
        outcome, elapsed = _timed(lambda: solve(
            circuit, seed=seed + i, force_restriction=force_restriction,
            threads=threads, counters=cnt))
        out.append(_record(f"tc-{n}-{c}-{seed + i}", n, c, "solve",
                           outcome.satisfiable, elapsed, cnt))
    return out


def bench_symmetric(count: int, n: int, c: int, *, seed: int = 0,
                    weight_bound: int = 3,
                    force_restriction: bool = False) -> list[BenchRecord]:
    """Symmetric-circuit suite through the value-guessing solver."""
    out = []
    for i in range(count):
        spec = GenSpec(kind="symmetric_circuit", n=n, c=c, seed=seed + i,
                       weight_bound=weight_bound)
        circuit = generate(spec)
        cnt = WorkCounters()
        outcome, elapsed = _timed(lambda: solve_symmetric(
            circuit, seed=seed + i, force_restriction=force_restriction,
            counters=cnt))
        out.append(_record(f"sc-{n}-{c}-{seed + i}", n, c, "solve_symmetric",
                           outcome.satisfiable, elapsed, cnt))
    return out


def bench_ilp(count: int, n: int, rows: int, *, arity: int = 2,
              seed: int = 0, weight_bound: int = 8) -> list[BenchRecord]:
    """Constraint-system suite through the split-and-list solver."""
    out = []
    for i in range(count):
        spec = GenSpec(kind="ilp", n=n, rows=rows, arity=arity, seed=seed + i,
                       weight_bound=weight_bound)
        system = generate(spec)
        cnt = WorkCounters()
        (witness, _), elapsed = _timed(lambda: solve_ilp(system, counters=cnt))
        out.append(_record(f"ilp-{n}-{rows}-{seed + i}", n, 0, "solve_ilp",
                           witness is not None, elapsed, cnt))
    return out


def bench_speedup(count: int = 3, *, seed: int = 0,
                  n: int = 24, fan_in: int = 3) -> list[BenchRecord]:
    """The headline configuration: density one, fan-in three, n = 24.

    On these instances the full cube has 2^24 points, so any empirical
    exponent below 1.0 is measured savings.
    """
    return bench_circuits(count, n, 1, seed=seed, fan_in=fan_in)


def format_table(records: list[BenchRecord]) -> str:
    return "\n".join([CSV_HEADER] + [r.to_csv() for r in records]) + "\n"
