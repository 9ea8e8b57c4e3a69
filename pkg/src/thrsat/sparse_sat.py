"""Satisfiability of sparse depth-two threshold circuits.

The solver samples a random restriction that leaves each variable free with
a probability tuned to the circuit's wire density, then enumerates all
assignments to the non-free variables.  Each branch folds into a residual
circuit over the free variables; when the restriction worked as intended the
residual has few gates and is solved by guessing the gate outputs and running
the split-and-list search on the resulting linear system.  Branches whose
residual stays large fall back to exhaustive scanning, so the solver is
always exact.
"""
from __future__ import annotations

import hashlib
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from random import Random
from threading import Event
from typing import Collection, Iterable, Optional, Union

import numpy as np

from .counters import WorkCounters
from .errors import InputError, ResourceGuardError
from .model import (Assignment, Restriction, ThresholdCircuit, WireStats,
                    evaluate, evaluate_batch, simplify, wire_stats)
from .splitlist import IneqSystem, Rel, Row, solve_ilp

DEFAULT_DELTA = Fraction(1, 48)
MAX_GUESS_GATES = 60
MAX_BRANCH_BITS = 30
_SCAN_CHUNK_BITS = 16


@dataclass(frozen=True)
class RestrictionParams:
    """Knobs of the random restriction, all derived from the wire density c.

    delta is the accuracy parameter, epsilon the wire-mass budget of the
    selected fan-in window, a the window's ratio, k its lower edge, and p the
    probability that a variable stays free.
    """

    c: Fraction
    delta: Fraction
    epsilon: Fraction
    a: Fraction
    k: Fraction
    p: Fraction

    def __post_init__(self):
        for name in ("c", "delta", "epsilon", "a", "k", "p"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not 0 < self.delta < 1:
            raise InputError("delta must lie strictly between 0 and 1")
        if self.k < 1:
            raise InputError("fan-in window edge k must be at least 1")
        if not 0 < self.p <= 1:
            raise InputError("free probability p must lie in (0, 1]")


def fanin_separation(stats: WireStats, n: int, epsilon: Fraction,
                     a: Fraction) -> Fraction:
    """Smallest k in the geometric grid 1, a, a^2, ... whose fan-in window
    (k, ka] carries at most epsilon*n wires.

    The windows are disjoint, so fewer than (total/n)/epsilon of them can
    each exceed the budget and the scan below always stops; in practice it
    stops much earlier, as soon as k passes the largest fan-in.
    """
    if n < 1:
        raise InputError("n must be positive")
    a = Fraction(a)
    epsilon = Fraction(epsilon)
    if a <= 1:
        return Fraction(1)
    budget = epsilon * n
    index_cap = Fraction(stats.total, n) / epsilon if epsilon > 0 else Fraction(0)
    k = Fraction(1)
    for i in itertools.count():
        assert i <= index_cap + 1, "fan-in window scan exceeded its index bound"
        mass = sum(f * cnt for f, cnt in stats.fanins.items() if k < f <= k * a)
        if mass <= budget:
            return k
        k *= a


def restriction_params(circuit: ThresholdCircuit,
                       delta: Fraction = DEFAULT_DELTA) -> RestrictionParams:
    """Derive the restriction parameters from the circuit's wire density."""
    n = circuit.n_vars
    if n < 1:
        raise InputError("circuit must have at least one variable")
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise InputError("delta must lie strictly between 0 and 1")
    wires = circuit.wires
    if wires == 0:
        # No bottom wires at all: every variable can stay free.
        return RestrictionParams(c=Fraction(0), delta=delta, epsilon=Fraction(0),
                                 a=Fraction(1), k=Fraction(1), p=Fraction(1))
    c = Fraction(wires, n)
    epsilon = delta * delta / c
    a = (c * c) / (delta * delta)
    if a <= 1:
        k = Fraction(1)
    else:
        k = fanin_separation(wire_stats(circuit), n, epsilon, a)
    p = min(Fraction(1), delta / (c * k))
    return RestrictionParams(c=c, delta=delta, epsilon=epsilon, a=a, k=k, p=p)


def draw_restriction(circuit: ThresholdCircuit, p: Fraction,
                     rng: Random) -> Restriction:
    """One unbiased draw: each variable stays free with probability p.

    Assigned slots are filled with 0; the solver overwrites them branch by
    branch, so only the free set matters here.
    """
    free = frozenset(i for i in range(circuit.n_vars) if rng.random() < p)
    assigned = {i: 0 for i in range(circuit.n_vars) if i not in free}
    return Restriction(assigned=assigned, free=free)


def exceptional_gates(circuit: ThresholdCircuit,
                      free: Collection[int]) -> tuple[int, ...]:
    """Indices of bottom gates with at least two free inputs.

    These are exactly the gates that survive folding, so their count is the
    residual gate count of every branch under the restriction.
    """
    fs = frozenset(free)
    return tuple(j for j, g in enumerate(circuit.bottom)
                 if sum(1 for i, _ in g.inputs if i in fs) >= 2)


def sample_restriction(circuit: ThresholdCircuit, params: RestrictionParams,
                       rng: Random, max_draws: int = 10
                       ) -> tuple[Restriction, int]:
    """Draw restrictions until the exceptional-gate count is within twice its
    expectation bound (3*delta*p*n); after max_draws, keep the best draw.

    Returns the restriction together with its exceptional-gate count.
    """
    n = circuit.n_vars
    cap = 2 * 3 * params.delta * params.p * n
    best: Optional[Restriction] = None
    best_exc = -1
    for _ in range(max_draws):
        r = draw_restriction(circuit, params.p, rng)
        exc = len(exceptional_gates(circuit, r.free))
        if best is None or exc < best_exc:
            best, best_exc = r, exc
        if exc <= cap:
            return r, exc
    assert best is not None
    return best, best_exc


def instance_seed(circuit) -> int:
    """Deterministic seed derived from the instance itself, used when no seed
    is given so repeated runs and benchmarks are reproducible."""
    digest = hashlib.blake2b(repr(circuit).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def ilp_for_guess(circuit: ThresholdCircuit,
                  guess: Union[int, Iterable[int]]) -> IneqSystem:
    """Linear system stating that exactly the guessed gates fire and the top
    gate accepts.  guess is a bitmask or a collection of gate indices."""
    if isinstance(guess, int):
        fired = {j for j in range(len(circuit.bottom)) if guess >> j & 1}
    else:
        fired = set(guess)
    for j in fired:
        if not 0 <= j < len(circuit.bottom):
            raise InputError(f"guess names gate {j}, circuit has {len(circuit.bottom)}")
    rows = []
    for j, gate in enumerate(circuit.bottom):
        if j in fired:
            rows.append(Row(gate.inputs, Rel.GE, gate.threshold))
        else:
            rows.append(Row(gate.inputs, Rel.LT, gate.threshold))
    fired_weight = sum(circuit.top_gate_weights[j] for j in fired)
    rows.append(Row(circuit.direct_wires, Rel.GE,
                    circuit.top_threshold - fired_weight))
    return IneqSystem(circuit.n_vars, tuple(rows), 2)


def sat_few_gates(circuit: ThresholdCircuit, *,
                  counters: Optional[WorkCounters] = None,
                  max_gates: int = MAX_GUESS_GATES,
                  native_strict: bool = False) -> Optional[Assignment]:
    """Decide satisfiability by guessing which bottom gates fire.

    Each of the 2^m guesses turns the circuit into a linear system handed to
    the split-and-list search.  Intended for circuits with few gates; the
    guard refuses anything past max_gates.
    """
    cnt = counters if counters is not None else WorkCounters()
    m = len(circuit.bottom)
    if m > max_gates:
        raise ResourceGuardError(f"{m} gates exceeds the {max_gates}-gate guess guard")
    for mask in range(1 << m):
        cnt.guesses += 1
        system = ilp_for_guess(circuit, mask)
        witness, _ = solve_ilp(system, native_strict=native_strict, counters=cnt)
        if witness is not None:
            assert evaluate(circuit, witness), "gate guess produced a bad witness"
            return witness
    return None


def _vector_scan(circuit, fixed: dict[int, int],
                 scan_vars: tuple[int, ...], cnt: WorkCounters,
                 stop: Optional[Event] = None,
                 batch_eval=evaluate_batch) -> Optional[tuple[int, ...]]:
    """Scan all assignments to scan_vars (fixed vars held constant) in
    numpy chunks, stopping at the first satisfying row.

    Rows are visited in lexicographic order of the scan variables, so the
    returned assignment is the lexicographically first one.  cnt.assignments
    grows by exactly the number of rows inspected.  batch_eval lets circuit
    families with their own semantics reuse the scan.
    """
    n = circuit.n_vars
    s = len(scan_vars)
    total = 1 << s
    chunk = 1 << min(_SCAN_CHUNK_BITS, s)
    template = np.zeros(n, dtype=np.uint8)
    for i, v in fixed.items():
        template[i] = v
    for base in range(0, total, chunk):
        if stop is not None and stop.is_set():
            return None
        width = min(chunk, total - base)
        idx = np.arange(base, base + width, dtype=np.uint64)
        block = np.broadcast_to(template, (width, n)).copy()
        for pos, var in enumerate(scan_vars):
            block[:, var] = ((idx >> np.uint64(s - 1 - pos)) & np.uint64(1)).astype(np.uint8)
        verdicts = batch_eval(circuit, block)
        if verdicts.any():
            hit = int(np.argmax(verdicts))
            cnt.assignments += hit + 1
            return tuple(int(v) for v in block[hit])
        cnt.assignments += width
    return None


@dataclass
class SolveOutcome:
    """Result of one solver run.

    branches is the size of the enumerated branch space, 2^(n - |free|);
    fallback_branches counts the branches that resorted to exhaustive
    scanning instead of gate guessing.
    """

    satisfiable: bool
    witness: Optional[Assignment]
    branches: int
    fallback_branches: int
    restriction: Optional[Restriction]
    params: Optional[RestrictionParams]
    counters: WorkCounters = field(default_factory=WorkCounters)


def _scan_outcome(circuit: ThresholdCircuit, cnt: WorkCounters,
                  restriction: Optional[Restriction],
                  params: Optional[RestrictionParams]) -> SolveOutcome:
    full = _vector_scan(circuit, {}, tuple(range(circuit.n_vars)), cnt)
    witness = Assignment(full) if full is not None else None
    if witness is not None:
        assert evaluate(circuit, witness)
    return SolveOutcome(witness is not None, witness, 1 << circuit.n_vars, 0,
                        restriction, params, cnt)


def solve(circuit: ThresholdCircuit, *, seed: Optional[int] = None,
          delta: Fraction = DEFAULT_DELTA,
          params: Optional[RestrictionParams] = None,
          p: Optional[Fraction] = None,
          force_restriction: bool = False,
          fast_path_max_n: int = 20,
          few_gates_budget: Optional[float] = None,
          threads: int = 1,
          max_branch_bits: int = MAX_BRANCH_BITS,
          counters: Optional[WorkCounters] = None) -> SolveOutcome:
    """Decide satisfiability of a depth-two threshold circuit, exactly.

    Small circuits are scanned outright; past fast_path_max_n variables the
    restriction pipeline takes over.  params and p override the derived
    restriction knobs, few_gates_budget overrides the residual gate budget
    (default 3*delta*|free|), and threads spreads the branch loop over a
    thread pool.  The returned witness, if any, is verified before return.
    """
    cnt = counters if counters is not None else WorkCounters()
    n = circuit.n_vars
    if n < 1:
        raise InputError("circuit must have at least one variable")
    if threads < 1:
        raise InputError("threads must be at least 1")
    if n <= fast_path_max_n and not force_restriction:
        return _scan_outcome(circuit, cnt, None, None)

    rng = Random(seed if seed is not None else instance_seed(circuit))
    if params is None:
        params = restriction_params(circuit, delta)
    if p is not None:
        params = replace(params, p=Fraction(p))
    restriction, _ = sample_restriction(circuit, params, rng)
    free = restriction.free
    free_order = restriction.free_order
    assigned_vars = tuple(sorted(set(range(n)) - free))
    bits = len(assigned_vars)
    if bits > max_branch_bits:
        raise ResourceGuardError(
            f"2^{bits} branches exceeds the 2^{max_branch_bits} branch guard")
    total = 1 << bits

    if not free:
        # Degenerate restriction: every branch is a full assignment, which is
        # exactly one chunked scan of the cube.
        return _scan_outcome(circuit, cnt, restriction, params)

    budget = few_gates_budget if few_gates_budget is not None \
        else 3 * params.delta * len(free)

    def run_range(lo: int, hi: int, wcnt: WorkCounters,
                  stop: Event) -> tuple[Optional[tuple[int, ...]], int]:
        fallbacks = 0
        for b in range(lo, hi):
            if stop.is_set():
                return None, fallbacks
            wcnt.assignments += 1
            assigned = {var: (b >> (bits - 1 - pos)) & 1
                        for pos, var in enumerate(assigned_vars)}
            branch = Restriction(assigned=assigned, free=free)
            residual = simplify(circuit, branch)
            if len(residual.bottom) <= budget:
                found = sat_few_gates(residual, counters=wcnt)
                if found is not None:
                    return branch.combine(found.values), fallbacks
            else:
                fallbacks += 1
                full = _vector_scan(circuit, assigned, free_order, wcnt, stop)
                if full is not None:
                    return full, fallbacks
        return None, fallbacks

    witness_values: Optional[tuple[int, ...]] = None
    fallback_branches = 0
    stop = Event()
    if threads == 1:
        witness_values, fallback_branches = run_range(0, total, cnt, stop)
    else:
        step = -(-total // threads)
        parts = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        worker_counts = [WorkCounters() for _ in parts]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            def job(part, wcnt):
                result = run_range(part[0], part[1], wcnt, stop)
                if result[0] is not None:
                    stop.set()
                return result
            futures = [pool.submit(job, part, wcnt)
                       for part, wcnt in zip(parts, worker_counts)]
            for fut in futures:
                values, fallbacks = fut.result()
                fallback_branches += fallbacks
                if values is not None and witness_values is None:
                    witness_values = values
        for wcnt in worker_counts:
            cnt.merge(wcnt)

    witness = Assignment(witness_values) if witness_values is not None else None
    if witness is not None:
        assert evaluate(circuit, witness), "solver produced a bad witness"
    return SolveOutcome(witness is not None, witness, total, fallback_branches,
                        restriction, params, cnt)
