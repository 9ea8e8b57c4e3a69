"""Reference implementations and instance generators for the test suite.

Everything here is definitional: the brute-force deciders enumerate whole
assignment spaces (vectorized, but with no algorithmic shortcuts), so they
stay trustworthy at the small sizes the tests use.  The generators are
deterministic in their seed and produce instances with exact wire budgets.
"""
from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Optional

import numpy as np

from .counters import WorkCounters
from .errors import InputError, ResourceGuardError
from .model import Assignment, ThresholdCircuit, ThresholdGate, evaluate_batch
from .splitlist import IneqSystem, Rel, Row, verify
from .sparse_sat import _vector_scan
from .symsat import (EqRow, EqSystem, Predicate, SymmetricCircuit,
                     SymmetricGate, evaluate_symmetric_batch)
from .vecdom import DominationInstance, TaggedVector

MAX_BRUTE_VARS = 26
_CHUNK = 1 << 16


def brute_circuit_sat(circuit, *,
                      counters: Optional[WorkCounters] = None,
                      max_n: int = MAX_BRUTE_VARS) -> Optional[Assignment]:
    """Scan the full cube; returns the lexicographically first witness.

    Accepts either circuit family and dispatches on the type.
    """
    if isinstance(circuit, SymmetricCircuit):
        return brute_symmetric_sat(circuit, counters=counters, max_n=max_n)
    if circuit.n_vars > max_n:
        raise ResourceGuardError(
            f"{circuit.n_vars} variables exceeds the {max_n}-variable brute guard")
    cnt = counters if counters is not None else WorkCounters()
    full = _vector_scan(circuit, {}, tuple(range(circuit.n_vars)), cnt)
    return Assignment(full) if full is not None else None


def brute_symmetric_sat(circuit: SymmetricCircuit, *,
                        counters: Optional[WorkCounters] = None,
                        max_n: int = MAX_BRUTE_VARS) -> Optional[Assignment]:
    """Scan the full cube of a symmetric circuit, lexicographically."""
    if circuit.n_vars > max_n:
        raise ResourceGuardError(
            f"{circuit.n_vars} variables exceeds the {max_n}-variable brute guard")
    cnt = counters if counters is not None else WorkCounters()
    full = _vector_scan(circuit, {}, tuple(range(circuit.n_vars)), cnt,
                        batch_eval=evaluate_symmetric_batch)
    return Assignment(full) if full is not None else None


def enumerate_satisfying(circuit, *, max_n: int = 20) -> list[tuple[int, ...]]:
    """All satisfying assignments, in lexicographic order.

    Works for both circuit families; intended for exactness tests at small n.
    """
    batch_eval = evaluate_symmetric_batch if isinstance(circuit, SymmetricCircuit) \
        else evaluate_batch
    n = circuit.n_vars
    if n > max_n:
        raise ResourceGuardError(
            f"{n} variables exceeds the {max_n}-variable enumeration guard")
    out: list[tuple[int, ...]] = []
    total = 1 << n
    for base in range(0, total, _CHUNK):
        width = min(_CHUNK, total - base)
        idx = np.arange(base, base + width, dtype=np.uint64)
        block = np.zeros((width, n), dtype=np.uint8)
        for pos in range(n):
            block[:, pos] = ((idx >> np.uint64(n - 1 - pos)) & np.uint64(1)).astype(np.uint8)
        verdicts = batch_eval(circuit, block)
        for hit in np.flatnonzero(verdicts):
            out.append(tuple(int(v) for v in block[hit]))
    return out


def brute_ilp(system: IneqSystem, *,
              counters: Optional[WorkCounters] = None,
              max_assignments: int = 1 << MAX_BRUTE_VARS) -> Optional[Assignment]:
    """Scan all assignments of the constraint system, lexicographically."""
    n, arity = system.n_vars, system.arity
    total = arity ** n
    if total > max_assignments:
        raise ResourceGuardError(
            f"{total} assignments exceeds the {max_assignments} brute guard")
    cnt = counters if counters is not None else WorkCounters()
    for base in range(0, total, _CHUNK):
        width = min(_CHUNK, total - base)
        idx = np.arange(base, base + width, dtype=np.int64)
        block = np.zeros((width, n), dtype=np.int64)
        for pos in range(n):
            block[:, pos] = (idx // arity ** (n - 1 - pos)) % arity
        ok = np.ones(width, dtype=bool)
        for row in system.rows:
            sums = np.zeros(width, dtype=np.int64)
            for i, w in row.coeffs:
                sums += w * block[:, i]
            if row.rel is Rel.GE:
                ok &= sums >= row.rhs
            elif row.rel is Rel.GT:
                ok &= sums > row.rhs
            elif row.rel is Rel.LE:
                ok &= sums <= row.rhs
            elif row.rel is Rel.LT:
                ok &= sums < row.rhs
            else:
                ok &= sums == row.rhs
        if ok.any():
            hit = int(np.argmax(ok))
            cnt.assignments += hit + 1
            found = Assignment(tuple(int(v) for v in block[hit]), arity)
            assert verify(system, found)
            return found
        cnt.assignments += width
    return None


def brute_domination(instance: DominationInstance) -> Optional[tuple[int, int]]:
    """Check all pairs; returns the first dominating pair in (i, j) order."""
    if not instance.a_side or not instance.b_side:
        return None
    a = np.array([v.coords for v in instance.a_side], dtype=np.int64)
    b = np.array([v.coords for v in instance.b_side], dtype=np.int64)
    strict = np.array(instance.strict, dtype=bool)
    for i in range(a.shape[0]):
        ok = np.where(strict, b < a[i], b <= a[i]).all(axis=1)
        if ok.any():
            j = int(np.argmax(ok))
            return instance.a_side[i].tag, instance.b_side[j].tag
    return None


def _nonzero_weight(rng: Random, bound: int) -> int:
    return rng.randint(1, bound) * rng.choice((-1, 1))


def _achievable_threshold(rng: Random, inputs) -> int:
    lo = sum(min(w, 0) for _, w in inputs)
    hi = sum(max(w, 0) for _, w in inputs)
    return rng.randint(lo + 1, hi)


def _random_gate(rng: Random, n: int, fan_in: int, weight_bound: int) -> ThresholdGate:
    vars_ = rng.sample(range(n), fan_in)
    inputs = tuple((i, _nonzero_weight(rng, weight_bound)) for i in sorted(vars_))
    return ThresholdGate(inputs, _achievable_threshold(rng, inputs))


def _finish_circuit(rng: Random, n: int, gates: list[ThresholdGate],
                    weight_bound: int, direct_count: int) -> ThresholdCircuit:
    top_weights = tuple(_nonzero_weight(rng, weight_bound) for _ in gates)
    direct_vars = sorted(rng.sample(range(n), direct_count)) if direct_count else []
    direct = tuple((i, _nonzero_weight(rng, weight_bound)) for i in direct_vars)
    lo = sum(min(w, 0) for w in top_weights) + sum(min(w, 0) for _, w in direct)
    hi = sum(max(w, 0) for w in top_weights) + sum(max(w, 0) for _, w in direct)
    return ThresholdCircuit(n, tuple(gates), top_weights, direct,
                            rng.randint(lo + 1, hi))


def _fanin_plan(wires: int, fan_in: int) -> list[int]:
    plan = [fan_in] * (wires // fan_in)
    if wires % fan_in:
        plan.append(wires % fan_in)
    return plan


def random_fixed_fanin_circuit(n: int, wires: int, fan_in: int, seed: int, *,
                               weight_bound: int = 8,
                               direct_count: int = 0) -> ThresholdCircuit:
    """Circuit with exactly the requested bottom wires, almost all in gates of
    the given fan-in (one smaller gate absorbs the remainder)."""
    if not 1 <= fan_in <= n:
        raise InputError("fan_in must lie in 1..n")
    if wires < 1:
        raise InputError("need at least one wire")
    rng = Random(seed)
    gates = [_random_gate(rng, n, f, weight_bound) for f in _fanin_plan(wires, fan_in)]
    return _finish_circuit(rng, n, gates, weight_bound, direct_count)


def random_mixed_circuit(n: int, wires: int, seed: int, *,
                         weight_bound: int = 8,
                         direct_count: int = 0) -> ThresholdCircuit:
    """Circuit with exactly the requested bottom wires split into gates of
    random fan-ins."""
    if wires < 1:
        raise InputError("need at least one wire")
    rng = Random(seed)
    plan = []
    left = wires
    while left:
        f = rng.randint(1, min(left, n))
        plan.append(f)
        left -= f
    gates = [_random_gate(rng, n, f, weight_bound) for f in plan]
    return _finish_circuit(rng, n, gates, weight_bound, direct_count)


def random_power_circuit(n: int, levels: int, seed: int, *,
                         weight_bound: int = 8) -> ThresholdCircuit:
    """Wire-density stress instance: for each j in 1..levels there are n/2^j
    gates of fan-in 2^j, one density unit per level.  Requires 2^levels | n."""
    if levels < 1:
        raise InputError("need at least one level")
    if n % (1 << levels):
        raise InputError(f"n must be a multiple of 2^{levels}")
    rng = Random(seed)
    gates = []
    for j in range(1, levels + 1):
        gates += [_random_gate(rng, n, 1 << j, weight_bound)
                  for _ in range(n >> j)]
    return _finish_circuit(rng, n, gates, weight_bound, 0)


def _random_predicate(rng: Random, inputs) -> Predicate:
    lo = sum(min(w, 0) for _, w in inputs)
    hi = sum(max(w, 0) for _, w in inputs)
    kind = rng.choices(("ge", "eq", "mod", "set"), weights=(4, 2, 2, 2))[0]
    if kind == "ge":
        return Predicate.ge(rng.randint(lo + 1, hi))
    if kind == "eq":
        return Predicate.eq(rng.randint(lo, hi))
    if kind == "mod":
        m = rng.randint(2, 5)
        return Predicate.mod(m, rng.randint(0, m - 1))
    count = rng.randint(1, min(3, hi - lo + 1))
    return Predicate.members(rng.sample(range(lo, hi + 1), count))


def random_symmetric_circuit(n: int, wires: int, seed: int, *,
                             weight_bound: int = 8,
                             direct_count: int = 0,
                             fan_in: Optional[int] = None,
                             plan: Optional[list[int]] = None) -> SymmetricCircuit:
    """Symmetric-gate circuit with exactly the requested bottom wires and a
    mix of predicate kinds.

    Fan-ins are random by default; fan_in pins them all to one size (with one
    remainder gate), and plan pins the whole gate list explicitly.
    """
    if wires < 1:
        raise InputError("need at least one wire")
    rng = Random(seed)
    if plan is not None:
        if sum(plan) != wires:
            raise InputError("plan does not add up to the wire budget")
    elif fan_in is not None:
        if not 1 <= fan_in <= n:
            raise InputError("fan_in must lie in 1..n")
        plan = _fanin_plan(wires, fan_in)
    else:
        plan = []
        left = wires
        while left:
            f = rng.randint(1, min(left, n))
            plan.append(f)
            left -= f
    gates = []
    for f in plan:
        vars_ = sorted(rng.sample(range(n), f))
        inputs = tuple((i, _nonzero_weight(rng, weight_bound)) for i in vars_)
        gates.append(SymmetricGate(inputs, _random_predicate(rng, inputs)))
    top_weights = tuple(_nonzero_weight(rng, weight_bound) for _ in gates)
    direct_vars = sorted(rng.sample(range(n), direct_count)) if direct_count else []
    direct = tuple((i, _nonzero_weight(rng, weight_bound)) for i in direct_vars)
    top_inputs = tuple((j, w) for j, w in enumerate(top_weights)) \
        + tuple((len(top_weights) + k, w) for k, (_, w) in enumerate(direct))
    return SymmetricCircuit(n, tuple(gates), top_weights, direct,
                            _random_predicate(rng, top_inputs))


def random_ilp(n: int, rows: int, arity: int, seed: int, *,
               weight_bound: int = 8, max_row_vars: int = 4) -> IneqSystem:
    """Constraint system with random relations and reachable right-hand sides."""
    if n < 1 or rows < 0:
        raise InputError("need at least one variable and a nonnegative row count")
    rng = Random(seed)
    out = []
    for _ in range(rows):
        f = rng.randint(1, min(n, max_row_vars))
        vars_ = sorted(rng.sample(range(n), f))
        coeffs = tuple((i, _nonzero_weight(rng, weight_bound)) for i in vars_)
        lo = sum(min(w, 0) for _, w in coeffs) * (arity - 1)
        hi = sum(max(w, 0) for _, w in coeffs) * (arity - 1)
        rel = rng.choice((Rel.GE, Rel.GT, Rel.LE, Rel.LT, Rel.EQ))
        out.append(Row(coeffs, rel, rng.randint(lo, hi)))
    return IneqSystem(n, tuple(out), arity)


def random_domination(n_a: int, n_b: int, d: int, seed: int, *,
                      coord_bound: int = 64,
                      strict_fraction: float = 0.0) -> DominationInstance:
    """Random tagged-vector instance; tags are list positions."""
    if d < 1:
        raise InputError("need at least one coordinate")
    rng = Random(seed)
    strict = tuple(rng.random() < strict_fraction for _ in range(d))
    a = tuple(TaggedVector(tuple(rng.randint(-coord_bound, coord_bound)
                                 for _ in range(d)), i) for i in range(n_a))
    b = tuple(TaggedVector(tuple(rng.randint(-coord_bound, coord_bound)
                                 for _ in range(d)), j) for j in range(n_b))
    return DominationInstance(a, b, strict)


def random_eq_system(n: int, rows: int, seed: int, *,
                     weight_bound: int = 8, max_row_vars: int = 4) -> EqSystem:
    """Random exact linear system over Boolean variables.

    Most rows get a target that some assignment of their own variables can
    reach, so the joint system is feasible often enough to exercise both
    answers.
    """
    if n < 1 or rows < 0:
        raise InputError("need at least one variable and a nonnegative row count")
    rng = Random(seed)
    out = []
    for _ in range(rows):
        f = rng.randint(1, min(n, max_row_vars))
        vars_ = sorted(rng.sample(range(n), f))
        coeffs = tuple((i, _nonzero_weight(rng, weight_bound)) for i in vars_)
        if rng.random() < 0.7:
            target = sum(w for _, w in coeffs if rng.random() < 0.5)
        else:
            lo = sum(min(w, 0) for _, w in coeffs)
            hi = sum(max(w, 0) for _, w in coeffs)
            target = rng.randint(lo, hi)
        out.append(EqRow(coeffs, target))
    return EqSystem(n, tuple(out))


@dataclass(frozen=True)
class GenSpec:
    """Declarative description of a generated instance.

    kind picks the instance family; n is the variable count (list length per
    side, for vectors).  c is the wire budget per variable for circuits, and
    rows is the row count for constraint systems (the dimension, for
    vectors).  distribution shapes circuit fan-ins: uniform_fanin draws them
    at random, fixed_fanin pins them to fan_in, and adversarial_pow2 builds
    one density unit of weight-one gates at every fan-in 2^j for j in 1..c.
    """

    kind: str
    n: int
    seed: int = 0
    c: Optional[int] = None
    rows: Optional[int] = None
    weight_bound: int = 8
    arity: int = 2
    distribution: str = "uniform_fanin"
    fan_in: Optional[int] = None

    _KINDS = ("threshold_circuit", "symmetric_circuit", "ilp", "eq_system",
              "vectors")
    _DISTRIBUTIONS = ("uniform_fanin", "fixed_fanin", "adversarial_pow2")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise InputError(f"unknown instance kind {self.kind!r}")
        if self.distribution not in self._DISTRIBUTIONS:
            raise InputError(f"unknown distribution {self.distribution!r}")
        if self.n < 1:
            raise InputError("n must be positive")
        if self.distribution == "fixed_fanin" and self.fan_in is None:
            raise InputError("fixed_fanin needs fan_in")


def generate(spec: GenSpec):
    """Build the instance a GenSpec describes; same spec, same instance."""
    if spec.kind in ("threshold_circuit", "symmetric_circuit"):
        if spec.c is None or spec.c < 1:
            raise InputError("circuit generation needs a positive wire budget c")
        wires = spec.c * spec.n
        if spec.distribution == "adversarial_pow2":
            if spec.n % (1 << spec.c):
                raise InputError(f"adversarial_pow2 needs 2^{spec.c} | n")
            if spec.kind == "threshold_circuit":
                return random_power_circuit(spec.n, spec.c, spec.seed,
                                            weight_bound=1)
            plan = [1 << j for j in range(1, spec.c + 1)
                    for _ in range(spec.n >> j)]
            return random_symmetric_circuit(spec.n, wires, spec.seed,
                                            weight_bound=1, plan=plan)
        if spec.kind == "threshold_circuit":
            if spec.distribution == "fixed_fanin":
                return random_fixed_fanin_circuit(spec.n, wires, spec.fan_in,
                                                  spec.seed,
                                                  weight_bound=spec.weight_bound)
            return random_mixed_circuit(spec.n, wires, spec.seed,
                                        weight_bound=spec.weight_bound)
        return random_symmetric_circuit(spec.n, wires, spec.seed,
                                        weight_bound=spec.weight_bound,
                                        fan_in=spec.fan_in
                                        if spec.distribution == "fixed_fanin"
                                        else None)
    if spec.rows is None or spec.rows < 1:
        raise InputError(f"{spec.kind} generation needs a positive row count")
    if spec.kind == "ilp":
        return random_ilp(spec.n, spec.rows, spec.arity, spec.seed,
                          weight_bound=spec.weight_bound)
    if spec.kind == "eq_system":
        return random_eq_system(spec.n, spec.rows, spec.seed,
                                weight_bound=spec.weight_bound)
    return random_domination(spec.n, spec.n, spec.rows, spec.seed,
                             coord_bound=8 * spec.weight_bound)
