"""Satisfiability of depth-two circuits built from symmetric gates.

Gates apply an arbitrary predicate (threshold, equality, congruence, or
membership in a finite set) to an integer-weighted sum of their inputs, and
so does the top gate.  The solver runs the same restrict-and-branch pipeline
as the threshold solver, but with two differences: the free probability p is
chosen by maximizing an exact savings score over a geometric grid, and the
residual circuits are decided by guessing the exact value of every residual
gate's weighted sum, which turns each guess into a system of linear equations
solved by a meet-in-the-middle subset-sum search.
"""
from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from random import Random
from typing import Iterator, Optional, Sequence

import numpy as np

from .counters import WorkCounters
from .errors import InputError, ResourceGuardError
from .model import (ACCUMULATION_GUARD, Assignment, AssignmentLike,
                    Restriction, _boolean_values)
from .sparse_sat import (MAX_BRANCH_BITS, SolveOutcome, _vector_scan,
                         draw_restriction, instance_seed)
from .splitlist import MAX_HALF_VARS

MAX_VALUE_TUPLES = 1 << 16
EXACT_SUM_MAX_VARS = 16
DEFAULT_KAPPA = 64


class PredKind(str, Enum):
    GE = "ge"
    EQ = "eq"
    MOD = "mod"
    MEMBER = "set"


@dataclass(frozen=True)
class Predicate:
    """A predicate on an integer, applied to a gate's weighted input sum."""

    kind: PredKind
    params: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "kind", PredKind(self.kind))
        object.__setattr__(self, "params", tuple(int(v) for v in self.params))
        if self.kind in (PredKind.GE, PredKind.EQ):
            if len(self.params) != 1:
                raise InputError(f"{self.kind.value} takes exactly one parameter")
        elif self.kind is PredKind.MOD:
            if len(self.params) != 2:
                raise InputError("mod takes a modulus and a residue")
            m, r = self.params
            if m < 1:
                raise InputError("modulus must be positive")
            if not 0 <= r < m:
                raise InputError("residue must lie in 0..modulus-1")
        else:
            if not self.params:
                raise InputError("membership predicate needs at least one value")
            if len(set(self.params)) != len(self.params):
                raise InputError("duplicate value in membership predicate")
            object.__setattr__(self, "params", tuple(sorted(self.params)))

    @classmethod
    def ge(cls, t: int) -> "Predicate":
        return cls(PredKind.GE, (t,))

    @classmethod
    def eq(cls, v: int) -> "Predicate":
        return cls(PredKind.EQ, (v,))

    @classmethod
    def mod(cls, m: int, r: int) -> "Predicate":
        return cls(PredKind.MOD, (m, r))

    @classmethod
    def members(cls, values: Sequence[int]) -> "Predicate":
        return cls(PredKind.MEMBER, tuple(values))

    def holds(self, s: int) -> bool:
        if self.kind is PredKind.GE:
            return s >= self.params[0]
        if self.kind is PredKind.EQ:
            return s == self.params[0]
        if self.kind is PredKind.MOD:
            return s % self.params[0] == self.params[1]
        return s in self.params

    def holds_batch(self, sums: np.ndarray) -> np.ndarray:
        if self.kind is PredKind.GE:
            return sums >= self.params[0]
        if self.kind is PredKind.EQ:
            return sums == self.params[0]
        if self.kind is PredKind.MOD:
            return sums % self.params[0] == self.params[1]
        return np.isin(sums, np.asarray(self.params, dtype=np.int64))

    def shifted(self, base: int) -> "Predicate":
        """The predicate q with q(s) == holds(s + base), for folding constant
        contributions out of a gate's input sum."""
        if self.kind is PredKind.GE:
            return Predicate.ge(self.params[0] - base)
        if self.kind is PredKind.EQ:
            return Predicate.eq(self.params[0] - base)
        if self.kind is PredKind.MOD:
            m, r = self.params
            return Predicate.mod(m, (r - base) % m)
        return Predicate.members(tuple(v - base for v in self.params))


@dataclass(frozen=True)
class SymmetricGate:
    inputs: tuple[tuple[int, int], ...]
    pred: Predicate

    def __post_init__(self):
        object.__setattr__(self, "inputs",
                           tuple((int(i), int(w)) for i, w in self.inputs))
        seen = set()
        for idx, w in self.inputs:
            if w == 0:
                raise InputError("gate input weights must be nonzero")
            if idx < 0:
                raise InputError("negative variable index in gate")
            if idx in seen:
                raise InputError(f"duplicate variable x{idx} in gate")
            seen.add(idx)

    @property
    def fan_in(self) -> int:
        return len(self.inputs)

    @property
    def weighted_fan_in(self) -> int:
        return sum(abs(w) for _, w in self.inputs)


@dataclass(frozen=True)
class SymmetricCircuit:
    """Depth-two circuit of symmetric gates.

    declared_density, when set, is the wire budget c from the text format
    header; the weighted wire count must stay within c * n_vars.  It has no
    effect on semantics.
    """

    n_vars: int
    bottom: tuple[SymmetricGate, ...]
    top_gate_weights: tuple[int, ...]
    direct_wires: tuple[tuple[int, int], ...]
    top_pred: Predicate
    declared_density: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "bottom", tuple(self.bottom))
        object.__setattr__(self, "top_gate_weights",
                           tuple(int(w) for w in self.top_gate_weights))
        object.__setattr__(self, "direct_wires",
                           tuple((int(i), int(w)) for i, w in self.direct_wires))
        if self.n_vars < 0:
            raise InputError("n_vars must be nonnegative")
        if len(self.top_gate_weights) != len(self.bottom):
            raise InputError("need exactly one top weight per bottom gate")
        for gate in self.bottom:
            for idx, _ in gate.inputs:
                if idx >= self.n_vars:
                    raise InputError(f"gate reads x{idx} but circuit has {self.n_vars} variables")
        seen = set()
        for idx, w in self.direct_wires:
            if w == 0:
                raise InputError("direct wires must have nonzero weight")
            if not 0 <= idx < self.n_vars:
                raise InputError(f"direct wire on x{idx} out of range")
            if idx in seen:
                raise InputError(f"duplicate direct wire on x{idx}")
            seen.add(idx)
        if self.declared_density is not None \
                and self.weighted_wires > self.declared_density * self.n_vars:
            raise InputError("weighted wires exceed the declared density budget")

    @property
    def weighted_wires(self) -> int:
        return sum(g.weighted_fan_in for g in self.bottom)

    @property
    def wires(self) -> int:
        return sum(g.fan_in for g in self.bottom)


def evaluate_symmetric(circuit: SymmetricCircuit, assignment: AssignmentLike) -> bool:
    values = _boolean_values(circuit.n_vars, assignment)
    total = 0
    for gate, top_w in zip(circuit.bottom, circuit.top_gate_weights):
        s = 0
        for idx, w in gate.inputs:
            s += w * values[idx]
        if gate.pred.holds(s):
            total += top_w
    for idx, w in circuit.direct_wires:
        total += w * values[idx]
    return circuit.top_pred.holds(total)


def evaluate_symmetric_batch(circuit: SymmetricCircuit,
                             values: np.ndarray) -> np.ndarray:
    """Vectorized twin of evaluate_symmetric over a (rows, n_vars) array."""
    vals = np.asarray(values)
    if vals.ndim != 2 or vals.shape[1] != circuit.n_vars:
        raise InputError("values must be a (rows, n_vars) array")
    rows = vals.shape[0]
    worst_top = sum(abs(w) for w in circuit.top_gate_weights) \
        + sum(abs(w) for _, w in circuit.direct_wires)
    worst_gate = max((g.weighted_fan_in for g in circuit.bottom), default=0)
    if max(worst_top, worst_gate) >= ACCUMULATION_GUARD:
        raise InputError("circuit weights exceed the accumulation guard")
    acc = np.zeros(rows, dtype=np.int64)
    for gate, top_w in zip(circuit.bottom, circuit.top_gate_weights):
        gsum = np.zeros(rows, dtype=np.int64)
        for idx, w in gate.inputs:
            gsum += w * vals[:, idx].astype(np.int64)
        acc += np.where(gate.pred.holds_batch(gsum), np.int64(top_w), np.int64(0))
    for idx, w in circuit.direct_wires:
        acc += w * vals[:, idx].astype(np.int64)
    return circuit.top_pred.holds_batch(acc)


def simplify_symmetric(circuit: SymmetricCircuit,
                       restriction: Restriction) -> SymmetricCircuit:
    """Fold a restriction into the circuit, mirroring the threshold version.

    Constant contributions shift predicates instead of thresholds; gates left
    with one free input still collapse to a constant, the variable, or its
    negation, because a Boolean input only produces two sums.
    """
    if restriction.n_vars != circuit.n_vars:
        raise InputError("restriction size does not match the circuit")
    assigned = restriction.assigned
    order = restriction.free_order
    new_index = {v: j for j, v in enumerate(order)}

    kept_gates: list[SymmetricGate] = []
    kept_weights: list[int] = []
    direct_accum: dict[int, int] = {}
    top_constant = 0

    for gate, top_w in zip(circuit.bottom, circuit.top_gate_weights):
        base = 0
        free_inputs = []
        for idx, w in gate.inputs:
            if idx in assigned:
                base += w * assigned[idx]
            else:
                free_inputs.append((new_index[idx], w))
        if not free_inputs:
            if gate.pred.holds(base):
                top_constant += top_w
        elif len(free_inputs) == 1:
            nix, w = free_inputs[0]
            out0 = gate.pred.holds(base)
            out1 = gate.pred.holds(base + w)
            if out0 and out1:
                top_constant += top_w
            elif out1 and not out0:
                direct_accum[nix] = direct_accum.get(nix, 0) + top_w
            elif out0 and not out1:
                top_constant += top_w
                direct_accum[nix] = direct_accum.get(nix, 0) - top_w
        else:
            kept_gates.append(SymmetricGate(tuple(free_inputs),
                                            gate.pred.shifted(base)))
            kept_weights.append(top_w)

    for idx, w in circuit.direct_wires:
        if idx in assigned:
            top_constant += w * assigned[idx]
        else:
            nix = new_index[idx]
            direct_accum[nix] = direct_accum.get(nix, 0) + w

    direct = tuple((i, w) for i, w in sorted(direct_accum.items()) if w != 0)
    return SymmetricCircuit(
        n_vars=len(order),
        bottom=tuple(kept_gates),
        top_gate_weights=tuple(kept_weights),
        direct_wires=direct,
        top_pred=circuit.top_pred.shifted(top_constant),
    )


def candidate_values(coeffs: Sequence[tuple[int, int]],
                     exact_max_vars: int = EXACT_SUM_MAX_VARS) -> tuple[int, ...]:
    """Values the weighted sum over Boolean variables can take (a superset).

    With few variables the exact subset sums are enumerated; otherwise the
    integer interval between the most negative and the most positive
    achievable sum is returned.  Either way the count is at most
    min(2^l, 2W + 1) for l variables of weighted fan-in W.
    """
    lo = sum(min(w, 0) for _, w in coeffs)
    hi = sum(max(w, 0) for _, w in coeffs)
    l = len(coeffs)
    if l <= exact_max_vars and (1 << l) <= hi - lo + 1:
        sums = {0}
        for _, w in coeffs:
            sums |= {s + w for s in sums}
        return tuple(sorted(sums))
    return tuple(range(lo, hi + 1))


@dataclass(frozen=True)
class EqRow:
    coeffs: tuple[tuple[int, int], ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           tuple((int(i), int(w)) for i, w in self.coeffs))
        object.__setattr__(self, "target", int(self.target))


@dataclass(frozen=True)
class EqSystem:
    """A system of exact linear equations over Boolean variables."""

    n_vars: int
    rows: tuple[EqRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for row in self.rows:
            for idx, _ in row.coeffs:
                if not 0 <= idx < self.n_vars:
                    raise InputError(f"equation reads x{idx} but system has {self.n_vars} variables")


def _packed_digits(rows: tuple[EqRow, ...], var_set: frozenset[int],
                   var_positions: dict[int, int], base: int, tag: int) -> int:
    key = 0
    scale = 1
    for row in rows:
        s = 0
        for idx, w in row.coeffs:
            if idx in var_set and tag >> var_positions[idx] & 1:
                s += w
        key += scale * s
        scale *= base
    return key


def solve_boolean_linear_system(system: EqSystem, *,
                                counters: Optional[WorkCounters] = None,
                                max_half_vars: int = MAX_HALF_VARS
                                ) -> Optional[tuple[int, ...]]:
    """Solve the equation system by meeting in the middle.

    Variables are split in two halves; each half assignment is condensed into
    one integer by writing the per-row partial sums as digits in a base wide
    enough that distinct digit vectors never collide.  The first-half keys
    are sorted once, then each second-half key is binary-searched for the
    complement that makes every row hit its target.
    """
    cnt = counters if counters is not None else WorkCounters()
    cnt.eq_solves += 1
    n = system.n_vars
    half = (n + 1) // 2
    if half > max_half_vars:
        raise ResourceGuardError(
            f"half size {half} exceeds the {max_half_vars}-variable guard")
    first = tuple(range(half))
    second = tuple(range(half, n))
    wmax = max((abs(w) for row in system.rows for _, w in row.coeffs), default=0)
    rmax = max((abs(row.target) for row in system.rows), default=0)
    base = 2 * max(n * wmax, rmax, 1) + 1

    first_set = frozenset(first)
    second_set = frozenset(second)
    first_pos = {v: i for i, v in enumerate(first)}
    second_pos = {v: i for i, v in enumerate(second)}

    pairs = []
    for tag in range(1 << len(first)):
        cnt.vectors += 1
        pairs.append((_packed_digits(system.rows, first_set, first_pos, base, tag),
                      tag))
    pairs.sort()
    keys = [k for k, _ in pairs]

    target_key = 0
    scale = 1
    for row in system.rows:
        target_key += scale * row.target
        scale *= base

    for tag2 in range(1 << len(second)):
        cnt.vectors += 1
        need = target_key - _packed_digits(system.rows, second_set, second_pos,
                                           base, tag2)
        i = bisect_left(keys, need)
        if i < len(keys) and keys[i] == need:
            tag1 = pairs[i][1]
            values = [0] * n
            for pos, var in enumerate(first):
                values[var] = tag1 >> pos & 1
            for pos, var in enumerate(second):
                values[var] = tag2 >> pos & 1
            for row in system.rows:
                total = sum(w * values[i] for i, w in row.coeffs)
                assert total == row.target, "digit packing collided"
            return tuple(values)
    return None


def residual_value_systems(circuit: SymmetricCircuit,
                           counters: Optional[WorkCounters] = None
                           ) -> Iterator[tuple[tuple[int, ...], int, EqSystem]]:
    """Enumerate the residual circuit's satisfying value guesses.

    Yields one (gate values, direct-wire value, equation system) triple for
    every guess of the gates' input sums and the direct-wire sum that makes
    the top predicate hold.  An assignment satisfies the circuit exactly when
    it solves the system of one of the yielded triples, so their solution
    sets cover the satisfying assignments, partitioned by value profile.
    """
    cnt = counters if counters is not None else WorkCounters()
    gate_candidates = [candidate_values(g.inputs) for g in circuit.bottom]
    top_candidates = candidate_values(circuit.direct_wires)
    for tup in product(*gate_candidates):
        outputs = [g.pred.holds(v) for g, v in zip(circuit.bottom, tup)]
        gate_total = sum(w for w, out in zip(circuit.top_gate_weights, outputs) if out)
        for tau in top_candidates:
            cnt.guesses += 1
            if not circuit.top_pred.holds(gate_total + tau):
                continue
            rows = tuple(EqRow(g.inputs, v) for g, v in zip(circuit.bottom, tup)) \
                + (EqRow(circuit.direct_wires, tau),)
            yield tup, tau, EqSystem(circuit.n_vars, rows)


def value_tuple_count(circuit: SymmetricCircuit) -> int:
    """Number of value guesses residual_value_systems will enumerate."""
    count = len(candidate_values(circuit.direct_wires))
    for g in circuit.bottom:
        count *= len(candidate_values(g.inputs))
    return count


def sat_by_value_guessing(circuit: SymmetricCircuit, *,
                          counters: Optional[WorkCounters] = None
                          ) -> Optional[Assignment]:
    """Decide a residual symmetric circuit by guessing value profiles."""
    cnt = counters if counters is not None else WorkCounters()
    for _, _, system in residual_value_systems(circuit, cnt):
        values = solve_boolean_linear_system(system, counters=cnt)
        if values is not None:
            found = Assignment(values)
            assert evaluate_symmetric(circuit, found), \
                "value guessing produced a bad witness"
            return found
    return None


# --- free-probability analysis ---------------------------------------------
#
# The exponent saved by the restriction pipeline depends on the free
# probability p and on how the weighted wires spread over gate fan-in
# classes.  Candidate values of p live on a geometric grid and are scored in
# exact Fraction arithmetic, so calibration results are reproducible bit for
# bit.


def _log2_fraction(q: Fraction) -> Fraction:
    """log2 of a positive rational: exact on powers of two, float64-backed
    (then frozen into a Fraction) elsewhere."""
    q = Fraction(q)
    if q <= 0:
        raise InputError("log2 needs a positive argument")
    e = 0
    while q >= 2:
        q /= 2
        e += 1
    while q < 1:
        q *= 2
        e -= 1
    if q == 1:
        return Fraction(e)
    return e + Fraction(math.log2(float(q)))


def savings(p: Fraction, f: int, c: Fraction) -> Fraction:
    """Exponent savings of free probability p against weighted-fan-in-f gates
    at total wire density c; may be negative.

    Below the p*f < 1/(4c) knee a free variable rarely meets a second free
    one inside a gate and the savings grow linearly; past the knee the
    exceptional gates eat into the gain logarithmically.
    """
    p, c = Fraction(p), Fraction(c)
    if not 0 < p <= 1:
        raise InputError("p must lie in (0, 1]")
    if f < 1 or c <= 0:
        raise InputError("need a positive fan-in and wire density")
    if p * f < Fraction(1, 4) / c:
        return p / 4
    return p / 2 - Fraction(c, f) * _log2_fraction(8 * c * p * f)


def expected_savings(p: Fraction, densities: dict[int, Fraction],
                     c: Fraction) -> Fraction:
    """Density-weighted savings over a wire distribution.

    densities maps a weighted fan-in f to the wire density c_f its gates
    contribute; the densities may sum to less than the total c.
    """
    c = Fraction(c)
    if c <= 0:
        raise InputError("total wire density must be positive")
    return sum(Fraction(cf) / c * savings(p, f, c)
               for f, cf in densities.items())


def grid_size(c: Fraction, kappa: int = DEFAULT_KAPPA) -> int:
    """Number of grid points scanned for a circuit of wire density c."""
    c = Fraction(c)
    if c <= 0:
        return 0
    return math.ceil(kappa * c * c * _log2_fraction(max(c, Fraction(2))))


def p_grid(c: Fraction, kappa: int = DEFAULT_KAPPA) -> tuple[Fraction, ...]:
    """The candidate free probabilities 2^-1, ..., 2^-I, largest first."""
    return tuple(Fraction(1, 1 << i) for i in range(1, grid_size(c, kappa) + 1))


def choose_p(densities: dict[int, Fraction], c: Fraction,
             kappa: int = DEFAULT_KAPPA) -> Fraction:
    """Grid point with the best expected savings; ties go to the larger p.

    An empty distribution means no wires, where every variable may stay free.
    """
    if not densities:
        return Fraction(1)
    best_p, best_score = None, None
    for cand in p_grid(c, kappa):
        score = expected_savings(cand, densities, c)
        if best_score is None or score > best_score:
            best_p, best_score = cand, score
    if best_p is None:
        return Fraction(1)
    return best_p


@dataclass(frozen=True)
class PDistribution:
    """A distribution over the p grid that loads most mass on the small end.

    The mass at the i-th grid point (p = 2^-i) is proportional to 2^i, scaled
    by a normalizer in (1, 2] so the masses sum to one exactly.
    """

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(
            (Fraction(p), Fraction(m)) for p, m in self.points))
        if self.points and sum(m for _, m in self.points) != 1:
            raise InputError("masses must sum to one")

    @property
    def size(self) -> int:
        return len(self.points)

    @classmethod
    def for_density(cls, c: Fraction, kappa: int = DEFAULT_KAPPA) -> "PDistribution":
        size = grid_size(c, kappa)
        if size == 0:
            return cls(((Fraction(1), Fraction(1)),))
        scale = Fraction(1 << size, (1 << size) - 1)
        return cls(tuple((Fraction(1, 1 << i),
                          scale * Fraction(1, 1 << (size - i + 1)))
                         for i in range(1, size + 1)))

    def mean_savings(self, densities: dict[int, Fraction],
                     c: Fraction) -> Fraction:
        return sum(m * expected_savings(p, densities, c)
                   for p, m in self.points)


def adversarial_densities(c: int) -> dict[int, Fraction]:
    """The wire distribution that stresses the grid hardest: one density unit
    at every power-of-two weighted fan-in up to 2^c."""
    if c < 1:
        raise InputError("need a positive density")
    return {1 << j: Fraction(1) for j in range(1, c + 1)}


def wire_distribution(circuit: SymmetricCircuit) -> dict[int, Fraction]:
    """Wire density per weighted-fan-in class: class f holds f wires for each
    of its gates, divided by the variable count."""
    if circuit.n_vars < 1:
        raise InputError("circuit must have at least one variable")
    out: dict[int, Fraction] = {}
    for g in circuit.bottom:
        f = g.weighted_fan_in
        out[f] = out.get(f, Fraction(0)) + Fraction(f, circuit.n_vars)
    return out


def solve_symmetric(circuit: SymmetricCircuit, *, seed: Optional[int] = None,
                    p: Optional[Fraction] = None,
                    kappa: int = DEFAULT_KAPPA,
                    force_restriction: bool = False,
                    fast_path_max_n: int = 20,
                    tuple_budget: int = MAX_VALUE_TUPLES,
                    max_branch_bits: int = MAX_BRANCH_BITS,
                    counters: Optional[WorkCounters] = None) -> SolveOutcome:
    """Decide satisfiability of a symmetric depth-two circuit, exactly.

    Small circuits are scanned outright.  Otherwise the free probability is
    the grid argmax of the expected savings for this circuit's wire
    distribution (overridable via p); if even the best grid point scores
    nonpositive savings the solver scans exhaustively instead, unless
    force_restriction insists on the restriction path.  Per branch, residual
    circuits are decided by value guessing while the guess count stays within
    tuple_budget, and by scanning the free variables otherwise.
    """
    cnt = counters if counters is not None else WorkCounters()
    n = circuit.n_vars
    if n < 1:
        raise InputError("circuit must have at least one variable")

    def scan_outcome(restriction, params_):
        if n > max_branch_bits:
            raise ResourceGuardError(
                f"scanning 2^{n} assignments exceeds the 2^{max_branch_bits} guard")
        full = _vector_scan(circuit, {}, tuple(range(n)), cnt,
                            batch_eval=evaluate_symmetric_batch)
        witness = Assignment(full) if full is not None else None
        if witness is not None:
            assert evaluate_symmetric(circuit, witness)
        return SolveOutcome(witness is not None, witness, 1 << n, 0,
                            restriction, params_, cnt)

    if n <= fast_path_max_n and not force_restriction:
        return scan_outcome(None, None)

    rng = Random(seed if seed is not None else instance_seed(circuit))
    densities = wire_distribution(circuit)
    c = sum(densities.values(), Fraction(0))
    if p is not None:
        chosen = Fraction(p)
    elif not densities:
        chosen = Fraction(1)
    else:
        chosen = choose_p(densities, c, kappa)
        if not force_restriction \
                and expected_savings(chosen, densities, c) <= 0:
            return scan_outcome(None, None)

    restriction = draw_restriction(circuit, chosen, rng)
    free = restriction.free
    free_order = restriction.free_order
    assigned_vars = tuple(sorted(set(range(n)) - free))
    bits = len(assigned_vars)
    if bits > max_branch_bits:
        raise ResourceGuardError(
            f"2^{bits} branches exceeds the 2^{max_branch_bits} branch guard")
    total = 1 << bits
    if not free:
        return scan_outcome(restriction, None)

    witness_values: Optional[tuple[int, ...]] = None
    fallback_branches = 0
    for b in range(total):
        cnt.assignments += 1
        assigned = {var: (b >> (bits - 1 - pos)) & 1
                    for pos, var in enumerate(assigned_vars)}
        branch = Restriction(assigned=assigned, free=free)
        residual = simplify_symmetric(circuit, branch)
        if value_tuple_count(residual) <= tuple_budget:
            found = sat_by_value_guessing(residual, counters=cnt)
            if found is not None:
                witness_values = branch.combine(found.values)
                break
        else:
            fallback_branches += 1
            full = _vector_scan(circuit, assigned, free_order, cnt,
                                batch_eval=evaluate_symmetric_batch)
            if full is not None:
                witness_values = full
                break

    witness = Assignment(witness_values) if witness_values is not None else None
    if witness is not None:
        assert evaluate_symmetric(circuit, witness), "solver produced a bad witness"
    return SolveOutcome(witness is not None, witness, total, fallback_branches,
                        restriction, None, cnt)
