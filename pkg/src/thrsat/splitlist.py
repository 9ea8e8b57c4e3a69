"""Feasibility of sparse integer-linear constraint systems over small domains.

The variables are split into two halves.  All assignments to each half are
listed; the first half is mapped to its vector of row contributions, the
second to the vector of row slacks.  The system is feasible exactly when some
contribution vector dominates some slack vector, which the vecdom search
decides without comparing all pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

from .counters import WorkCounters
from .errors import InputError, ResourceGuardError
from .model import Assignment
from .vecdom import DominationInstance, TaggedVector, find_dominating_pair

MAX_ROWS = 62
MAX_HALF_VARS = 28


class Rel(str, Enum):
    GE = "ge"
    GT = "gt"
    LE = "le"
    LT = "lt"
    EQ = "eq"


@dataclass(frozen=True)
class Row:
    coeffs: tuple[tuple[int, int], ...]
    rel: Rel
    rhs: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           tuple((int(i), int(w)) for i, w in self.coeffs))
        object.__setattr__(self, "rel", Rel(self.rel))
        object.__setattr__(self, "rhs", int(self.rhs))
        seen = set()
        for idx, w in self.coeffs:
            if w == 0:
                raise InputError("row coefficients must be nonzero")
            if idx < 0:
                raise InputError("negative variable index in row")
            if idx in seen:
                raise InputError(f"duplicate variable x{idx} in row")
            seen.add(idx)


@dataclass(frozen=True)
class IneqSystem:
    n_vars: int
    rows: tuple[Row, ...]
    arity: int = 2

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.arity < 2:
            raise InputError("arity must be at least 2")
        if self.n_vars < 0:
            raise InputError("n_vars must be nonnegative")
        for row in self.rows:
            for idx, _ in row.coeffs:
                if idx >= self.n_vars:
                    raise InputError(f"row reads x{idx} but system has {self.n_vars} variables")


@dataclass(frozen=True)
class HalfList:
    """All assignments to one half of the variables, as tagged row-value vectors."""

    var_indices: tuple[int, ...]
    arity: int
    vectors: tuple[TaggedVector, ...]

    def __post_init__(self):
        if len(self.vectors) != self.arity ** len(self.var_indices):
            raise InputError("half list must contain one vector per half assignment")


def _negated(coeffs: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
    return tuple((i, -w) for i, w in coeffs)


def normalize_rows(sys: IneqSystem, keep_strict: bool = False
                   ) -> list[tuple[tuple[tuple[int, int], ...], int, bool]]:
    """Rewrite every row as 'sum >= rhs' (or 'sum > rhs' when keep_strict).

    Equality rows expand into a pair of opposite inequalities.  With integer
    data a strict row is equivalent to a non-strict row with rhs + 1; that
    rewrite is the default, keep_strict preserves strictness for the native
    search path instead.
    """
    out: list[tuple[tuple[tuple[int, int], ...], int, bool]] = []
    for row in sys.rows:
        if row.rel is Rel.GE:
            out.append((row.coeffs, row.rhs, False))
        elif row.rel is Rel.GT:
            if keep_strict:
                out.append((row.coeffs, row.rhs, True))
            else:
                out.append((row.coeffs, row.rhs + 1, False))
        elif row.rel is Rel.LE:
            out.append((_negated(row.coeffs), -row.rhs, False))
        elif row.rel is Rel.LT:
            if keep_strict:
                out.append((_negated(row.coeffs), -row.rhs, True))
            else:
                out.append((_negated(row.coeffs), -row.rhs + 1, False))
        else:  # EQ
            out.append((row.coeffs, row.rhs, False))
            out.append((_negated(row.coeffs), -row.rhs, False))
    return out


def verify(sys: IneqSystem, assignment: Union[Assignment, Sequence[int]]) -> bool:
    """Check an assignment row by row against the original relations."""
    values = assignment.values if isinstance(assignment, Assignment) else tuple(assignment)
    if len(values) != sys.n_vars:
        raise InputError("assignment length does not match the system")
    for v in values:
        if not 0 <= v < sys.arity:
            raise InputError("assignment value out of the variable domain")
    for row in sys.rows:
        s = sum(w * values[i] for i, w in row.coeffs)
        if row.rel is Rel.GE:
            ok = s >= row.rhs
        elif row.rel is Rel.GT:
            ok = s > row.rhs
        elif row.rel is Rel.LE:
            ok = s <= row.rhs
        elif row.rel is Rel.LT:
            ok = s < row.rhs
        else:
            ok = s == row.rhs
        if not ok:
            return False
    return True


def _decode(tag: int, var_indices: tuple[int, ...], arity: int, out: list[int]) -> None:
    t = tag
    for idx in var_indices:
        out[idx] = t % arity
        t //= arity


def half_lists(sys: IneqSystem, keep_strict: bool = False
               ) -> tuple[HalfList, HalfList, tuple[bool, ...]]:
    """Materialize both half-assignment lists for the system.

    The first half maps an assignment to its row contributions; the second to
    the row slacks (rhs minus contribution), so that feasibility becomes a
    dominating-pair question between the two lists.
    """
    rows = normalize_rows(sys, keep_strict=keep_strict)
    n, arity = sys.n_vars, sys.arity
    first = tuple(range((n + 1) // 2))
    second = tuple(range((n + 1) // 2, n))
    strict = tuple(s for _, _, s in rows)

    def weights_for(vars_: tuple[int, ...]) -> list[list[int]]:
        per_var = []
        for v in vars_:
            per_var.append([dict(coeffs).get(v, 0) for coeffs, _, _ in rows])
        return per_var

    def build(vars_: tuple[int, ...], slack_side: bool) -> HalfList:
        per_var = weights_for(vars_)
        d = len(rows)
        vectors = []
        for tag in range(arity ** len(vars_)):
            t = tag
            acc = [0] * d
            for pos in range(len(vars_)):
                digit = t % arity
                t //= arity
                if digit:
                    wrow = per_var[pos]
                    for j in range(d):
                        acc[j] += digit * wrow[j]
            if slack_side:
                coords = tuple(rows[j][1] - acc[j] for j in range(d))
            else:
                coords = tuple(acc)
            vectors.append(TaggedVector(coords, tag))
        return HalfList(vars_, arity, tuple(vectors))

    return build(first, False), build(second, True), strict


def solve_ilp(sys: IneqSystem, *, native_strict: bool = False,
              max_half_vars: int = MAX_HALF_VARS,
              counters: Optional[WorkCounters] = None
              ) -> tuple[Optional[Assignment], WorkCounters]:
    """Find a feasible assignment by splitting and listing, or report None.

    With native_strict, strict rows are handed to the pair search as strict
    coordinates instead of being rewritten to rhs + 1; the two routes must
    agree on integer instances.
    """
    cnt = counters if counters is not None else WorkCounters()
    n = sys.n_vars
    n_rows = len(normalize_rows(sys))
    if n_rows > MAX_ROWS:
        raise ResourceGuardError(f"{n_rows} normalized rows exceeds the {MAX_ROWS}-row guard")
    half = (n + 1) // 2
    if half > max_half_vars:
        raise ResourceGuardError(
            f"half size {half} exceeds the {max_half_vars}-variable guard")

    a_half, b_half, strict = half_lists(sys, keep_strict=native_strict)
    cnt.vectors += len(a_half.vectors) + len(b_half.vectors)

    if n_rows == 0:
        pair = (a_half.vectors[0].tag, b_half.vectors[0].tag)
    else:
        inst = DominationInstance(a_half.vectors, b_half.vectors, strict)
        pair, vcnt = find_dominating_pair(inst)
        cnt.comparisons += vcnt.comparisons
        if pair is None:
            return None, cnt

    values = [0] * n
    _decode(pair[0], a_half.var_indices, sys.arity, values)
    _decode(pair[1], b_half.var_indices, sys.arity, values)
    found = Assignment(tuple(values), sys.arity)
    assert verify(sys, found), "split-and-list produced an infeasible witness"
    return found, cnt
