"""Line-oriented text formats for circuits and constraint systems.

The formats are UTF-8, whitespace-tokenized, with `#` starting a comment that
runs to the end of the line.  All integers are decimal and must fit in a
signed 32-bit word.  Parsing and emitting are exact inverses on canonical
text, and emit always produces canonical text.

Threshold circuits::

    tc2 <n> <m>
    gate <t> <idx>:<w> ...      (m lines, gate j on the j-th)
    top <T> g<j>:<w> ... x<i>:<w> ...

Symmetric circuits use `sc2 <n> <m> <c>` where c is the declared wire-density
budget, gate lines `sgate <pred> <idx>:<w> ...`, and a `stop <pred> ...` top
line; `<pred>` is one of `ge <t>`, `eq <v>`, `mod <m> <r>`, `set <v1,v2,...>`.
Constraint systems use `ilp <n> <m> <arity>` and rows
`row <rel> <rhs> <idx>:<w> ...` with rel in ge/gt/le/lt/eq.
"""
from __future__ import annotations

from typing import Iterable, Sequence, Union

from .errors import ParseError
from .model import Assignment, ThresholdCircuit, ThresholdGate
from .splitlist import IneqSystem, Rel, Row
from .symsat import Predicate, PredKind, SymmetricCircuit, SymmetricGate

INT_BOUND = 1 << 31
MAX_WITNESS_ARITY = 10

_REL_NAMES = {Rel.GE: "ge", Rel.GT: "gt", Rel.LE: "le", Rel.LT: "lt",
              Rel.EQ: "eq"}
_REL_BY_NAME = {name: rel for rel, name in _REL_NAMES.items()}


class _Lines:
    """Comment-stripped token lines, consumed one at a time."""

    def __init__(self, text: Union[str, Iterable[str]]):
        raw = text.splitlines() if isinstance(text, str) else list(text)
        self.items: list[tuple[int, list[str]]] = []
        for lineno, line in enumerate(raw, start=1):
            body = line.split("#", 1)[0]
            tokens = body.split()
            if tokens:
                self.items.append((lineno, tokens))
        self.pos = 0
        self.last_line = len(raw)

    def take(self, what: str) -> tuple[int, list[str]]:
        if self.pos >= len(self.items):
            raise ParseError(self.last_line, f"expected {what}, got end of input")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def expect_end(self):
        if self.pos < len(self.items):
            lineno, tokens = self.items[self.pos]
            raise ParseError(lineno, f"unexpected extra line starting with {tokens[0]!r}")


def _int(token: str, lineno: int) -> int:
    try:
        value = int(token, 10)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {token!r}") from None
    if not -INT_BOUND <= value < INT_BOUND:
        raise ParseError(lineno, f"integer {value} outside the 32-bit range")
    return value


def _term(token: str, lineno: int, prefix: str = "") -> tuple[int, int]:
    """Parse `<idx>:<w>` (or `g<j>:<w>` / `x<i>:<w>` with a prefix letter)."""
    head, sep, tail = token.partition(":")
    if not sep:
        raise ParseError(lineno, f"expected <idx>:<w>, got {token!r}")
    if prefix:
        if not head.startswith(prefix):
            raise ParseError(lineno, f"expected a {prefix}-term, got {token!r}")
        head = head[len(prefix):]
    idx = _int(head, lineno)
    if idx < 0:
        raise ParseError(lineno, f"negative index in {token!r}")
    return idx, _int(tail, lineno)


def _build(lineno: int, factory, *args):
    try:
        return factory(*args)
    except ValueError as exc:
        raise ParseError(lineno, str(exc)) from None


def _header(lines: _Lines, tag: str, fields: int) -> tuple[int, list[int]]:
    lineno, tokens = lines.take(f"a `{tag}` header")
    if tokens[0] != tag:
        raise ParseError(lineno, f"expected `{tag}` header, got {tokens[0]!r}")
    if len(tokens) != 1 + fields:
        raise ParseError(lineno, f"`{tag}` header takes {fields} fields")
    return lineno, [_int(t, lineno) for t in tokens[1:]]


def _top_terms(tokens: list[str], lineno: int, m: int
               ) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    gate_w = {}
    direct = {}
    for token in tokens:
        if token.startswith("g"):
            j, w = _term(token, lineno, "g")
            if j >= m:
                raise ParseError(lineno, f"top references gate g{j} of {m}")
            if j in gate_w:
                raise ParseError(lineno, f"duplicate top weight for g{j}")
            gate_w[j] = w
        elif token.startswith("x"):
            i, w = _term(token, lineno, "x")
            if i in direct:
                raise ParseError(lineno, f"duplicate direct wire x{i}")
            direct[i] = w
        else:
            raise ParseError(lineno, f"expected g- or x-term, got {token!r}")
    weights = tuple(gate_w.get(j, 0) for j in range(m))
    return weights, tuple(sorted(direct.items()))


def parse_circuit(text: Union[str, Iterable[str]]) -> ThresholdCircuit:
    lines = _Lines(text)
    _, (n, m) = _header(lines, "tc2", 2)
    gates = []
    for _ in range(m):
        lineno, tokens = lines.take("a `gate` line")
        if tokens[0] != "gate" or len(tokens) < 3:
            raise ParseError(lineno, "expected `gate <t> <idx>:<w> ...`")
        threshold = _int(tokens[1], lineno)
        inputs = tuple(_term(t, lineno) for t in tokens[2:])
        gates.append(_build(lineno, ThresholdGate, inputs, threshold))
    lineno, tokens = lines.take("a `top` line")
    if tokens[0] != "top" or len(tokens) < 2:
        raise ParseError(lineno, "expected `top <T> g<j>:<w> ... x<i>:<w> ...`")
    top_threshold = _int(tokens[1], lineno)
    weights, direct = _top_terms(tokens[2:], lineno, m)
    lines.expect_end()
    return _build(lineno, ThresholdCircuit, n, tuple(gates), weights, direct,
                  top_threshold)


def _parse_pred(tokens: list[str], lineno: int) -> tuple[Predicate, list[str]]:
    if not tokens:
        raise ParseError(lineno, "missing predicate")
    kind, rest = tokens[0], tokens[1:]
    if kind in ("ge", "eq"):
        if not rest:
            raise ParseError(lineno, f"`{kind}` needs a value")
        value = _int(rest[0], lineno)
        pred = Predicate.ge(value) if kind == "ge" else Predicate.eq(value)
        return pred, rest[1:]
    if kind == "mod":
        if len(rest) < 2:
            raise ParseError(lineno, "`mod` needs a modulus and a residue")
        return _build(lineno, Predicate.mod, _int(rest[0], lineno),
                      _int(rest[1], lineno)), rest[2:]
    if kind == "set":
        if not rest:
            raise ParseError(lineno, "`set` needs a comma-separated value list")
        values = tuple(_int(v, lineno) for v in rest[0].split(","))
        return _build(lineno, Predicate.members, values), rest[1:]
    raise ParseError(lineno, f"unknown predicate kind {kind!r}")


def parse_symmetric(text: Union[str, Iterable[str]]) -> SymmetricCircuit:
    lines = _Lines(text)
    _, (n, m, c) = _header(lines, "sc2", 3)
    gates = []
    for _ in range(m):
        lineno, tokens = lines.take("an `sgate` line")
        if tokens[0] != "sgate":
            raise ParseError(lineno, "expected `sgate <pred> <idx>:<w> ...`")
        pred, rest = _parse_pred(tokens[1:], lineno)
        if not rest:
            raise ParseError(lineno, "gate has no inputs")
        inputs = tuple(_term(t, lineno) for t in rest)
        gates.append(_build(lineno, SymmetricGate, inputs, pred))
    lineno, tokens = lines.take("a `stop` line")
    if tokens[0] != "stop":
        raise ParseError(lineno, "expected `stop <pred> g<j>:<w> ... x<i>:<w> ...`")
    pred, rest = _parse_pred(tokens[1:], lineno)
    weights, direct = _top_terms(rest, lineno, m)
    lines.expect_end()
    return _build(lineno, SymmetricCircuit, n, tuple(gates), weights, direct,
                  pred, c)


def parse_ilp(text: Union[str, Iterable[str]]) -> IneqSystem:
    lines = _Lines(text)
    _, (n, m, arity) = _header(lines, "ilp", 3)
    rows = []
    for _ in range(m):
        lineno, tokens = lines.take("a `row` line")
        if tokens[0] != "row" or len(tokens) < 4:
            raise ParseError(lineno, "expected `row <rel> <rhs> <idx>:<w> ...`")
        rel = _REL_BY_NAME.get(tokens[1])
        if rel is None:
            raise ParseError(lineno, f"unknown relation {tokens[1]!r}")
        rhs = _int(tokens[2], lineno)
        coeffs = tuple(_term(t, lineno) for t in tokens[3:])
        rows.append(_build(lineno, Row, coeffs, rel, rhs))
    lines.expect_end()
    last = lines.items[-1][0] if lines.items else 1
    return _build(last, IneqSystem, n, tuple(rows), arity)


def _emit_terms(terms: Sequence[tuple[int, int]], prefix: str = "") -> str:
    return " ".join(f"{prefix}{i}:{w}" for i, w in terms)


def emit_circuit(circuit: ThresholdCircuit) -> str:
    out = [f"tc2 {circuit.n_vars} {len(circuit.bottom)}"]
    for gate in circuit.bottom:
        out.append(f"gate {gate.threshold} {_emit_terms(gate.inputs)}")
    top = [f"top {circuit.top_threshold}"]
    gate_terms = _emit_terms(tuple((j, w) for j, w in
                                   enumerate(circuit.top_gate_weights) if w), "g")
    if gate_terms:
        top.append(gate_terms)
    direct_terms = _emit_terms(circuit.direct_wires, "x")
    if direct_terms:
        top.append(direct_terms)
    out.append(" ".join(top))
    return "\n".join(out) + "\n"


def _emit_pred(pred: Predicate) -> str:
    if pred.kind in (PredKind.GE, PredKind.EQ):
        return f"{pred.kind.value} {pred.params[0]}"
    if pred.kind is PredKind.MOD:
        return f"mod {pred.params[0]} {pred.params[1]}"
    return "set " + ",".join(str(v) for v in pred.params)


def emit_symmetric(circuit: SymmetricCircuit) -> str:
    density = circuit.declared_density
    if density is None:
        density = -(-circuit.weighted_wires // max(circuit.n_vars, 1))
    out = [f"sc2 {circuit.n_vars} {len(circuit.bottom)} {density}"]
    for gate in circuit.bottom:
        out.append(f"sgate {_emit_pred(gate.pred)} {_emit_terms(gate.inputs)}")
    top = [f"stop {_emit_pred(circuit.top_pred)}"]
    gate_terms = _emit_terms(tuple((j, w) for j, w in
                                   enumerate(circuit.top_gate_weights) if w), "g")
    if gate_terms:
        top.append(gate_terms)
    direct_terms = _emit_terms(circuit.direct_wires, "x")
    if direct_terms:
        top.append(direct_terms)
    out.append(" ".join(top))
    return "\n".join(out) + "\n"


def emit_ilp(system: IneqSystem) -> str:
    out = [f"ilp {system.n_vars} {len(system.rows)} {system.arity}"]
    for row in system.rows:
        out.append(f"row {_REL_NAMES[row.rel]} {row.rhs} {_emit_terms(row.coeffs)}")
    return "\n".join(out) + "\n"


def emit_witness(assignment: Assignment) -> str:
    """Witness as one digit per variable, in variable order."""
    if assignment.arity > MAX_WITNESS_ARITY:
        raise ValueError(f"cannot print digits for arity {assignment.arity}")
    return "".join(str(v) for v in assignment.values)


def parse_witness(text: str, n_vars: int, arity: int = 2) -> Assignment:
    digits = text.strip()
    if arity > MAX_WITNESS_ARITY:
        raise ParseError(1, f"cannot read digits for arity {arity}")
    if len(digits) != n_vars:
        raise ParseError(1, f"expected {n_vars} digits, got {len(digits)}")
    try:
        values = tuple(int(ch) for ch in digits)
    except ValueError:
        raise ParseError(1, "witness must be a digit string") from None
    return _build(1, Assignment, values, arity)
