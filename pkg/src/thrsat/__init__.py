"""Exact satisfiability for sparse depth-two threshold and symmetric circuits.

The public surface re-exports the instance types, the solvers, and the
brute-force reference deciders; the submodules hold the finer-grained
machinery (restriction parameters, vector domination, text formats).
"""
from .counters import WorkCounters
from .errors import InputError, ParseError, ResourceGuardError
from .model import (Assignment, Restriction, ThresholdCircuit, ThresholdGate,
                    evaluate, simplify, wire_stats)
from .oracle import (GenSpec, brute_circuit_sat, brute_domination, brute_ilp,
                     generate)
from .sparse_sat import SolveOutcome, solve
from .splitlist import IneqSystem, Rel, Row, solve_ilp
from .symsat import (EqRow, EqSystem, Predicate, SymmetricCircuit,
                     SymmetricGate, evaluate_symmetric,
                     solve_boolean_linear_system, solve_symmetric)
from .vecdom import DominationInstance, TaggedVector, find_dominating_pair

__version__ = "0.1.0"

__all__ = [
    "Assignment", "DominationInstance", "EqRow", "EqSystem", "GenSpec",
    "IneqSystem", "InputError", "ParseError", "Predicate", "Rel",
    "ResourceGuardError", "Restriction", "Row", "SolveOutcome",
    "SymmetricCircuit", "SymmetricGate", "TaggedVector", "ThresholdCircuit",
    "ThresholdGate", "WorkCounters", "brute_circuit_sat", "brute_domination",
    "brute_ilp", "evaluate", "evaluate_symmetric", "find_dominating_pair",
    "generate", "simplify", "solve", "solve_boolean_linear_system",
    "solve_ilp", "solve_symmetric", "wire_stats", "__version__",
]
