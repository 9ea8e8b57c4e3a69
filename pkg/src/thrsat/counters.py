"""Operation counters used to report how much work a solver actually did."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass
class WorkCounters:
    """Tallies of the basic operations performed by a solver run.

    assignments: full or partial variable assignments enumerated
    vectors:     vectors materialized for list-splitting searches
    comparisons: coordinate comparisons inside pair searches and scans
    guesses:     gate-subset or gate-value guesses tried
    eq_solves:   linear-system solver invocations
    """

    assignments: int = 0
    vectors: int = 0
    comparisons: int = 0
    guesses: int = 0
    eq_solves: int = 0

    def total(self) -> int:
        return (self.assignments + self.vectors + self.comparisons
                + self.guesses + self.eq_solves)

    def merge(self, other: "WorkCounters") -> None:
        self.assignments += other.assignments
        self.vectors += other.vectors
        self.comparisons += other.comparisons
        self.guesses += other.guesses
        self.eq_solves += other.eq_solves
