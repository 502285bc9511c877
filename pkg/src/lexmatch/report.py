"""Solver output container shared by all algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import LeximinTuple, Matching, value_to_str


@dataclass
class SolverReport:
    algorithm: str
    matching: Matching
    leximin: LeximinTuple
    steps: int
    counters: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "steps": self.steps,
            "counters": dict(self.counters),
            "matching": {"assignment": list(self.matching.assignment)},
            "leximin": [value_to_str(v) for v in self.leximin.values],
        }
