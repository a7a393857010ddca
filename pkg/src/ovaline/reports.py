from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

METHODS = (
    "geometric",
    "even_solution",
    "power_sum_D",
    "bracket_power_sum",
    "coefficient",
    "coefficient_rho",
    "gram",
    "vandermonde",
)


@dataclass
class CriterionReport:
    """Verdict of one verifier; a negative verdict always carries a witness."""

    verdict: bool
    method: str
    witness: dict[str, Any] | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not self.verdict and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def __bool__(self):
        return self.verdict

    def to_dict(self) -> dict:
        return {"method": self.method, "verdict": self.verdict, "witness": self.witness}


@dataclass
class ConsensusReport:
    reports: dict[str, CriterionReport]
    normalization: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def unanimous(self) -> bool:
        return len({r.verdict for r in self.reports.values()}) == 1

    @property
    def verdict(self) -> bool | None:
        """Common verdict, or None when the verifiers disagree."""
        if not self.unanimous:
            return None
        return next(iter(self.reports.values())).verdict

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "unanimous": self.unanimous,
            "normalization": self.normalization,
            "notes": self.notes,
            "reports": {name: r.to_dict() for name, r in self.reports.items()},
        }
