"""Result records shared by the verifiers, censuses and the experiment runner."""

from __future__ import annotations

import dataclasses
from typing import Any


@dataclasses.dataclass
class CensusReport:
    parameters: dict[str, Any]
    count: int
    reference_value: float | None = None
    runtime_ms: int = 0
    details: dict[str, Any] = dataclasses.field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValueError("count must be nonnegative")

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        # runtime is left out by default so that output is reproducible
        out = {"parameters": dict(self.parameters), "count": self.count,
               "reference_value": self.reference_value}
        if timing:
            out["runtime_ms"] = self.runtime_ms
        out.update(self.details)
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CensusReport:
        data = dict(data)
        known = {"parameters", "count", "reference_value", "runtime_ms"}
        details = {k: v for k, v in data.items() if k not in known}
        return cls(data["parameters"], data["count"], data.get("reference_value"),
                   data.get("runtime_ms", 0), details)


@dataclasses.dataclass(frozen=True)
class ExperimentRow:
    n: int
    k: int
    measured: int
    reference: float
    extra: dict[str, Any] = dataclasses.field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.reference > 0:
            raise ValueError("reference must be positive")

    @property
    def ratio(self) -> float:
        return self.measured / self.reference

    def as_record(self) -> dict[str, Any]:
        return {"n": self.n, "k": self.k, **self.extra, "measured": self.measured,
                "reference": self.reference, "ratio": self.ratio}
